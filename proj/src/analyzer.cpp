#include "findel/analyzer.hpp"

#include <algorithm>
#include <set>

namespace findel {

const char* to_string(Role r) {
    return r == Role::IssuerSide ? "issuer-side" : "joiner-side";
}

namespace {

Role issuer_at(bool swapped) { return swapped ? Role::JoinerSide : Role::IssuerSide; }
Role owner_at(bool swapped) { return swapped ? Role::IssuerSide : Role::JoinerSide; }

// Roles that receive money somewhere in the subtree; Give parity flips
// the receiving side.
void beneficiaries(const PrimPtr& p, bool swapped, std::set<Role>& out) {
    switch (p->tag) {
        case PrimTag::Zero:
            return;
        case PrimTag::One:
            out.insert(owner_at(swapped));
            return;
        case PrimTag::Give:
            beneficiaries(p->left, !swapped, out);
            return;
        case PrimTag::Scale:
        case PrimTag::ScaleObs:
        case PrimTag::Timebound:
            beneficiaries(p->left, swapped, out);
            return;
        case PrimTag::And:
        case PrimTag::Or:
        case PrimTag::If:
            beneficiaries(p->left, swapped, out);
            beneficiaries(p->right ? p->right : p->left, swapped, out);
            return;
    }
}

void collect_ownership(const PrimPtr& p, bool swapped, const NodePath& path,
                       std::vector<OwnershipEntry>& out) {
    if (p->tag == PrimTag::Or || p->tag == PrimTag::Timebound) {
        OwnershipEntry e;
        e.path = path;
        e.generated = p;
        e.issuer_role = issuer_at(swapped);
        e.proposed_owner_role = owner_at(swapped);
        std::set<Role> who;
        beneficiaries(p, swapped, who);
        // A Timebound open from time 0 never defers execution, so the
        // owner gets no discretion over it; only genuinely deferred nodes
        // can strand the other side's money.
        bool defers = p->tag == PrimTag::Or || p->t0 > 0;
        e.flagged = defers && std::any_of(who.begin(), who.end(), [&](Role r) {
                        return r != e.proposed_owner_role;
                    });
        out.push_back(std::move(e));
    }
    switch (p->tag) {
        case PrimTag::Zero:
        case PrimTag::One:
            return;
        case PrimTag::Give:
            collect_ownership(p->left, !swapped, path + "L", out);
            return;
        case PrimTag::Scale:
        case PrimTag::ScaleObs:
        case PrimTag::Timebound:
            collect_ownership(p->left, swapped, path + "L", out);
            return;
        case PrimTag::And:
        case PrimTag::Or:
        case PrimTag::If:
            collect_ownership(p->left, swapped, path + "L", out);
            collect_ownership(p->right, swapped, path + "R", out);
            return;
    }
}

}  // namespace

bool OwnershipReport::has_accidental_swap() const {
    return std::any_of(entries.begin(), entries.end(),
                       [](const OwnershipEntry& e) { return e.flagged; });
}

OwnershipReport ownership_report(const PrimPtr& p, Address issuer, Address joiner) {
    OwnershipReport r;
    r.issuer = issuer;
    r.joiner = joiner;
    collect_ownership(p, false, "", r.entries);
    return r;
}

namespace {

void collect_queries(const PrimPtr& p, const NodePath& path,
                     std::vector<std::pair<NodePath, Address>>& out) {
    switch (p->tag) {
        case PrimTag::Zero:
        case PrimTag::One:
            return;
        case PrimTag::ScaleObs:
            out.push_back({path, p->addr});
            collect_queries(p->left, path + "L", out);
            return;
        case PrimTag::If:
            out.push_back({path, p->addr});
            collect_queries(p->left, path + "L", out);
            collect_queries(p->right, path + "R", out);
            return;
        case PrimTag::Scale:
        case PrimTag::Give:
        case PrimTag::Timebound:
            collect_queries(p->left, path + "L", out);
            return;
        case PrimTag::And:
        case PrimTag::Or:
            collect_queries(p->left, path + "L", out);
            collect_queries(p->right, path + "R", out);
            return;
    }
}

struct CascadeStep {
    Id ctr_id = 0;
    Outcome outcome = Outcome::Rejected;
    std::vector<Transaction> transactions;
    bool atomic_failure = true;  // Deleted steps left ledger/balance untouched
};

// Issues and joins the contract, then keeps joining whatever it generates
// (first Or branch, Timebound just inside its window) until nothing is
// live. Deterministic given the gateway set.
std::vector<CascadeStep> run_cascade(const PrimPtr& p, const AnalyzerScenario& sc,
                                     std::vector<Gateway> gateways) {
    State s;
    s.descriptions.push_back({1, p, sc.scale, {}, 0, kInfTime});
    s.fresh_id = 2;
    s.time = sc.now;

    auto refresh = [&]() {
        for (Gateway& g : gateways) g.timestamp = s.time;
        s.gateways = gateways;
    };

    std::vector<CascadeStep> steps;
    refresh();
    s = std::get<State>(issue(s, 1, sc.issuer, sc.joiner));

    std::set<Id> attempted;
    for (;;) {
        const FinContract* target = nullptr;
        for (const FinContract& c : s.contracts)
            if (!attempted.count(c.ctr_id)) { target = &c; break; }
        if (!target) break;
        attempted.insert(target->ctr_id);

        // Move the clock just inside a postponed window when possible.
        if (target->prim->tag == PrimTag::Timebound && s.time <= target->prim->t0) {
            Time t0 = target->prim->t0;
            Time t1 = target->prim->t1;
            if (t0 >= t1) continue;  // degenerate window, abandon
            if (auto ticked = tick(s, t0 + 1 - s.time);
                std::holds_alternative<State>(ticked)) {
                s = std::get<State>(std::move(ticked));
            } else {
                continue;
            }
        }
        refresh();

        Address caller = target->proposed_owner != 0 ? target->proposed_owner : sc.joiner;
        Id ctr_id = target->ctr_id;
        std::size_t ledger_before = s.ledger.size();
        Balance balance_before = s.balance;

        auto res = target->prim->tag == PrimTag::Or
                       ? join_or(s, ctr_id, caller, Choice::First)
                       : join(s, ctr_id, caller);
        CascadeStep step;
        step.ctr_id = ctr_id;
        if (auto* jo = std::get_if<JoinOutcome>(&res)) {
            step.outcome = jo->executed ? Outcome::Executed : Outcome::Deleted;
            if (!jo->executed) {
                step.atomic_failure = jo->state.ledger.size() == ledger_before &&
                                      jo->state.balance == balance_before;
            }
            step.transactions.assign(jo->state.ledger.begin() + ledger_before,
                                     jo->state.ledger.end());
            s = std::move(jo->state);
        } else {
            step.outcome = Outcome::Rejected;
        }
        steps.push_back(std::move(step));
    }
    return steps;
}

}  // namespace

GatewayReport gateway_sensitivity(const PrimPtr& p, const AnalyzerScenario& scenario) {
    std::vector<std::pair<NodePath, Address>> queries;
    collect_queries(p, "", queries);

    auto baseline = run_cascade(p, scenario, scenario.gateways);

    GatewayReport report;
    for (const auto& [path, addr] : queries) {
        std::vector<Gateway> gtw;
        for (const Gateway& g : scenario.gateways)
            if (g.addr != addr) gtw.push_back(g);

        auto injected = run_cascade(p, scenario, std::move(gtw));

        GatewayEntry e;
        e.path = path;
        e.addr = addr;
        // First step whose outcome flipped to Deleted carries the
        // transactions the baseline would have performed there.
        for (std::size_t i = 0; i < injected.size(); ++i) {
            if (injected[i].outcome != Outcome::Deleted) continue;
            if (i < baseline.size() && baseline[i].outcome == Outcome::Deleted &&
                baseline[i].ctr_id == injected[i].ctr_id)
                continue;  // fails in the baseline too
            if (!injected[i].atomic_failure) e.full_deletion = false;
            for (std::size_t j = 0; j < baseline.size(); ++j) {
                if (baseline[j].ctr_id == injected[i].ctr_id) {
                    e.rolled_back = baseline[j].transactions;
                    break;
                }
            }
            break;
        }
        report.entries.push_back(std::move(e));
    }
    return report;
}

namespace {

void collect_windows(const PrimPtr& p, const NodePath& path, Time now,
                     std::vector<TimeWindowEntry>& out) {
    if (p->tag == PrimTag::Timebound)
        out.push_back({path, p->t0, p->t1, p->t1 < now});
    switch (p->tag) {
        case PrimTag::Zero:
        case PrimTag::One:
            return;
        case PrimTag::Scale:
        case PrimTag::ScaleObs:
        case PrimTag::Give:
        case PrimTag::Timebound:
            collect_windows(p->left, path + "L", now, out);
            return;
        case PrimTag::And:
        case PrimTag::Or:
        case PrimTag::If:
            collect_windows(p->left, path + "L", now, out);
            collect_windows(p->right, path + "R", now, out);
            return;
    }
}

}  // namespace

TimeWindowReport timewindow_report(const PrimPtr& p, Time now) {
    TimeWindowReport r;
    collect_windows(p, "", now, r.entries);
    return r;
}

}  // namespace findel

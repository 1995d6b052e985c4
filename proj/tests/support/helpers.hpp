#pragma once

// Test-only helpers: an engine-side driver that replays an oracle Env as
// a marketplace trace, and a control-flow walk used to associate
// generated contracts with their node paths. The walk mirrors execute's
// branching but none of its balance/ledger/role threading, which is what
// the differential tests are checking.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "findel/marketplace.hpp"
#include "findel/oracle.hpp"

namespace findel::test {

// Paths of the nodes that postpone (generate a contract) when `p` is
// executed at `now` against the gateway snapshot, in execution order.
// nullopt mirrors execution failure.
inline bool walk_postponed(const PrimPtr& p, const std::string& path, Time now,
                           const std::map<Address, std::uint64_t>& gfn,
                           std::vector<std::string>& out) {
    switch (p->tag) {
        case PrimTag::Zero:
        case PrimTag::One:
            return true;
        case PrimTag::Scale:
        case PrimTag::Give:
            return walk_postponed(p->left, path + "L", now, gfn, out);
        case PrimTag::ScaleObs:
            if (!gfn.count(p->addr)) return false;
            return walk_postponed(p->left, path + "L", now, gfn, out);
        case PrimTag::And:
            return walk_postponed(p->left, path + "L", now, gfn, out) &&
                   walk_postponed(p->right, path + "R", now, gfn, out);
        case PrimTag::If: {
            auto it = gfn.find(p->addr);
            if (it == gfn.end()) return false;
            return it->second == 0
                       ? walk_postponed(p->right, path + "R", now, gfn, out)
                       : walk_postponed(p->left, path + "L", now, gfn, out);
        }
        case PrimTag::Timebound:
            if (p->t1 < now) return false;
            if (p->t0 < now) return walk_postponed(p->left, path + "L", now, gfn, out);
            out.push_back(path);
            return true;
        case PrimTag::Or:
            out.push_back(path);
            return true;
    }
    return false;
}

struct DriveResult {
    bool deleted = false;   // some join ended in [Fail]
    bool rejected = false;  // should never happen for well-formed envs
    bool path_mismatch = false;  // control-flow walk disagreed with execute
    CashFlow flows;         // full ledger delta of the trace
    // (path, contract) for every contract the engine generated
    std::vector<std::pair<std::string, FinContract>> generated;
};

// Issues `p`, joins it as `owner`, then joins every generated contract at
// the time scheduled by env.join_policy (Or branches per env.or_policy).
// Contracts without a schedule are abandoned. Gateways follow
// env.gateway_fn with timestamps refreshed at every step.
inline DriveResult drive_env(const PrimPtr& p, std::uint64_t scale, Address issuer,
                             Address owner, const Env& env) {
    DriveResult result;

    State s;
    s.descriptions.push_back({1, p, scale, {}, 0, kInfTime});
    s.fresh_id = 2;
    s.time = env.now;

    auto refresh = [&]() {
        s.gateways.clear();
        for (const auto& [addr, value] : env.gateway_fn)
            s.gateways.push_back({addr, value, s.time});
    };

    s = std::get<State>(issue(s, 1, issuer, owner));

    struct Pending {
        Id ctr_id;
        std::string path;
        Time when;
        // False only for the initial root join: a root Timebound that
        // postpones there still gets its scheduled join later.
        bool scheduled = true;
    };
    std::deque<Pending> queue;

    // The root contract: an Or root is joined via join_or at its own
    // scheduled time, anything else via join right now.
    if (p->tag == PrimTag::Or) {
        auto at = env.join_policy.find("");
        if (at == env.join_policy.end()) return result;
        queue.push_back({2, "", at->second, true});
    } else {
        queue.push_back({2, "", env.now, false});
    }

    while (!queue.empty()) {
        auto next = std::min_element(queue.begin(), queue.end(),
                                     [](const Pending& a, const Pending& b) {
                                         return a.when < b.when;
                                     });
        Pending cur = *next;
        queue.erase(next);

        if (cur.when > s.time) s = std::get<State>(tick(s, cur.when - s.time));
        refresh();

        const FinContract* c = find_contract(s, cur.ctr_id);
        if (!c) { result.rejected = true; break; }
        Address caller = c->proposed_owner;
        std::string base = cur.path;
        PrimPtr body = c->prim;

        RuleResult<JoinOutcome> res = [&]() -> RuleResult<JoinOutcome> {
            if (c->prim->tag != PrimTag::Or) return join(s, cur.ctr_id, caller);
            auto choice = env.or_policy.find(cur.path);
            if (choice == env.or_policy.end()) return Rejection::UnknownContract;
            body = choice->second == Choice::First ? c->prim->left : c->prim->right;
            base = cur.path + (choice->second == Choice::First ? "L" : "R");
            return join_or(s, cur.ctr_id, caller, choice->second);
        }();

        if (c->prim->tag == PrimTag::Or && env.or_policy.find(cur.path) == env.or_policy.end())
            continue;  // no branch picked: abandoned, contract stays live

        if (auto* rej = std::get_if<Rejection>(&res)) {
            (void)rej;
            result.rejected = true;
            break;
        }
        auto& jo = std::get<JoinOutcome>(res);
        if (!jo.executed) {
            result.deleted = true;
            s = std::move(jo.state);
            continue;
        }

        // Pair the new contracts with their node paths via the
        // control-flow walk over what was actually executed.
        std::size_t live_before = s.contracts.size() - 1;  // joined one removed
        std::vector<std::string> paths;
        bool ok = walk_postponed(body, base, s.time, env.gateway_fn, paths);
        s = std::move(jo.state);
        std::size_t fresh_count = s.contracts.size() - live_before;
        if (!ok || paths.size() != fresh_count) {
            result.path_mismatch = true;
            break;
        }
        for (std::size_t i = 0; i < fresh_count; ++i) {
            const FinContract& g = s.contracts[s.contracts.size() - fresh_count + i];
            result.generated.push_back({paths[i], g});
            // A Timebound that postponed again at its scheduled time keeps
            // its own path; join each path only once.
            if (cur.scheduled && paths[i] == cur.path) continue;
            auto at = env.join_policy.find(paths[i]);
            if (at != env.join_policy.end())
                queue.push_back({g.ctr_id, paths[i], at->second});
        }
    }

    result.flows = ledger_flows(s.ledger);
    return result;
}

struct NodeInfo {
    std::string path;
    PrimTag tag;
    Address addr = 0;  // ScaleObs / If
    PrimPtr prim;
};

inline void collect_nodes(const PrimPtr& p, const std::string& path,
                          std::vector<NodeInfo>& out) {
    out.push_back({path, p->tag, p->addr, p});
    if (p->left) collect_nodes(p->left, path + "L", out);
    if (p->right) collect_nodes(p->right, path + "R", out);
}

// Scripted env for differential runs: one gateway snapshot, a join time
// per choice point that grows with path depth so nested contracts are
// always joined after their parents.
inline Env random_env(const PrimPtr& p, std::mt19937_64& rng) {
    auto pick = [&](std::uint64_t lo, std::uint64_t hi) {
        return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
    };
    Env env;
    env.now = pick(1, 20);
    std::vector<NodeInfo> nodes;
    collect_nodes(p, "", nodes);
    for (const NodeInfo& n : nodes) {
        if (n.tag == PrimTag::ScaleObs || n.tag == PrimTag::If) {
            if (pick(0, 99) < 85 && !env.gateway_fn.count(n.addr))
                env.gateway_fn[n.addr] = pick(0, 4);
        }
        if (n.tag == PrimTag::Or || n.tag == PrimTag::Timebound) {
            if (pick(0, 99) < 80)
                env.join_policy[n.path] =
                    env.now + 10 * (n.path.size() + 1) + pick(0, 5);
            if (n.tag == PrimTag::Or)
                env.or_policy[n.path] = pick(0, 1) ? Choice::First : Choice::Second;
        }
    }
    return env;
}

}  // namespace findel::test

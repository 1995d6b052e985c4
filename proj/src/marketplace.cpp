#include "findel/marketplace.hpp"

#include <algorithm>
#include <utility>

namespace findel {

const char* to_string(Rejection r) {
    switch (r) {
        case Rejection::UnknownDescription: return "UnknownDescription";
        case Rejection::UnknownContract: return "UnknownContract";
        case Rejection::NotAuthorized: return "NotAuthorized";
        case Rejection::MustUseJoinOr: return "MustUseJoinOr";
        case Rejection::NotAnOr: return "NotAnOr";
        case Rejection::OutsideValidity: return "OutsideValidity";
        case Rejection::ClockOverflow: return "ClockOverflow";
        case Rejection::ArithmeticOverflow: return "ArithmeticOverflow";
    }
    return "?";
}

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::Issued: return "issued";
        case Outcome::Executed: return "executed";
        case Outcome::Deleted: return "deleted";
        case Outcome::Ticked: return "ticked";
        case Outcome::Rejected: return "rejected";
    }
    return "?";
}

Action make_issue(Id dsc_id, Address issuer, Address proposed_owner) {
    Action a;
    a.kind = Action::Kind::Issue;
    a.dsc_id = dsc_id;
    a.issuer = issuer;
    a.proposed_owner = proposed_owner;
    return a;
}

Action make_join(Id ctr_id, Address caller) {
    Action a;
    a.kind = Action::Kind::Join;
    a.ctr_id = ctr_id;
    a.caller = caller;
    return a;
}

Action make_join_or(Id ctr_id, Address caller, Choice choice) {
    Action a;
    a.kind = Action::Kind::JoinOr;
    a.ctr_id = ctr_id;
    a.caller = caller;
    a.choice = choice;
    return a;
}

Action make_tick(std::uint64_t n) {
    Action a;
    a.kind = Action::Kind::Tick;
    a.ticks = n;
    return a;
}

const FinContract* find_contract(const State& s, Id ctr_id) {
    for (const FinContract& c : s.contracts)
        if (c.ctr_id == ctr_id) return &c;
    return nullptr;
}

const ContractDescription* find_description(const State& s, Id dsc_id) {
    for (const ContractDescription& d : s.descriptions)
        if (d.dsc_id == dsc_id) return &d;
    return nullptr;
}

RuleResult<State> issue(const State& s, Id dsc_id, Address issuer,
                        Address proposed_owner) {
    const ContractDescription* d = find_description(s, dsc_id);
    if (!d) return Rejection::UnknownDescription;

    State next = s;
    FinContract c;
    c.ctr_id = s.fresh_id;
    c.dsc_id = d->dsc_id;
    c.prim = d->prim;
    c.issuer = issuer;
    c.owner = issuer;
    c.proposed_owner = proposed_owner;
    c.scale = d->scale;
    next.contracts.insert(next.contracts.begin(), std::move(c));
    next.events.insert(next.events.begin(),
                       {EventKind::IssuedFor, s.fresh_id, proposed_owner});
    next.fresh_id = s.fresh_id + 1;
    return next;
}

namespace {

// Shared body of [Join], [Join OR], and [Fail]; `body` is the primitive
// actually executed (the root, or the chosen Or branch).
RuleResult<JoinOutcome> join_impl(const State& s, const FinContract& c, Address caller,
                                  const PrimPtr& body) {
    const ContractDescription* d = find_description(s, c.dsc_id);
    if (!d) return Rejection::UnknownDescription;
    if (s.time < d->valid_from || d->valid_until < s.time)
        return Rejection::OutsideValidity;

    std::optional<Result> res;
    try {
        res = execute(body, c.scale, c.issuer, caller, s.balance, s.time, s.gateways,
                      c.ctr_id, c.dsc_id, s.fresh_id, s.ledger, s.config);
    } catch (const OverflowError&) {
        return Rejection::ArithmeticOverflow;
    }

    State next = s;
    std::erase_if(next.contracts,
                  [&](const FinContract& x) { return x.ctr_id == c.ctr_id; });
    if (!res) {
        next.events.insert(next.events.begin(), {EventKind::Deleted, c.ctr_id, 0});
        return JoinOutcome{std::move(next), false};
    }
    next.contracts.insert(next.contracts.end(), res->contracts.begin(),
                          res->contracts.end());
    next.balance = std::move(res->balance);
    next.ledger = std::move(res->ledger);
    next.fresh_id = res->next;
    next.events.insert(next.events.begin(), {EventKind::Executed, c.ctr_id, 0});
    return JoinOutcome{std::move(next), true};
}

}  // namespace

RuleResult<JoinOutcome> join(const State& s, Id ctr_id, Address caller) {
    const FinContract* c = find_contract(s, ctr_id);
    if (!c) return Rejection::UnknownContract;
    if (c->proposed_owner != caller && c->proposed_owner != 0)
        return Rejection::NotAuthorized;
    if (c->prim->tag == PrimTag::Or) return Rejection::MustUseJoinOr;
    return join_impl(s, *c, caller, c->prim);
}

RuleResult<JoinOutcome> join_or(const State& s, Id ctr_id, Address caller,
                                Choice choice) {
    const FinContract* c = find_contract(s, ctr_id);
    if (!c) return Rejection::UnknownContract;
    if (c->proposed_owner != caller && c->proposed_owner != 0)
        return Rejection::NotAuthorized;
    if (c->prim->tag != PrimTag::Or) return Rejection::NotAnOr;
    return join_impl(s, *c, caller,
                     choice == Choice::First ? c->prim->left : c->prim->right);
}

RuleResult<State> tick(const State& s, std::uint64_t n) {
    if (n > kInfTime - 1 - s.time) return Rejection::ClockOverflow;
    State next = s;
    next.time = s.time + n;
    return next;
}

ApplyResult apply(const State& s, const Action& a) {
    auto from_state = [&](RuleResult<State> r, Outcome ok) -> ApplyResult {
        if (auto* rej = std::get_if<Rejection>(&r))
            return {s, Outcome::Rejected, *rej};
        return {std::move(std::get<State>(r)), ok, std::nullopt};
    };
    auto from_join = [&](RuleResult<JoinOutcome> r) -> ApplyResult {
        if (auto* rej = std::get_if<Rejection>(&r))
            return {s, Outcome::Rejected, *rej};
        auto& jo = std::get<JoinOutcome>(r);
        return {std::move(jo.state), jo.executed ? Outcome::Executed : Outcome::Deleted,
                std::nullopt};
    };
    switch (a.kind) {
        case Action::Kind::Issue:
            return from_state(issue(s, a.dsc_id, a.issuer, a.proposed_owner),
                              Outcome::Issued);
        case Action::Kind::Join:
            return from_join(join(s, a.ctr_id, a.caller));
        case Action::Kind::JoinOr:
            return from_join(join_or(s, a.ctr_id, a.caller, a.choice));
        case Action::Kind::Tick:
            return from_state(tick(s, a.ticks), Outcome::Ticked);
    }
    return {s, Outcome::Rejected, std::nullopt};
}

TraceResult run_trace(State s, std::span<const Action> actions) {
    TraceResult tr;
    tr.log.reserve(actions.size());
    for (const Action& a : actions) {
        ApplyResult r = apply(s, a);
        tr.log.push_back({a, r.outcome, r.rejection});
        s = std::move(r.state);
    }
    tr.state = std::move(s);
    return tr;
}

std::vector<Gateway> GatewayTimeline::materialize(Time now) const {
    std::vector<Gateway> out;
    for (const auto& [addr, samples] : entries) {
        const GatewaySample* latest = nullptr;
        for (const GatewaySample& g : samples)
            if (g.time <= now && (!latest || g.time >= latest->time)) latest = &g;
        if (latest) out.push_back({addr, latest->value, latest->time});
    }
    return out;
}

TraceResult run_trace(State s, std::span<const Action> actions,
                      const GatewayTimeline& timeline) {
    TraceResult tr;
    tr.log.reserve(actions.size());
    for (const Action& a : actions) {
        s.gateways = timeline.materialize(s.time);
        ApplyResult r = apply(s, a);
        tr.log.push_back({a, r.outcome, r.rejection});
        s = std::move(r.state);
    }
    s.gateways = timeline.materialize(s.time);
    tr.state = std::move(s);
    return tr;
}

}  // namespace findel

#include "findel/metaprops.hpp"

#include <algorithm>
#include <random>

namespace findel {

ConsistencyReport check_consistent(const State& s) {
    ConsistencyReport r;
    for (const FinContract& c : s.contracts) {
        if (c.ctr_id >= s.fresh_id) {
            r.fresh_dominates_contracts = false;
            r.violations.push_back({1, c.ctr_id});
        }
    }
    for (const Event& e : s.events) {
        if (e.kind == EventKind::IssuedFor) continue;
        if (e.ctr_id >= s.fresh_id) {
            r.fresh_dominates_events = false;
            r.violations.push_back({2, e.ctr_id});
        }
    }
    auto closed = [&](Id id, EventKind k) {
        return std::any_of(s.events.begin(), s.events.end(), [&](const Event& e) {
            return e.kind == k && e.ctr_id == id;
        });
    };
    for (const FinContract& c : s.contracts) {
        if (closed(c.ctr_id, EventKind::Executed) || closed(c.ctr_id, EventKind::Deleted)) {
            r.live_not_closed = false;
            r.violations.push_back({3, c.ctr_id});
        }
    }
    for (const Event& e : s.events) {
        if (e.kind == EventKind::Executed && closed(e.ctr_id, EventKind::Deleted)) {
            r.no_double_close = false;
            r.violations.push_back({4, e.ctr_id});
        }
    }
    return r;
}

bool check_preservation(const State& s, const Action& a) {
    return check_consistent(apply(s, a).state).pass();
}

bool check_ledger_monotone(const State& s, const State& s2) {
    if (s.ledger.size() > s2.ledger.size()) return false;
    for (const Transaction& t : s.ledger) {
        bool found = std::any_of(s2.ledger.begin(), s2.ledger.end(),
                                 [&](const Transaction& u) { return u == t; });
        if (!found) return false;
    }
    return true;
}

bool check_events_monotone(const State& s, const State& s2) {
    if (s.events.size() > s2.events.size()) return false;
    for (const Event& e : s.events) {
        bool found = std::any_of(s2.events.begin(), s2.events.end(),
                                 [&](const Event& u) { return u == e; });
        if (!found) return false;
    }
    return true;
}

bool check_trichotomy(const State& s, const State& s2, const FinContract& c) {
    bool live = find_contract(s2, c.ctr_id) != nullptr;
    bool executed = std::any_of(s2.events.begin(), s2.events.end(), [&](const Event& e) {
        return e.kind == EventKind::Executed && e.ctr_id == c.ctr_id;
    });
    bool deleted = std::any_of(s2.events.begin(), s2.events.end(), [&](const Event& e) {
        return e.kind == EventKind::Deleted && e.ctr_id == c.ctr_id;
    });
    return (live ? 1 : 0) + (executed ? 1 : 0) + (deleted ? 1 : 0) == 1;
}

TraceProfile default_profile() { return {}; }

TraceProfile gateway_heavy_profile() {
    TraceProfile p;
    p.name = "gateway-heavy";
    p.gateway_bias = 50;
    return p;
}

namespace {

using Rng = std::mt19937_64;

std::uint64_t pick(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

bool chance(Rng& rng, int percent) {
    return pick(rng, 0, 99) < static_cast<std::uint64_t>(percent);
}

Currency random_currency(Rng& rng) {
    static const Currency all[] = {Currency::USD, Currency::EUR, Currency::GBP,
                                   Currency::JPY, Currency::CNY, Currency::SGD,
                                   Currency::NONE};
    return all[pick(rng, 0, 6)];
}

Time random_bound(Rng& rng) {
    // INF bounds stay rare so traces keep exercising real windows.
    if (chance(rng, 10)) return kInfTime;
    return pick(rng, 0, 200);
}

PrimPtr gen_prim(Rng& rng, std::size_t depth, bool want_gateway) {
    if (depth == 0) return chance(rng, 50) ? zero() : one(random_currency(rng));
    int tag = static_cast<int>(pick(rng, 0, 8));
    if (want_gateway) {
        if (depth == 1 || chance(rng, 60)) {
            tag = chance(rng, 50) ? 3 : 7;
        } else if (tag < 2) {
            // Keep descending until a query is placed.
            tag = static_cast<int>(pick(rng, 2, 8));
        }
    }
    switch (tag) {
        case 0: return zero();
        case 1: return one(random_currency(rng));
        case 2: return scale(pick(rng, 0, 9), gen_prim(rng, depth - 1, want_gateway));
        case 3: return scale_obs(pick(rng, 1, 6), gen_prim(rng, depth - 1, false));
        case 4: return give(gen_prim(rng, depth - 1, want_gateway));
        case 5:
            return and_(gen_prim(rng, depth - 1, want_gateway),
                        gen_prim(rng, depth - 1, false));
        case 6:
            return or_(gen_prim(rng, depth - 1, want_gateway),
                       gen_prim(rng, depth - 1, false));
        case 7:
            return if_(pick(rng, 1, 6), gen_prim(rng, depth - 1, false),
                       gen_prim(rng, depth - 1, false));
        default: {
            Time a = random_bound(rng);
            Time b = random_bound(rng);
            return timebound(std::min(a, b), std::max(a, b),
                             gen_prim(rng, depth - 1, want_gateway));
        }
    }
}

}  // namespace

PrimPtr random_primitive(std::uint64_t seed, std::size_t max_depth, int gateway_bias) {
    Rng rng(seed);
    bool want_gateway = chance(rng, gateway_bias);
    std::size_t depth = pick(rng, 0, max_depth);
    if (want_gateway && depth == 0) depth = 1;
    return gen_prim(rng, depth, want_gateway);
}

RandomTrace random_trace(std::uint64_t seed, std::size_t length,
                         const TraceProfile& profile) {
    Rng rng(seed);
    RandomTrace out;

    for (std::size_t i = 0; i < profile.description_pool; ++i) {
        ContractDescription d;
        d.dsc_id = i + 1;
        d.prim = gen_prim(rng, pick(rng, 0, profile.max_depth),
                          chance(rng, profile.gateway_bias));
        d.scale = pick(rng, 0, 5);
        d.valid_from = 0;
        d.valid_until = chance(rng, 90) ? kInfTime : pick(rng, 10, 150);
        out.initial.descriptions.push_back(std::move(d));
    }
    out.initial.fresh_id = 1;

    // Gateway timelines with gaps: some addresses never report, some go
    // stale between samples.
    for (Address a = 1; a <= profile.address_pool + 1; ++a) {
        if (chance(rng, 25)) continue;  // permanently absent
        std::vector<GatewaySample> samples;
        Time t = 0;
        while (t < 250) {
            samples.push_back({t, pick(rng, 0, 4)});
            t += pick(rng, 5, 80);  // gaps > 30 make the data go stale
        }
        out.timeline.entries.push_back({a, std::move(samples)});
    }

    // Actions reference live ids tracked by replaying the trace, plus a
    // sprinkling of bogus ids and wrong callers to exercise rejections.
    State s = out.initial;
    for (std::size_t i = 0; i < length; ++i) {
        s.gateways = out.timeline.materialize(s.time);
        Action a;
        int kind = static_cast<int>(pick(rng, 0, 9));
        if (kind < 3) {
            Id dsc = chance(rng, 90) ? pick(rng, 1, profile.description_pool)
                                     : pick(rng, 100, 110);
            Address po = chance(rng, 30) ? 0 : pick(rng, 1, profile.address_pool);
            a = make_issue(dsc, pick(rng, 1, profile.address_pool), po);
        } else if (kind < 8 && !s.contracts.empty()) {
            const FinContract& c = s.contracts[pick(rng, 0, s.contracts.size() - 1)];
            Id target = chance(rng, 90) ? c.ctr_id : pick(rng, 500, 510);
            Address caller = chance(rng, 70) && c.proposed_owner != 0
                                 ? c.proposed_owner
                                 : pick(rng, 1, profile.address_pool);
            bool use_or = c.prim->tag == PrimTag::Or ? chance(rng, 90) : chance(rng, 10);
            a = use_or ? make_join_or(target, caller,
                                      chance(rng, 50) ? Choice::First : Choice::Second)
                       : make_join(target, caller);
        } else {
            a = make_tick(pick(rng, 0, 40));
        }
        out.actions.push_back(a);
        s = apply(s, a).state;
    }
    return out;
}

}  // namespace findel

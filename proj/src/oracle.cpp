#include "findel/oracle.hpp"

#include <algorithm>

namespace findel {

CashFlow normalize(CashFlow flows) {
    std::sort(flows.begin(), flows.end());
    return flows;
}

namespace {

std::optional<CashFlow> eval(const PrimPtr& p, std::uint64_t scale, Address issuer,
                             Address owner, const Env& env, Time now,
                             const NodePath& path) {
    switch (p->tag) {
        case PrimTag::Zero:
            return CashFlow{};

        case PrimTag::One:
            return CashFlow{{issuer, owner, scale, p->currency}};

        case PrimTag::Scale:
            return eval(p->left, checked_scale_mul(scale, p->factor), issuer, owner,
                        env, now, path + "L");

        case PrimTag::ScaleObs: {
            auto it = env.gateway_fn.find(p->addr);
            if (it == env.gateway_fn.end()) return std::nullopt;
            return eval(p->left, checked_scale_mul(scale, it->second), issuer, owner,
                        env, now, path + "L");
        }

        case PrimTag::Give:
            return eval(p->left, scale, owner, issuer, env, now, path + "L");

        case PrimTag::And: {
            auto f1 = eval(p->left, scale, issuer, owner, env, now, path + "L");
            if (!f1) return std::nullopt;
            auto f2 = eval(p->right, scale, issuer, owner, env, now, path + "R");
            if (!f2) return std::nullopt;
            f1->insert(f1->end(), f2->begin(), f2->end());
            return f1;
        }

        case PrimTag::If: {
            auto it = env.gateway_fn.find(p->addr);
            if (it == env.gateway_fn.end()) return std::nullopt;
            return it->second == 0 ? eval(p->right, scale, issuer, owner, env, now,
                                          path + "R")
                                   : eval(p->left, scale, issuer, owner, env, now,
                                          path + "L");
        }

        case PrimTag::Or: {
            auto join_at = env.join_policy.find(path);
            auto choice = env.or_policy.find(path);
            if (join_at == env.join_policy.end() || choice == env.or_policy.end())
                return CashFlow{};  // abandoned
            Time t = join_at->second;
            return choice->second == Choice::First
                       ? eval(p->left, scale, issuer, owner, env, t, path + "L")
                       : eval(p->right, scale, issuer, owner, env, t, path + "R");
        }

        case PrimTag::Timebound: {
            if (p->t1 < now) return std::nullopt;
            if (p->t0 < now)
                return eval(p->left, scale, issuer, owner, env, now, path + "L");
            // Postponed: re-evaluated once at the scheduled join time.
            auto join_at = env.join_policy.find(path);
            if (join_at == env.join_policy.end()) return CashFlow{};  // abandoned
            Time t = join_at->second;
            if (p->t1 < t) return std::nullopt;
            if (p->t0 < t)
                return eval(p->left, scale, issuer, owner, env, t, path + "L");
            return CashFlow{};  // postponed again, never rejoined
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<CashFlow> cashflows(const PrimPtr& p, std::uint64_t scale,
                                  Address issuer, Address owner, const Env& env) {
    auto flows = eval(p, scale, issuer, owner, env, env.now, "");
    if (!flows) return std::nullopt;
    return normalize(std::move(*flows));
}

CashFlow ledger_flows(const Ledger& ledger, std::size_t skip) {
    CashFlow flows;
    for (std::size_t i = skip; i < ledger.size(); ++i) {
        const Transaction& t = ledger[i];
        flows.push_back({t.from, t.to, t.amount, t.currency});
    }
    return normalize(std::move(flows));
}

}  // namespace findel

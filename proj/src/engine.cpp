#include "findel/engine.hpp"

#include <limits>
#include <utility>

namespace findel {

std::int64_t balance_of(const Balance& b, Address a, Currency c) {
    auto it = b.find({a, c});
    return it == b.end() ? 0 : it->second;
}

Balance update(Balance b, Address a, Currency c, std::int64_t amount) {
    b[{a, c}] = amount;
    return b;
}

std::optional<std::uint64_t> query(std::span<const Gateway> gateways, Address addr,
                                   Time now, const EngineConfig& cfg) {
    for (const Gateway& g : gateways) {
        if (g.addr != addr) continue;
        // Natural subtraction: a sample from the future counts as fresh.
        Time age = now > g.timestamp ? now - g.timestamp : 0;
        if (age > cfg.freshness_threshold) return std::nullopt;
        return g.value;
    }
    return std::nullopt;
}

std::uint64_t checked_scale_mul(std::uint64_t a, std::uint64_t b) {
    constexpr std::uint64_t kMax = std::numeric_limits<std::int64_t>::max();
    if (b != 0 && a > kMax / b) throw OverflowError();
    return a * b;
}

std::optional<Result> execute(const PrimPtr& p, std::uint64_t scale, Address issuer,
                              Address owner, Balance balance, Time now,
                              std::span<const Gateway> gateways, Id ctr_id, Id dsc_id,
                              Id fresh, Ledger ledger, const EngineConfig& cfg) {
    switch (p->tag) {
        case PrimTag::Zero:
            return Result{std::move(balance), {}, fresh, std::move(ledger)};

        case PrimTag::One: {
            Currency cur = p->currency;
            auto amount = static_cast<std::int64_t>(scale);
            std::int64_t issuer_bal = balance_of(balance, issuer, cur) - amount;
            balance = update(std::move(balance), issuer, cur, issuer_bal);
            std::int64_t owner_bal = balance_of(balance, owner, cur) + amount;
            balance = update(std::move(balance), owner, cur, owner_bal);
            ledger.push_back({fresh, ctr_id, issuer, owner, scale, cur, now});
            return Result{std::move(balance), {}, fresh + 1, std::move(ledger)};
        }

        case PrimTag::Scale:
            return execute(p->left, checked_scale_mul(scale, p->factor), issuer, owner,
                           std::move(balance), now, gateways, ctr_id, dsc_id, fresh,
                           std::move(ledger), cfg);

        case PrimTag::ScaleObs: {
            auto k = query(gateways, p->addr, now, cfg);
            if (!k) return std::nullopt;
            return execute(p->left, checked_scale_mul(scale, *k), issuer, owner,
                           std::move(balance), now, gateways, ctr_id, dsc_id, fresh,
                           std::move(ledger), cfg);
        }

        case PrimTag::Give:
            return execute(p->left, scale, owner, issuer, std::move(balance), now,
                           gateways, ctr_id, dsc_id, fresh, std::move(ledger), cfg);

        case PrimTag::And: {
            auto r1 = execute(p->left, scale, issuer, owner, std::move(balance), now,
                              gateways, ctr_id, dsc_id, fresh, std::move(ledger), cfg);
            if (!r1) return std::nullopt;
            auto r2 = execute(p->right, scale, issuer, owner, std::move(r1->balance), now,
                              gateways, ctr_id, dsc_id, r1->next, std::move(r1->ledger),
                              cfg);
            if (!r2) return std::nullopt;
            std::vector<FinContract> generated = std::move(r1->contracts);
            generated.insert(generated.end(), r2->contracts.begin(), r2->contracts.end());
            return Result{std::move(r2->balance), std::move(generated), r2->next,
                          std::move(r2->ledger)};
        }

        case PrimTag::If: {
            auto v = query(gateways, p->addr, now, cfg);
            if (!v) return std::nullopt;
            const PrimPtr& branch = *v == 0 ? p->right : p->left;
            return execute(branch, scale, issuer, owner, std::move(balance), now,
                           gateways, ctr_id, dsc_id, fresh, std::move(ledger), cfg);
        }

        case PrimTag::Timebound: {
            if (p->t1 < now) return std::nullopt;
            if (p->t0 < now) {
                return execute(p->left, scale, issuer, owner, std::move(balance), now,
                               gateways, ctr_id, dsc_id, fresh, std::move(ledger), cfg);
            }
            // Postponed: id fresh stays unused, the new contract takes fresh+1.
            FinContract c{fresh + 1, dsc_id, p, issuer, owner, owner, scale};
            return Result{std::move(balance), {std::move(c)}, fresh + 2,
                          std::move(ledger)};
        }

        case PrimTag::Or: {
            FinContract c{fresh + 1, dsc_id, p, issuer, owner, owner, scale};
            return Result{std::move(balance), {std::move(c)}, fresh + 2,
                          std::move(ledger)};
        }
    }
    return std::nullopt;
}

}  // namespace findel

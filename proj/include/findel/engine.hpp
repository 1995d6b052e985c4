#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "findel/ast.hpp"

namespace findel {

using Id = std::uint64_t;

// Signed token amounts per (address, currency); absent keys read as 0.
// Debt is allowed, no overdraft checks.
using Balance = std::map<std::pair<Address, Currency>, std::int64_t>;

std::int64_t balance_of(const Balance& b, Address a, Currency c);
Balance update(Balance b, Address a, Currency c, std::int64_t amount);

struct Gateway {
    Address addr = 0;  // must be nonzero
    std::uint64_t value = 0;
    Time timestamp = 0;
};

struct EngineConfig {
    Time freshness_threshold = 30;
};

// Looks up addr in the gateway list. Absent address or a sample older
// than the freshness threshold yields nullopt, which aborts execution
// at the querying node.
std::optional<std::uint64_t> query(std::span<const Gateway> gateways, Address addr,
                                   Time now, const EngineConfig& cfg = {});

struct Transaction {
    Id id = 0;
    Id ctr_id = 0;
    Address from = 0;
    Address to = 0;
    std::uint64_t amount = 0;
    Currency currency = Currency::NONE;
    Time timestamp = 0;

    bool operator==(const Transaction&) const = default;
};

// Append-only; ids strictly increase in append order.
using Ledger = std::vector<Transaction>;

struct FinContract {
    Id ctr_id = 0;
    Id dsc_id = 0;
    PrimPtr prim;
    Address issuer = 0;
    Address owner = 0;
    Address proposed_owner = 0;
    std::uint64_t scale = 1;
};

struct Result {
    Balance balance;
    std::vector<FinContract> contracts;  // generated by Or / future Timebound
    Id next = 0;
    Ledger ledger;
};

// Scale products may not exceed 2^63-1; wider products are an error,
// never a silent wraparound.
struct OverflowError : std::overflow_error {
    OverflowError() : std::overflow_error("scale factor product exceeds 2^63-1") {}
};

std::uint64_t checked_scale_mul(std::uint64_t a, std::uint64_t b);

// Recursive execution of a contract primitive. nullopt means failure
// (failed gateway query or expired Timebound); intermediate effects are
// discarded by the caller at the join level.
std::optional<Result> execute(const PrimPtr& p, std::uint64_t scale, Address issuer,
                              Address owner, Balance balance, Time now,
                              std::span<const Gateway> gateways, Id ctr_id, Id dsc_id,
                              Id fresh, Ledger ledger, const EngineConfig& cfg = {});

}  // namespace findel

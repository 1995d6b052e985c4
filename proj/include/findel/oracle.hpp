#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "findel/ast.hpp"
#include "findel/marketplace.hpp"

namespace findel {

// Denotational cash-flow evaluator over the informal transfer semantics,
// independent of the operational engine. Used as the calculation-mistake
// oracle: the engine's ledger delta must match its output.

// Choice points are addressed by their root-to-node path, one letter per
// step: L for a first/only child, R for a second child.
using NodePath = std::string;

struct Env {
    // Fixed gateway snapshot; absent address means every query fails.
    std::map<Address, std::uint64_t> gateway_fn;
    Time now = 0;
    // Branch picked when the Or contract at this path gets joined.
    std::map<NodePath, Choice> or_policy;
    // When the postponed contract at this path gets joined; absent means
    // it is abandoned (never joined).
    std::map<NodePath, Time> join_policy;
};

struct Flow {
    Address from = 0;
    Address to = 0;
    std::uint64_t amount = 0;
    Currency currency = Currency::NONE;

    auto operator<=>(const Flow&) const = default;
};

// Kept sorted so multiset comparison is plain equality.
using CashFlow = std::vector<Flow>;

CashFlow normalize(CashFlow flows);

// nullopt mirrors engine failure: a missing gateway value or a window
// already expired at the (scheduled) join time.
std::optional<CashFlow> cashflows(const PrimPtr& p, std::uint64_t scale,
                                  Address issuer, Address owner, const Env& env);

// Multiset of (from, to, amount, currency) over a ledger suffix.
CashFlow ledger_flows(const Ledger& ledger, std::size_t skip = 0);

}  // namespace findel

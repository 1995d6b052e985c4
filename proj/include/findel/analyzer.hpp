#pragma once

#include <string>
#include <vector>

#include "findel/marketplace.hpp"
#include "findel/oracle.hpp"

namespace findel {

// Static and injection-based vulnerability reports for the three checked
// properties: calculation mistakes (via the oracle), external-source
// failures (gateway injection), and accidental swaps (ownership).

enum class Role { IssuerSide, JoinerSide };

const char* to_string(Role r);

struct OwnershipEntry {
    NodePath path;
    PrimPtr generated;          // primitive of the contract this node generates
    Role issuer_role;           // issuer of the generated contract
    Role proposed_owner_role;   // who may join it
    // Set when some party receiving money from the generated contract is
    // not its proposed owner, i.e. execution depends on the other side's
    // goodwill.
    bool flagged = false;
};

struct OwnershipReport {
    Address issuer = 0;
    Address joiner = 0;
    std::vector<OwnershipEntry> entries;  // one per Or/Timebound node

    bool has_accidental_swap() const;
};

OwnershipReport ownership_report(const PrimPtr& p, Address issuer, Address joiner);

struct AnalyzerScenario {
    std::vector<Gateway> gateways;  // baseline snapshot; timestamps refreshed
    Time now = 1;
    std::uint64_t scale = 1;
    Address issuer = 1;
    Address joiner = 2;
};

struct GatewayEntry {
    NodePath path;
    Address addr = 0;
    // Transactions the baseline run performed in the step that gets
    // deleted when this gateway fails.
    std::vector<Transaction> rolled_back;
    bool full_deletion = true;  // the failing step left ledger and balance intact
};

struct GatewayReport {
    std::vector<GatewayEntry> entries;  // one per ScaleObs/If node
};

// Re-runs the joined contract with each queried gateway removed in turn
// and checks that the failure is absorbed atomically.
GatewayReport gateway_sensitivity(const PrimPtr& p, const AnalyzerScenario& scenario);

struct TimeWindowEntry {
    NodePath path;
    Time t0 = 0;
    Time t1 = 0;
    bool expired = false;  // window already missed at `now`
};

struct TimeWindowReport {
    std::vector<TimeWindowEntry> entries;  // one per Timebound node
};

TimeWindowReport timewindow_report(const PrimPtr& p, Time now);

}  // namespace findel

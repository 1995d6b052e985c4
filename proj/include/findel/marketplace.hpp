#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "findel/engine.hpp"

namespace findel {

struct ContractDescription {
    Id dsc_id = 0;
    PrimPtr prim;
    std::uint64_t scale = 1;
    std::vector<Gateway> gateways;
    Time valid_from = 0;
    Time valid_until = kInfTime;
};

enum class EventKind { IssuedFor, Executed, Deleted };

struct Event {
    EventKind kind = EventKind::IssuedFor;
    Id ctr_id = 0;
    Address proposed_owner = 0;  // IssuedFor only

    bool operator==(const Event&) const = default;
};

struct State {
    std::vector<FinContract> contracts;  // newest first
    std::vector<ContractDescription> descriptions;
    Balance balance;
    Time time = 0;
    std::vector<Gateway> gateways;
    Id fresh_id = 0;
    Ledger ledger;
    std::vector<Event> events;  // newest first
    EngineConfig config;
};

enum class Rejection {
    UnknownDescription,
    UnknownContract,
    NotAuthorized,
    MustUseJoinOr,
    NotAnOr,
    OutsideValidity,
    ClockOverflow,
    ArithmeticOverflow,
};

const char* to_string(Rejection r);

enum class Choice { First, Second };

struct Action {
    enum class Kind { Issue, Join, JoinOr, Tick } kind = Kind::Tick;
    Id dsc_id = 0;             // Issue
    Address issuer = 0;        // Issue
    Address proposed_owner = 0;  // Issue
    Id ctr_id = 0;             // Join, JoinOr
    Address caller = 0;        // Join, JoinOr
    Choice choice = Choice::First;  // JoinOr
    std::uint64_t ticks = 0;   // Tick
};

Action make_issue(Id dsc_id, Address issuer, Address proposed_owner);
Action make_join(Id ctr_id, Address caller);
Action make_join_or(Id ctr_id, Address caller, Choice choice);
Action make_tick(std::uint64_t n);

template <typename T>
using RuleResult = std::variant<T, Rejection>;

// Instantiates a contract from a description. The new contract is owned
// by its issuer until someone joins it.
RuleResult<State> issue(const State& s, Id dsc_id, Address issuer,
                        Address proposed_owner);

struct JoinOutcome {
    State state;
    bool executed = false;  // false: execution failed, contract deleted
};

// [Join]/[Fail]: runs the contract primitive. On success the contract is
// replaced by whatever it generated; on execution failure it is deleted
// with balance and ledger untouched. Rejections never mutate state.
RuleResult<JoinOutcome> join(const State& s, Id ctr_id, Address caller);

// [Join OR]: as join, but executes the chosen branch of an Or root.
RuleResult<JoinOutcome> join_or(const State& s, Id ctr_id, Address caller,
                                Choice choice);

// [Tick]: advances the clock by n; INF is never a reachable clock value.
RuleResult<State> tick(const State& s, std::uint64_t n);

enum class Outcome { Issued, Executed, Deleted, Ticked, Rejected };

const char* to_string(Outcome o);

struct StepLog {
    Action action;
    Outcome outcome = Outcome::Rejected;
    std::optional<Rejection> rejection;
};

struct ApplyResult {
    State state;
    Outcome outcome = Outcome::Rejected;
    std::optional<Rejection> rejection;
};

ApplyResult apply(const State& s, const Action& a);

struct TraceResult {
    State state;
    std::vector<StepLog> log;
};

// Folds actions left to right; a rejected action leaves the state as-is
// and is recorded in the log.
TraceResult run_trace(State s, std::span<const Action> actions);

// Scripted gateway history: per address, time-ordered (time, value)
// samples. The snapshot in effect at time t is the latest sample at or
// before t; an address with no such sample is absent.
struct GatewaySample {
    Time time = 0;
    std::uint64_t value = 0;
};

struct GatewayTimeline {
    std::vector<std::pair<Address, std::vector<GatewaySample>>> entries;

    std::vector<Gateway> materialize(Time now) const;
};

// As run_trace, but refreshes s.gateways from the timeline before every
// action so traces can script gateway updates and outages.
TraceResult run_trace(State s, std::span<const Action> actions,
                      const GatewayTimeline& timeline);

const FinContract* find_contract(const State& s, Id ctr_id);
const ContractDescription* find_description(const State& s, Id dsc_id);

}  // namespace findel

#pragma once

#include <map>
#include <string>
#include <vector>

#include "findel/ast.hpp"

namespace findel {

// One year in seconds; scenarios may scale it down without changing
// contract structure.
inline constexpr Time kDefaultYear = 31'536'000;

// Fixed-rate currency exchange: swap 11 USD for 10 EUR.
PrimPtr frce();

// Currency exchange at an external rate served by the gateway at addr.
PrimPtr erce(std::uint64_t n, Address addr);

// Zero-coupon bond: pay 10 USD now, receive 11 USD around now + t.
PrimPtr zcb(Time now, Time t, const SugarConfig& cfg = {});

// Option with the accidental-swap bug: the generated Or contract belongs
// to whoever joins, not to the issuer who needs it executed.
PrimPtr opt(Time t, const SugarConfig& cfg = {});

// Fixed option: Give moves the Or contract to the original issuer.
PrimPtr opt_fixed(Time t, const SugarConfig& cfg = {});

// Pays sum USD at time t if the gateway at addr reports nonzero
// ("defaulted"); does nothing otherwise.
PrimPtr pay_at_t(Time t, Address addr, std::uint64_t sum, const SugarConfig& cfg = {});

// Checkpoint at t: on default nothing happens; otherwise the issuer
// collects fee f and a pay_at_t(t2, addr, price + i*fy) contract is
// generated for the same owner.
PrimPtr yearly_check(Time t, Time t2, Address addr, std::uint64_t price,
                     std::uint64_t fy, std::uint64_t f, std::uint64_t i,
                     const SugarConfig& cfg = {});

// Three-year credit default swap built from pay_at_t and yearly_check.
PrimPtr cds(Time now, Address addr, std::uint64_t price, std::uint64_t fy,
            std::uint64_t f, Time year = kDefaultYear, const SugarConfig& cfg = {});

struct DerivativeSpec {
    std::string name;
    PrimPtr prim;
    std::map<std::string, std::uint64_t> params;
};

std::vector<std::string> derivative_names();

// CLI entry point: instantiate a named derivative from key=value params.
// Throws std::invalid_argument on unknown names or missing parameters.
DerivativeSpec make_derivative(const std::string& name,
                               const std::map<std::string, std::uint64_t>& params,
                               const SugarConfig& cfg = {});

}  // namespace findel

#include "findel/derivatives.hpp"

#include <stdexcept>

namespace findel {

PrimPtr frce() {
    return and_(give(scale(11, one(Currency::USD))), scale(10, one(Currency::EUR)));
}

PrimPtr erce(std::uint64_t n, Address addr) {
    return and_(give(scale(n, one(Currency::USD))),
                scale_obs(addr, scale(n, one(Currency::EUR))));
}

PrimPtr zcb(Time now, Time t, const SugarConfig& cfg) {
    return and_(give(scale(10, one(Currency::USD))),
                at_(now + t, scale(11, one(Currency::USD)), cfg));
}

PrimPtr opt(Time t, const SugarConfig& cfg) {
    (void)cfg;
    return and_(before(t, or_(give(one(Currency::USD)), give(one(Currency::EUR)))),
                after(t + 2, scale(1, one(Currency::GBP))));
}

PrimPtr opt_fixed(Time t, const SugarConfig& cfg) {
    (void)cfg;
    return and_(before(t, give(or_(one(Currency::USD), one(Currency::EUR)))),
                after(t + 2, scale(1, one(Currency::GBP))));
}

PrimPtr pay_at_t(Time t, Address addr, std::uint64_t sum, const SugarConfig& cfg) {
    return at_(t, if_(addr, scale(sum, one(Currency::USD)), zero()), cfg);
}

PrimPtr yearly_check(Time t, Time t2, Address addr, std::uint64_t price,
                     std::uint64_t fy, std::uint64_t f, std::uint64_t i,
                     const SugarConfig& cfg) {
    return at_(t,
               if_(addr, zero(),
                   and_(give(scale(f, one(Currency::USD))),
                        pay_at_t(t2, addr, price + i * fy, cfg))),
               cfg);
}

PrimPtr cds(Time now, Address addr, std::uint64_t price, std::uint64_t fy,
            std::uint64_t f, Time year, const SugarConfig& cfg) {
    return and_(
        // first year: fee up front, payout covers the two remaining fees
        and_(give(scale(f, one(Currency::USD))),
             pay_at_t(now + year, addr, price + 2 * fy, cfg)),
        and_(yearly_check(now + year, now + 2 * year, addr, price, fy, f, 1, cfg),
             yearly_check(now + 2 * year, now + 3 * year, addr, price, fy, f, 0, cfg)));
}

std::vector<std::string> derivative_names() {
    return {"frce", "erce", "zcb", "opt", "opt_fixed", "pay_at_t", "yearly_check",
            "cds"};
}

namespace {

std::uint64_t need(const std::map<std::string, std::uint64_t>& params,
                   const std::string& key) {
    auto it = params.find(key);
    if (it == params.end())
        throw std::invalid_argument("missing derivative parameter: " + key);
    return it->second;
}

std::uint64_t get_or(const std::map<std::string, std::uint64_t>& params,
                     const std::string& key, std::uint64_t fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

}  // namespace

DerivativeSpec make_derivative(const std::string& name,
                               const std::map<std::string, std::uint64_t>& params,
                               const SugarConfig& cfg) {
    DerivativeSpec spec;
    spec.name = name;
    spec.params = params;
    if (name == "frce") {
        spec.prim = frce();
    } else if (name == "erce") {
        spec.prim = erce(need(params, "n"), need(params, "addr"));
    } else if (name == "zcb") {
        spec.prim = zcb(need(params, "now"), need(params, "t"), cfg);
    } else if (name == "opt") {
        spec.prim = opt(need(params, "t"), cfg);
    } else if (name == "opt_fixed") {
        spec.prim = opt_fixed(need(params, "t"), cfg);
    } else if (name == "pay_at_t") {
        spec.prim = pay_at_t(need(params, "t"), need(params, "addr"),
                             need(params, "sum"), cfg);
    } else if (name == "yearly_check") {
        spec.prim =
            yearly_check(need(params, "t"), need(params, "t2"), need(params, "addr"),
                         need(params, "price"), need(params, "fy"), need(params, "f"),
                         need(params, "i"), cfg);
    } else if (name == "cds") {
        spec.prim = cds(need(params, "now"), need(params, "addr"),
                        need(params, "price"), need(params, "fy"), need(params, "f"),
                        get_or(params, "year", kDefaultYear), cfg);
    } else {
        throw std::invalid_argument("unknown derivative: " + name);
    }
    return spec;
}

}  // namespace findel

#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>

namespace findel {

enum class Currency { USD, EUR, GBP, JPY, CNY, SGD, NONE };

const char* to_string(Currency c);
Currency currency_from_string(const std::string& s);

// Addresses are plain naturals; 0 is the distinguished "anyone" address.
using Address = std::uint64_t;

// Seconds since a fixed epoch. The maximum representable value is the
// INF sentinel and is strictly greater than every valid clock value.
using Time = std::uint64_t;
inline constexpr Time kInfTime = std::numeric_limits<Time>::max();

std::string time_to_string(Time t);

enum class PrimTag { Zero, One, Scale, ScaleObs, Give, And, Or, If, Timebound };

class Primitive;
using PrimPtr = std::shared_ptr<const Primitive>;

// One node of a contract tree. Nodes are immutable after construction
// and shared freely between threads.
class Primitive {
public:
    PrimTag tag = PrimTag::Zero;
    Currency currency = Currency::NONE;  // One
    std::uint64_t factor = 0;            // Scale
    Address addr = 0;                    // ScaleObs, If
    Time t0 = 0;                         // Timebound
    Time t1 = 0;                         // Timebound
    PrimPtr left;                        // first child, if any
    PrimPtr right;                       // second child (And, Or, If)
};

bool operator==(const Primitive& a, const Primitive& b);
inline bool operator!=(const Primitive& a, const Primitive& b) { return !(a == b); }
bool equal(const PrimPtr& a, const PrimPtr& b);

PrimPtr zero();
PrimPtr one(Currency c);
PrimPtr scale(std::uint64_t k, PrimPtr p);
PrimPtr scale_obs(Address a, PrimPtr p);
PrimPtr give(PrimPtr p);
PrimPtr and_(PrimPtr c1, PrimPtr c2);
PrimPtr or_(PrimPtr c1, PrimPtr c2);
PrimPtr if_(Address a, PrimPtr c1, PrimPtr c2);
PrimPtr timebound(Time t0, Time t1, PrimPtr p);

struct SugarConfig {
    Time delta = 30;  // half-width of the At window
};

// At(t, p) = Timebound(t - delta, t + delta, p), saturating at 0 and INF.
PrimPtr at_(Time t, PrimPtr p, const SugarConfig& cfg = {});
// Before(t, p) = Timebound(0, t, p).
PrimPtr before(Time t, PrimPtr p);
// After(t, p) = Timebound(t, INF, p).
PrimPtr after(Time t, PrimPtr p);

struct ParseError : std::runtime_error {
    ParseError(std::string msg, int line, int column);
    int line;
    int column;
};

// Parses the textual contract grammar. At/Before/After are desugared
// eagerly; the result contains only the nine core constructors.
PrimPtr parse(const std::string& text, const SugarConfig& cfg = {});

// Canonical printer; parse(print(p)) == p for every tree.
std::string print(const PrimPtr& p);

}  // namespace findel

#include "doctest.h"

#include <random>

#include "findel/ast.hpp"
#include "findel/metaprops.hpp"

using namespace findel;

TEST_CASE("sugar: At builds a symmetric window around t") {
    SugarConfig delta10{10};
    auto p = at_(100, zero(), delta10);
    CHECK(equal(p, timebound(90, 110, zero())));

    SUBCASE("window width is exactly 2*delta when t >= delta") {
        for (Time t : {Time{10}, Time{57}, Time{100000}}) {
            auto q = at_(t, zero(), delta10);
            CHECK(q->t1 - q->t0 == 20);
        }
    }
}

TEST_CASE("sugar: At saturates at zero for small t") {
    auto p = at_(5, one(Currency::USD), SugarConfig{10});
    CHECK(equal(p, timebound(0, 15, one(Currency::USD))));
    CHECK(equal(at_(0, zero(), SugarConfig{0}), timebound(0, 0, zero())));
}

TEST_CASE("sugar: Before and After") {
    CHECK(equal(before(50, zero()), timebound(0, 50, zero())));
    CHECK(equal(before(0, zero()), timebound(0, 0, zero())));
    CHECK(equal(before(kInfTime, one(Currency::JPY)),
                timebound(0, kInfTime, one(Currency::JPY))));
    CHECK(equal(after(7, zero()), timebound(7, kInfTime, zero())));
    CHECK(equal(after(0, zero()), timebound(0, kInfTime, zero())));
    CHECK(equal(after(kInfTime, zero()), timebound(kInfTime, kInfTime, zero())));
}

TEST_CASE("parse: the fixed-rate exchange example") {
    auto p = parse("And(Give(Scale(11, One(USD))), Scale(10, One(EUR)))");
    auto expected =
        and_(give(scale(11, one(Currency::USD))), scale(10, one(Currency::EUR)));
    CHECK(equal(p, expected));
}

TEST_CASE("parse: basic forms") {
    CHECK(equal(parse("Zero"), zero()));
    CHECK(equal(parse("  If( 4 , Zero , One(SGD) ) "),
                if_(4, zero(), one(Currency::SGD))));
    CHECK(equal(parse("Timebound(0, INF, Zero)"), timebound(0, kInfTime, zero())));
}

TEST_CASE("parse: sugar desugars eagerly") {
    auto p = parse("At(100, One(GBP))", SugarConfig{10});
    CHECK(equal(p, at_(100, one(Currency::GBP), SugarConfig{10})));
    CHECK(equal(parse("Before(9, Zero)"), before(9, zero())));
    CHECK(equal(parse("After(9, Zero)"), after(9, zero())));
}

TEST_CASE("parse: errors carry positions") {
    CHECK_THROWS_AS(parse("One(XYZ)"), ParseError);
    CHECK_THROWS_AS(parse("Bogus(1, Zero)"), ParseError);
    CHECK_THROWS_AS(parse("And(Zero Zero)"), ParseError);
    CHECK_THROWS_AS(parse(""), ParseError);
    try {
        parse("And(Zero,\n  Wrong)");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.column == 3);
    }
}

TEST_CASE("print: canonical forms") {
    CHECK(print(zero()) == "Zero");
    CHECK(print(one(Currency::USD)) == "One(USD)");
    CHECK(print(timebound(90, 110, zero())) == "Timebound(90, 110, Zero)");
    CHECK(print(after(7, zero())) == "Timebound(7, INF, Zero)");
}

TEST_CASE("property: parse(print(p)) == p") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        auto p = random_primitive(seed, 6);
        CAPTURE(print(p));
        CHECK(equal(parse(print(p)), p));
    }
}

TEST_CASE("property: desugaring is total and yields Timebound") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        Time t = rng() % 1000;
        auto p = random_primitive(rng(), 3);
        CHECK(at_(t, p)->tag == PrimTag::Timebound);
        CHECK(before(t, p)->tag == PrimTag::Timebound);
        CHECK(after(t, p)->tag == PrimTag::Timebound);
    }
}

#include "doctest.h"

#include <random>

#include "findel/derivatives.hpp"
#include "findel/metaprops.hpp"
#include "findel/oracle.hpp"
#include "support/helpers.hpp"

using namespace findel;

namespace {
constexpr Address kAlice = 1;
constexpr Address kBob = 2;
}  // namespace

TEST_CASE("cashflows: leaves and scaling") {
    Env env;
    CHECK(*cashflows(zero(), 5, kAlice, kBob, env) == CashFlow{});
    CHECK(*cashflows(one(Currency::USD), 5, kAlice, kBob, env) ==
          CashFlow{{kAlice, kBob, 5, Currency::USD}});
    CHECK(*cashflows(scale(3, one(Currency::EUR)), 2, kAlice, kBob, env) ==
          CashFlow{{kAlice, kBob, 6, Currency::EUR}});
    CHECK(*cashflows(give(one(Currency::USD)), 1, kAlice, kBob, env) ==
          CashFlow{{kBob, kAlice, 1, Currency::USD}});
}

TEST_CASE("cashflows: gateway queries mirror engine failure") {
    Env env;
    env.gateway_fn[7] = 3;
    CHECK(*cashflows(scale_obs(7, one(Currency::USD)), 2, kAlice, kBob, env) ==
          CashFlow{{kAlice, kBob, 6, Currency::USD}});
    CHECK(cashflows(scale_obs(8, one(Currency::USD)), 2, kAlice, kBob, env) ==
          std::nullopt);
    CHECK((*cashflows(if_(7, one(Currency::USD), one(Currency::EUR)), 1, kAlice, kBob,
                      env))[0].currency == Currency::USD);
    env.gateway_fn[7] = 0;
    CHECK((*cashflows(if_(7, one(Currency::USD), one(Currency::EUR)), 1, kAlice, kBob,
                      env))[0].currency == Currency::EUR);
}

TEST_CASE("cashflows: frce matches the worked example") {
    Env env;
    auto flows = cashflows(frce(), 1, kAlice, kBob, env);
    REQUIRE(flows);
    CashFlow expected = normalize({{kBob, kAlice, 11, Currency::USD},
                                   {kAlice, kBob, 10, Currency::EUR}});
    CHECK(*flows == expected);
}

TEST_CASE("cashflows: Or follows the policy or is abandoned") {
    auto p = or_(one(Currency::USD), one(Currency::EUR));
    Env env;
    env.now = 5;
    SUBCASE("no policy: abandoned") {
        CHECK(*cashflows(p, 1, kAlice, kBob, env) == CashFlow{});
    }
    SUBCASE("second branch") {
        env.or_policy[""] = Choice::Second;
        env.join_policy[""] = 9;
        CHECK(*cashflows(p, 1, kAlice, kBob, env) ==
              CashFlow{{kAlice, kBob, 1, Currency::EUR}});
    }
}

TEST_CASE("cashflows: Timebound scheduling") {
    auto p = timebound(50, 60, one(Currency::USD));
    Env env;
    SUBCASE("already open: evaluated in place") {
        env.now = 55;
        CHECK(cashflows(p, 1, kAlice, kBob, env)->size() == 1);
    }
    SUBCASE("already expired") {
        env.now = 61;
        CHECK(!cashflows(p, 1, kAlice, kBob, env));
    }
    SUBCASE("postponed, joined inside the window") {
        env.now = 10;
        env.join_policy[""] = 55;
        CHECK(cashflows(p, 1, kAlice, kBob, env)->size() == 1);
    }
    SUBCASE("postponed, joined too late") {
        env.now = 10;
        env.join_policy[""] = 70;
        CHECK(!cashflows(p, 1, kAlice, kBob, env));
    }
    SUBCASE("postponed and never joined") {
        env.now = 10;
        CHECK(*cashflows(p, 1, kAlice, kBob, env) == CashFlow{});
    }
    SUBCASE("postponed twice: no flows") {
        env.now = 10;
        env.join_policy[""] = 20;
        CHECK(*cashflows(p, 1, kAlice, kBob, env) == CashFlow{});
    }
}

TEST_CASE("cashflows: nested paths address each choice point") {
    // And(Or(..), Timebound(..)): the Or sits at "L", the Timebound at "R".
    auto p = and_(or_(one(Currency::USD), zero()),
                  timebound(50, 60, give(one(Currency::EUR))));
    Env env;
    env.now = 1;
    env.or_policy["L"] = Choice::First;
    env.join_policy["L"] = 5;
    env.join_policy["R"] = 55;
    auto flows = cashflows(p, 2, kAlice, kBob, env);
    REQUIRE(flows);
    CashFlow expected = normalize({{kAlice, kBob, 2, Currency::USD},
                                   {kBob, kAlice, 2, Currency::EUR}});
    CHECK(*flows == expected);
}

TEST_CASE("ledger_flows: multiset over a suffix") {
    Ledger ledger = {{0, 0, 1, 2, 5, Currency::USD, 0},
                     {1, 0, 2, 1, 3, Currency::EUR, 0},
                     {2, 0, 1, 2, 5, Currency::USD, 0}};
    CashFlow all = ledger_flows(ledger);
    REQUIRE(all.size() == 3);
    CHECK(all[0] == all[1]);  // duplicates preserved
    CHECK(ledger_flows(ledger, 2).size() == 1);
}

TEST_CASE("differential: engine trace flows equal oracle cashflows") {
    std::mt19937_64 rng(2024);
    std::size_t executed = 0, deleted = 0;
    for (int i = 0; i < 300; ++i) {
        auto p = random_primitive(rng(), 4, 60);
        Env env = test::random_env(p, rng);
        std::uint64_t sc = 1 + rng() % 3;

        auto oracle = cashflows(p, sc, kAlice, kBob, env);
        test::DriveResult run = test::drive_env(p, sc, kAlice, kBob, env);

        CAPTURE(print(p));
        CAPTURE(i);
        REQUIRE(!run.rejected);
        REQUIRE(!run.path_mismatch);
        if (!oracle) {
            CHECK(run.deleted);
            ++deleted;
        } else {
            CHECK(!run.deleted);
            CHECK(run.flows == *oracle);
            ++executed;
        }
    }
    // The generator must exercise both outcomes for the check to mean much.
    CHECK(executed > 50);
    CHECK(deleted > 10);
}

#include "plancherel/errors.hpp"
#include "plancherel/experiments.hpp"

#include <doctest.h>

#include <cmath>

using namespace plancherel;

TEST_CASE("regime names round trip") {
    for (Regime r : {Regime::PoissonJ, Regime::BulkFixed, Regime::BulkProportional, Regime::Pearcey, Regime::Airy})
        CHECK(parse_regime(regime_name(r)) == r);
    CHECK_THROWS_AS(parse_regime("nope"), UsageError);
}

TEST_CASE("CSV round trip") {
    ErrorTable t;
    t.regime = Regime::Airy;
    t.rows = {{100, 0.0316227766017, true, 0.123456789012, -0.5}, {400, 1.5e-7, false, 2.0, 1.0 / 3}};
    const auto csv = t.to_csv();
    CHECK(csv.rfind("N,max_abs_error,converged,finite,limit\n", 0) == 0);
    auto back = ErrorTable::from_csv(csv, Regime::Airy);
    CHECK(back.to_csv() == csv);
    REQUIRE(back.rows.size() == 2);
    CHECK(back.rows[0].N == 100);
    CHECK_FALSE(back.rows[1].converged);
    CHECK(back.rows[0].max_abs_error == 0.0316227766017);
    CHECK_THROWS_AS(ErrorTable::from_csv("bad header\n", Regime::Airy), UsageError);
}

TEST_CASE("monotonicity predicate") {
    ErrorTable t;
    t.rows = {{100, 0.3}, {200, 0.2}, {400, 0.1}};
    CHECK(t.strictly_decreasing());
    t.rows[2].max_abs_error = 0.2;
    CHECK_FALSE(t.strictly_decreasing());
    t.rows[2].max_abs_error = NAN;
    CHECK_FALSE(t.strictly_decreasing());
}

TEST_CASE("spec validation") {
    auto s = default_spec(Regime::PoissonJ);
    CHECK_NOTHROW(s.validate());
    s.Ns = {400, 100};
    CHECK_THROWS_AS(s.validate(), UsageError);
    s.Ns = {100};
    CHECK_THROWS_AS(s.validate(), UsageError);
    s = default_spec(Regime::PoissonJ);
    s.probes = {{{}, {}, {}, {}}};
    CHECK_THROWS_AS(s.validate(), UsageError);
}

TEST_CASE("Poisson regime converges at small N") {
    auto s = default_spec(Regime::PoissonJ);
    s.Ns = {25, 100};
    auto t = converge(s);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].converged);
    CHECK(t.strictly_decreasing());
}

TEST_CASE("density profile at moderate N") {
    for (const auto& r : density_profile({1.0, 1.0}, 100, {-1.0, 0.0, 1.0})) CHECK(std::abs(r.finite - r.limit) < 0.05);
}

TEST_CASE("Poisson sides decouple") {
    CHECK(poisson_independence(1.0, 100, {-1, 0, 1}, {-1, 0, 1}) < 0.02);
}

#include "plancherel/errors.hpp"
#include "plancherel/oracle.hpp"
#include "plancherel/weights.hpp"

#include <doctest.h>

#include <cmath>

using namespace plancherel;

TEST_CASE("E(1) = 1 and Fourier coefficients sum to 1") {
    PlancherelParams p{0.7, 0.3};
    CHECK(std::abs(E_eval(1.0, p) - 1.0) < 1e-15);
    double s = 0;
    for (int l = -40; l <= 40; ++l) s += fourier_coeff(l, p);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("series and contour Fourier coefficients agree") {
    PlancherelParams p{1.3, 0.4};
    for (int l = -6; l <= 6; ++l)
        CHECK(std::abs(fourier_coeff(l, p) - fourier_coeff_contour(l, p)) < 1e-12);
}

TEST_CASE("Skellam marginal is the level-one weight") {
    PlancherelParams p{1.0, 2.0};
    for (int l = -8; l <= 8; ++l)
        CHECK(std::abs(plancherel_weight(Signature({l}), p) - skellam_pmf(l, p)) < 1e-15);
    // Skellam(1,1) at 0 is e^{-2} I_0(2)
    CHECK(skellam_pmf(0, {1, 1}) == doctest::Approx(0.30850832255367).epsilon(1e-12));
}

TEST_CASE("zero parameters give the point mass at the zero signature") {
    CHECK(plancherel_weight(Signature::zero(3), {0, 0}) == doctest::Approx(1.0));
    CHECK(plancherel_weight(Signature::parse("1,0,0"), {0, 0}) == 0.0);
}

TEST_CASE("swapping gamma+ and gamma- dualizes the signature") {
    PlancherelParams p{0.9, 0.2};
    for (const char* t : {"2,0,-1", "1,1,0", "0,-1,-3"}) {
        auto s = Signature::parse(t);
        CHECK(plancherel_weight(s, p) == doctest::Approx(plancherel_weight(s.dual(), p.swapped())).epsilon(1e-13));
    }
}

TEST_CASE("path weights sum to the top weight") {
    PlancherelParams p{0.5, 0.6};
    auto top = Signature::parse("2,0,-1");
    double s = 0;
    for (const auto& mid : lower_neighbours(top))
        for (const auto& bot : lower_neighbours(mid)) s += path_weight(GTPath({bot, mid, top}), p);
    CHECK(s == doctest::Approx(plancherel_weight(top, p)).epsilon(1e-13));
}

TEST_CASE("normalization over an admissible window") {
    for (int N = 1; N <= 3; ++N) {
        PlancherelParams p{0.7, 0.3};
        double total = 0;
        for (const auto& [s, w] : enum_signatures({N, auto_window(N, p, Window(-10, 6)), p})) total += w;
        CHECK(std::abs(total - 1.0) < 1e-10);
    }
}

TEST_CASE("invalid parameters") {
    CHECK_THROWS_AS(PlancherelParams({-1, 0}).validate(), UsageError);
    CHECK_THROWS_AS(PlancherelParams({NAN, 0}).validate(), UsageError);
}

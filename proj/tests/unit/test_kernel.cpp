#include "plancherel/kernel.hpp"
#include "plancherel/oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace plancherel;

TEST_CASE("level-one diagonal is the Skellam pmf") {
    for (PlancherelParams p : {PlancherelParams{1, 1}, PlancherelParams{2, 0.5}}) {
        KernelEvaluator ev(p, {});
        for (int l = -10; l <= 10; ++l) CHECK(std::abs(ev.eval({1, l - 1}, {1, l - 1}, KernelKind::K) - skellam_pmf(l, p)) < 1e-10);
    }
}

TEST_CASE("K_Delta is the particle-hole kernel") {
    PlancherelParams p{0.8, 0.4};
    KernelEvaluator ev(p, {});
    for (int x = -4; x <= 2; ++x) {
        CHECK(ev.eval({2, x}, {2, x}, KernelKind::KDelta) == doctest::Approx(1.0 - ev.eval({2, x}, {2, x}, KernelKind::K)).epsilon(1e-10));
        CHECK(ev.eval({2, x}, {2, x + 1}, KernelKind::KDelta) == doctest::Approx(-ev.eval({2, x}, {2, x + 1}, KernelKind::K)).epsilon(1e-10));
    }
}

TEST_CASE("gauge does not change determinants") {
    PlancherelParams p{0.6, 0.9};
    std::vector<SpacetimePoint> pts{{2, -2}, {3, 0}, {3, -3}};
    CHECK(corr_det(pts, p, {}, KernelKind::K, true) == doctest::Approx(corr_det(pts, p, {}, KernelKind::K, false)).epsilon(1e-10));
}

TEST_CASE("kernel determinants match enumeration") {
    PlancherelParams p{0.3, 0.7};
    EnumerationSpec spec{3, auto_window(3, p, Window(-10, 6)), p};
    std::vector<std::vector<SpacetimePoint>> tuples{{{3, -1}}, {{3, 0}, {3, -2}}, {{1, 0}, {2, -1}, {3, -3}}, {{2, 1}, {3, 1}}};
    for (const auto& t : tuples) {
        CHECK(std::abs(corr_det(t, p) - exact_corr(t, spec)) < 1e-9);
        CHECK(std::abs(corr_det(t, p, {}, KernelKind::KDelta) - exact_corr_complement(t, spec)) < 1e-9);
    }
}

TEST_CASE("swap symmetry of the kernel") {
    PlancherelParams p{1.1, 0.4};
    for (auto [a, b] : {std::pair<SpacetimePoint, SpacetimePoint>{{2, 0}, {2, -1}}, {{1, 2}, {3, -2}}, {{3, -4}, {2, 1}}}) {
        double scale = std::max(1.0, std::abs(kernel_K(a, b, p.swapped())));
        CHECK(swap_symmetry_residual(a, b, p) <= 1e-9 * scale);
    }
}

TEST_CASE("single term and binomials") {
    CHECK(single_term({1, 0}, {2, 0}) == doctest::Approx(-1.0));
    CHECK(single_term({1, 0}, {3, 2}) == doctest::Approx(-3.0));
    CHECK(single_term({1, 2}, {3, 0}) == 0.0);
    CHECK(log_binomial(5, 2).value() == doctest::Approx(10.0));
    CHECK(log_binomial(-3, 2).value() == doctest::Approx(6.0));
    CHECK(log_binomial(-3, 3).value() == doctest::Approx(-10.0));
    CHECK(log_binomial(2, 3).value() == 0.0);
}

TEST_CASE("determinant helper") {
    CHECK(determinant({{2, 1}, {1, 3}}) == doctest::Approx(5.0));
    CHECK(determinant({{0, 1, 0}, {1, 0, 0}, {0, 0, 4}}) == doctest::Approx(-4.0));
    CHECK(determinant({}) == 1.0);
}

TEST_CASE("large N entries stay finite and converge") {
    PlancherelParams p{400.0 / 8, 400.0 / 8};
    KernelEvaluator ev(p, {});
    auto v = ev.eval_raw({400, -200}, {400, -200}, KernelKind::K);
    CHECK(v.converged);
    CHECK(v.value > 0.0);
    CHECK(v.value < 1.0);
}

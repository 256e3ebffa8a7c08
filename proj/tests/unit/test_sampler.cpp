#include "plancherel/errors.hpp"
#include "plancherel/sampler.hpp"

#include <doctest.h>

#include <cmath>

using namespace plancherel;

TEST_CASE("exact N = 2 Metropolis chain is stationary for the weights") {
    SamplerConfig cfg;
    cfg.N = 2;
    cfg.params = {0.3, 0.3};
    cfg.window = Window(-10, 6);
    auto tm = metropolis_transition_matrix(cfg);
    CHECK(tm.states.size() == 17 * 16 / 2);
    for (const auto& row : tm.P) {
        double s = 0;
        for (double v : row) s += v;
        CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK(stationarity_residual(tm) <= 1e-10);
}

TEST_CASE("zero parameters never leave the zero signature") {
    SamplerConfig cfg;
    cfg.N = 3;
    cfg.steps = 300;
    cfg.burn_in = 100;
    for (const auto& s : mcmc_sample(cfg, 50)) CHECK(s == Signature::zero(3));
    for (const auto& s : exact_sample_small(cfg, 50)) CHECK(s == Signature::zero(3));
    auto dens = empirical_density(mcmc_sample(cfg, 10), 3);
    CHECK(dens.size() == 3);
    CHECK(dens[-1] == 1.0);
    CHECK(dens[-3] == 1.0);
}

TEST_CASE("fixed seeds reproduce, distinct seeds differ") {
    SamplerConfig cfg;
    cfg.N = 2;
    cfg.params = {1.0, 1.0};
    cfg.steps = 5000;
    cfg.seed = 42;
    auto a = mcmc_sample(cfg, 200), b = mcmc_sample(cfg, 200);
    CHECK(a == b);
    CHECK(exact_sample_small(cfg, 100) == exact_sample_small(cfg, 100));
    cfg.seed = split_seed(42, 1);
    CHECK(mcmc_sample(cfg, 200) != a);
    CHECK(split_seed(42, 0) != split_seed(42, 1));
}

TEST_CASE("empirical density sums to N") {
    SamplerConfig cfg;
    cfg.N = 3;
    cfg.params = {0.5, 0.5};
    cfg.steps = 20000;
    double total = 0;
    for (const auto& [x, f] : empirical_density(mcmc_sample(cfg, 2000), 3)) {
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
        total += f;
    }
    CHECK(total == doctest::Approx(3.0));
}

TEST_CASE("exact level-one draws follow Skellam") {
    SamplerConfig cfg;
    cfg.N = 1;
    cfg.params = {1.0, 1.0};
    cfg.seed = 9;
    const long n = 20000;
    auto dens = empirical_density(exact_sample_small(cfg, n), 1);
    for (int l = -4; l <= 4; ++l) {
        const double q = skellam_pmf(l, cfg.params);
        CHECK(std::abs(dens[l - 1] - q) <= 4 * std::sqrt(q * (1 - q) / n));
    }
}

TEST_CASE("batch-means errors") {
    SamplerConfig cfg;
    cfg.N = 1;
    cfg.params = {1.0, 1.0};
    cfg.steps = 50000;
    auto est = density_with_errors(mcmc_sample(cfg, 5000), 1, 50);
    CHECK(est.at(-1).std_error > 0.0);
    CHECK(est.at(-1).std_error < 0.05);
    CHECK_THROWS_AS(density_with_errors(mcmc_sample(cfg, 10), 1, 50), UsageError);
}

TEST_CASE("configuration checks") {
    SamplerConfig cfg;
    cfg.steps = 10;
    cfg.burn_in = 10;
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    cfg.N = 4;
    cfg.steps = 100;
    CHECK_THROWS_AS(exact_sample_small(cfg, 1), UsageError);
    cfg.N = 2;
    cfg.window = Window(0, 5);
    CHECK_THROWS_AS(cfg.validate(), UsageError);
    CHECK_THROWS_AS(empirical_density({}, 1), UsageError);
}

TEST_CASE("default clamp grows with N and gamma") {
    SamplerConfig cfg;
    cfg.N = 10;
    cfg.params = {1.0, 1.0};
    auto w = cfg.default_window();
    CHECK(w.lo == static_cast<int>(std::floor(-10 - 8 * std::sqrt(20.0))));
    CHECK(w.hi == static_cast<int>(std::ceil(8 * std::sqrt(20.0))));
}

#pragma once

#include "plancherel/combinatorics.hpp"
#include "plancherel/weights.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace plancherel {

struct SamplerConfig {
    int N = 1;
    PlancherelParams params{};
    long steps = 10000;  // total sweeps of the chain (one sweep = N proposals)
    long burn_in = 1000; // sweeps discarded before recording
    std::uint64_t seed = 1;
    // Clamp on positions lambda_i - i; defaults to default_window().
    std::optional<Window> window;

    void validate() const;
    Window default_window() const;
    Window effective_window() const { return window.value_or(default_window()); }
};

// Seed of the k-th independent stream derived from `seed` (splitmix64).
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream);

// i.i.d. draws by inverse CDF over the enumerated weights (N <= 3). Without an
// explicit window the enumeration window is grown from the default clamp.
std::vector<Signature> exact_sample_small(const SamplerConfig& cfg, long count);

// Metropolis chain started at the zero signature. Proposal: a uniform
// coordinate moves by +-1; moves leaving the window or breaking monotonicity
// are rejected. After burn_in, one sample is kept every
// max(1, (steps - burn_in) / count) sweeps until `count` are collected.
std::vector<Signature> mcmc_sample(const SamplerConfig& cfg, long count);

// Occupation frequency of each position at level N.
std::map<int, double> empirical_density(const std::vector<Signature>& samples, int N);

// Occupation frequency with a batch-means standard error (valid for correlated chains).
struct DensityEstimate {
    double mean = 0;
    double std_error = 0;
};
std::map<int, DensityEstimate> density_with_errors(const std::vector<Signature>& samples, int N, int batches = 50);

// Exact Metropolis transition matrix on all signatures in the window (for small N and windows).
struct TransitionMatrix {
    std::vector<Signature> states;
    std::vector<double> weights; // normalized over the states
    std::vector<std::vector<double>> P;
};
TransitionMatrix metropolis_transition_matrix(const SamplerConfig& cfg);
// max_j |(pi P)_j - pi_j| for pi = normalized weights.
double stationarity_residual(const TransitionMatrix& tm);

} // namespace plancherel

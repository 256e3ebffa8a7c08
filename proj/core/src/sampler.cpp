#include "plancherel/sampler.hpp"
#include "plancherel/errors.hpp"
#include "plancherel/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace plancherel {

namespace {

// Level-N weight det[c(x_k + j)] * dim with c(l) tabulated over the window.
class WeightModel {
public:
    WeightModel(int N, const PlancherelParams& p, const Window& w) : n_(N), lo_(w.lo + 1) {
        for (int l = w.lo + 1; l <= w.hi + N; ++l) c_.push_back(fourier_coeff(l, p));
    }

    double operator()(const std::vector<int>& x) const {
        std::vector<std::vector<double>> m(static_cast<std::size_t>(n_), std::vector<double>(static_cast<std::size_t>(n_)));
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < n_; ++k)
                m[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
                    c_[static_cast<std::size_t>(x[static_cast<std::size_t>(k)] + j + 1 - lo_)];
        double det = determinant(m);
        // Weyl dimension in positions: prod_{i<j} (x_i - x_j) / (j - i)
        double dim = 1;
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                dim *= static_cast<double>(x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)]) / (j - i);
        return det * dim;
    }

private:
    int n_;
    int lo_;
    std::vector<double> c_;
};

bool valid_positions(const std::vector<int>& x, const Window& w) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!w.contains(x[i])) return false;
        if (i > 0 && x[i] >= x[i - 1]) return false;
    }
    return true;
}

std::vector<int> zero_positions(int N) {
    std::vector<int> x(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) x[static_cast<std::size_t>(i)] = -(i + 1);
    return x;
}

} // namespace

void SamplerConfig::validate() const {
    if (N < 1) throw UsageError("sampler requires N >= 1");
    params.validate();
    if (steps < 1 || burn_in < 0 || steps <= burn_in) throw UsageError("sampler requires steps > burn_in >= 0");
    Window w = effective_window();
    if (!w.contains(-1) || !w.contains(-N)) throw UsageError("sampler window must contain the zero signature");
}

Window SamplerConfig::default_window() const {
    const double n = N;
    int lo = static_cast<int>(std::floor(-n - 8 * std::sqrt(params.gamma_minus * n + n)));
    int hi = static_cast<int>(std::ceil(8 * std::sqrt(params.gamma_plus * n + n)));
    return Window(lo, hi);
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::vector<Signature> exact_sample_small(const SamplerConfig& cfg, long count) {
    if (cfg.N > 3) throw UsageError("exact sampling requires N <= 3");
    if (count < 0) throw UsageError("sample count must be nonnegative");
    cfg.params.validate();
    const Window w = cfg.window ? *cfg.window : auto_window(cfg.N, cfg.params, cfg.default_window());
    auto table = enum_signatures({cfg.N, w, cfg.params});
    std::vector<double> cdf;
    double total = 0;
    for (const auto& [sig, wt] : table) cdf.push_back(total += wt);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unif(0.0, total);
    std::vector<Signature> out;
    out.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        auto it = std::upper_bound(cdf.begin(), cdf.end(), unif(rng));
        auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
        out.push_back(table[idx].first);
    }
    return out;
}

std::vector<Signature> mcmc_sample(const SamplerConfig& cfg, long count) {
    cfg.validate();
    if (count < 0) throw UsageError("sample count must be nonnegative");
    const Window w = cfg.effective_window();
    WeightModel weight(cfg.N, cfg.params, w);
    std::vector<int> x = zero_positions(cfg.N);
    double wx = weight(x);
    if (!(wx > 0)) throw NumericalFailure("mcmc_sample: zero weight at the starting state");
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<int> coord(0, cfg.N - 1);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto sweep = [&]() {
        for (int s = 0; s < cfg.N; ++s) {
            const auto i = static_cast<std::size_t>(coord(rng));
            const int step = unif(rng) < 0.5 ? -1 : 1;
            x[i] += step;
            if (valid_positions(x, w)) {
                double wy = weight(x);
                if (wy >= wx || unif(rng) * wx < wy) {
                    wx = wy;
                    continue;
                }
            }
            x[i] -= step;
        }
    };
    for (long s = 0; s < cfg.burn_in; ++s) sweep();
    const long thin = std::max<long>(1, count > 0 ? (cfg.steps - cfg.burn_in) / count : 1);
    std::vector<Signature> out;
    out.reserve(static_cast<std::size_t>(count));
    for (long k = 0; k < count; ++k) {
        for (long s = 0; s < thin; ++s) sweep();
        out.push_back(Signature::from_positions(x));
    }
    return out;
}

std::map<int, double> empirical_density(const std::vector<Signature>& samples, int N) {
    if (samples.empty()) throw UsageError("empirical_density needs at least one sample");
    std::map<int, double> freq;
    for (const auto& s : samples) {
        if (s.size() != N) throw UsageError("sample length differs from N");
        for (int x : s.positions()) freq[x] += 1.0;
    }
    for (auto& [x, f] : freq) f /= static_cast<double>(samples.size());
    return freq;
}

std::map<int, DensityEstimate> density_with_errors(const std::vector<Signature>& samples, int N, int batches) {
    if (batches < 2 || static_cast<long>(samples.size()) < batches)
        throw UsageError("density_with_errors needs at least `batches` >= 2 samples");
    const std::size_t per = samples.size() / static_cast<std::size_t>(batches);
    std::map<int, std::vector<double>> counts;
    for (std::size_t b = 0; b < static_cast<std::size_t>(batches); ++b)
        for (std::size_t i = b * per; i < (b + 1) * per; ++i) {
            if (samples[i].size() != N) throw UsageError("sample length differs from N");
            for (int x : samples[i].positions()) {
                auto& v = counts[x];
                v.resize(static_cast<std::size_t>(batches), 0.0);
                v[b] += 1.0 / static_cast<double>(per);
            }
        }
    std::map<int, DensityEstimate> out;
    for (auto& [x, v] : counts) {
        double mean = 0, var = 0;
        for (double m : v) mean += m;
        mean /= batches;
        for (double m : v) var += (m - mean) * (m - mean);
        var /= batches - 1;
        out[x] = {mean, std::sqrt(var / batches)};
    }
    return out;
}

TransitionMatrix metropolis_transition_matrix(const SamplerConfig& cfg) {
    cfg.validate();
    const Window w = cfg.effective_window();
    if (cfg.N > 3) throw UsageError("transition matrix requires N <= 3");
    WeightModel weight(cfg.N, cfg.params, w);
    TransitionMatrix tm;
    std::map<std::vector<int>, std::size_t> index;
    std::vector<std::vector<int>> xs;
    // all strictly decreasing position vectors in the window
    std::vector<int> x(static_cast<std::size_t>(cfg.N));
    auto rec = [&](auto&& self, int i, int upper) -> void {
        if (i == cfg.N) {
            index[x] = xs.size();
            xs.push_back(x);
            return;
        }
        for (int v = upper; v >= w.lo + (cfg.N - i - 1); --v) {
            x[static_cast<std::size_t>(i)] = v;
            self(self, i + 1, v - 1);
        }
    };
    rec(rec, 0, w.hi);
    const std::size_t n = xs.size();
    std::vector<double> wt(n);
    double total = 0;
    for (std::size_t s = 0; s < n; ++s) total += wt[s] = weight(xs[s]);
    tm.P.assign(n, std::vector<double>(n, 0.0));
    const double prop = 1.0 / (2.0 * cfg.N);
    for (std::size_t s = 0; s < n; ++s) {
        double stay = 1.0;
        for (int i = 0; i < cfg.N; ++i)
            for (int step : {-1, 1}) {
                auto y = xs[s];
                y[static_cast<std::size_t>(i)] += step;
                if (!valid_positions(y, w)) continue;
                const std::size_t t = index.at(y);
                const double acc = wt[s] > 0 ? std::min(1.0, wt[t] / wt[s]) : 1.0;
                tm.P[s][t] += prop * acc;
                stay -= prop * acc;
            }
        tm.P[s][s] += stay;
    }
    for (std::size_t s = 0; s < n; ++s) {
        tm.states.push_back(Signature::from_positions(xs[s]));
        tm.weights.push_back(wt[s] / total);
    }
    return tm;
}

double stationarity_residual(const TransitionMatrix& tm) {
    const std::size_t n = tm.states.size();
    double worst = 0;
    for (std::size_t j = 0; j < n; ++j) {
        double v = 0;
        for (std::size_t i = 0; i < n; ++i) v += tm.weights[i] * tm.P[i][j];
        worst = std::max(worst, std::abs(v - tm.weights[j]));
    }
    return worst;
}

} // namespace plancherel

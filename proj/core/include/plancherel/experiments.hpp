#pragma once

#include "plancherel/kernel.hpp"
#include "plancherel/limitkernels.hpp"
#include "plancherel/shape.hpp"

#include <string>
#include <vector>

namespace plancherel {

enum class Regime { PoissonJ, BulkFixed, BulkProportional, Pearcey, Airy };

const char* regime_name(Regime r);
Regime parse_regime(const std::string& name);

// Which fields are read depends on the regime:
//   PoissonJ          t (n = round(tN)), dx = absolute position x
//   BulkFixed         t (n = N + round(t sqrt N)), dx = offset from round(c sqrt N)
//   BulkProportional  dn (n = N + dn), dx = offset from round(cN)
//   Pearcey, Airy     t, s (scaled time and space)
struct ProbePoint {
    double t = 0.0;
    double s = 0.0;
    int dx = 0;
    int dn = 0;
};

struct ConvergenceSpec {
    Regime regime = Regime::PoissonJ;
    std::vector<int> Ns{100, 400};
    // Each tuple (at most 3 points) gives one determinant comparison.
    std::vector<std::vector<ProbePoint>> probes;
    double a = 1.0;           // PoissonJ: gamma N -> a; proportional regimes: gamma+ / N
    double b = 1.0;           // proportional regimes: gamma- / N
    double c = 0.0;           // BulkFixed: x / sqrt N; BulkProportional: x / N
    double gamma_plus = 1.0;  // BulkFixed
    double gamma_minus = 1.0; // BulkFixed
    double z0 = -1.0;         // Pearcey
    double c1 = 0.0;          // Airy edge (a root of Q_{a,b})
    KernelSettings kernel{};
    LimitSettings limit{};
    void validate() const;
};

// Defaults used by the CLI and the acceptance suite.
ConvergenceSpec default_spec(Regime r);

struct ErrorRow {
    int N = 0;
    double max_abs_error = 0.0;
    bool converged = true;
    double finite = 0.0; // finite-N determinant of the worst tuple
    double limit = 0.0;  // limit determinant of the worst tuple
    friend bool operator==(const ErrorRow&, const ErrorRow&) = default;
};

struct ErrorTable {
    Regime regime = Regime::PoissonJ;
    std::vector<ErrorRow> rows;

    bool strictly_decreasing() const;
    // Header row, then one record per N; reals with 12 significant digits.
    std::string to_csv() const;
    static ErrorTable from_csv(const std::string& text, Regime regime);
};

ErrorTable converge_poisson(const ConvergenceSpec& spec);
ErrorTable converge_bulk_fixed(const ConvergenceSpec& spec);
ErrorTable converge_bulk_proportional(const ConvergenceSpec& spec);
ErrorTable converge_pearcey(const ConvergenceSpec& spec);
ErrorTable converge_airy(const ConvergenceSpec& spec);
ErrorTable converge(const ConvergenceSpec& spec);

// One-point density at level N and x = round(beta sqrt N) for fixed gamma,
// against (1/pi) arccos(beta / (2 sqrt gamma+)) at the achieved beta.
struct DensityRow {
    double beta = 0.0;
    int x = 0;
    double finite = 0.0;
    double limit = 0.0;
};
std::vector<DensityRow> density_profile(const PlancherelParams& p, int N, const std::vector<double>& betas,
                                        const KernelSettings& st = {});

// Gauge-invariant size of the coupling between x on the lambda+ side and
// -n-y-1 on the lambda- side: max over x, y of sqrt|K(p,q) K(q,p)| at level n = N,
// gamma = a/N.
double poisson_independence(double a, int N, const std::vector<int>& xs, const std::vector<int>& ys,
                            const KernelSettings& st = {});

} // namespace plancherel

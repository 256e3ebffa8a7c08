#pragma once

#include "plancherel/quadrature.hpp"
#include "plancherel/weights.hpp"

#include <cmath>
#include <map>
#include <tuple>
#include <vector>

namespace plancherel {

struct SpacetimePoint {
    int n = 1; // level
    int x = 0; // position
    void validate() const;
    friend bool operator==(const SpacetimePoint&, const SpacetimePoint&) = default;
    friend auto operator<=>(const SpacetimePoint&, const SpacetimePoint&) = default;
};

enum class RadiusPolicy { Fixed, Auto };
enum class KernelKind { K, KDelta };

// Fixed: |u| = u_radius and |w - 1| = w_radius. Auto: contours chosen per point
// to minimize the peak log-magnitude of the integrand (see kernel.cpp).
struct KernelSettings {
    double u_radius = 0.5;
    double w_radius = 0.4;
    QuadratureSettings quad{};
    RadiusPolicy radius_policy = RadiusPolicy::Auto;
    // Per-dimension node cap for the tensor trapezoid rule.
    int max_circle_nodes = 4096;
    void validate() const;
};

struct KernelValue {
    double value = 0.0;
    double imag = 0.0;  // discarded imaginary part of the quadrature
    double scale = 0.0; // magnitude of the summed terms (rounding-error yardstick)
    bool converged = false;
    int nodes = 0;
};

// A contour cycle: a sum of signed counterclockwise circles.
struct ContourCycle {
    std::vector<std::pair<CircleContour, int>> circles;
    double peak = 0.0; // max log-magnitude of the role's factor on the cycle
};

// Evaluates kernel entries for one parameter set, caching per-point contours.
class KernelEvaluator {
public:
    KernelEvaluator(const PlancherelParams& prm, const KernelSettings& st);

    // Entry multiplied by exp(log_shift); throws NumericalFailure on
    // non-convergence or a failed realness check.
    double eval(const SpacetimePoint& p1, const SpacetimePoint& p2, KernelKind kind, double log_shift = 0.0);
    KernelValue eval_raw(const SpacetimePoint& p1, const SpacetimePoint& p2, KernelKind kind,
                         double log_shift = 0.0);

    // Gauge log-magnitude of a point: peak of Re(gamma- u + gamma+/u + x log u + n log(1-u))
    // on its u-contour.
    double gauge(const SpacetimePoint& p);

    // M_ij = kernel(p_i, p_j) * exp(G_j - G_i) (or without gauge).
    std::vector<std::vector<double>> matrix(const std::vector<SpacetimePoint>& pts, KernelKind kind,
                                            bool use_gauge = true);

    const ContourCycle& u_contour(const SpacetimePoint& p);
    const ContourCycle& w_contour(const SpacetimePoint& p);

    const PlancherelParams& params() const { return prm_; }
    const KernelSettings& settings() const { return st_; }

private:
    KernelValue double_integral(const SpacetimePoint& p1, const SpacetimePoint& p2, double log_shift);

    PlancherelParams prm_;
    KernelSettings st_;
    std::map<std::pair<int, int>, ContourCycle> ucache_, wcache_;
};

double kernel_K(const SpacetimePoint& p1, const SpacetimePoint& p2, const PlancherelParams& prm,
                const KernelSettings& st = {});
double kernel_K_delta(const SpacetimePoint& p1, const SpacetimePoint& p2, const PlancherelParams& prm,
                      const KernelSettings& st = {});
// -binom(n2 - n1 - 1 + x2 - x1, x2 - x1) for x2 >= x1, else 0; requires n1 < n2.
double single_term(const SpacetimePoint& p1, const SpacetimePoint& p2);
double corr_det(const std::vector<SpacetimePoint>& points, const PlancherelParams& prm,
                const KernelSettings& st = {}, KernelKind which = KernelKind::K, bool use_gauge = true);
double corr_det(KernelEvaluator& ev, const std::vector<SpacetimePoint>& points, KernelKind which,
                bool use_gauge = true);
double swap_symmetry_residual(const SpacetimePoint& p1, const SpacetimePoint& p2, const PlancherelParams& prm,
                              const KernelSettings& st = {});

double determinant(const std::vector<std::vector<double>>& m);

// Signed log-magnitude, for binomials and residues that overflow doubles.
struct SignedLog {
    double log_abs = -INFINITY;
    int sign = 0;
    double value(double shift = 0.0) const { return sign == 0 ? 0.0 : sign * std::exp(log_abs + shift); }
};
// Generalized binomial coefficient binom(a, k) for integer a and k >= 0.
SignedLog log_binomial(long a, long k);

} // namespace plancherel

#pragma once

#include "plancherel/quadrature.hpp"

#include <array>
#include <vector>

namespace plancherel {

// gamma+/N -> a, gamma-/N -> b.
struct ProportionalParams {
    double a = 0.0;
    double b = 0.0;
    void validate() const;
};

// Q(z) = 16 y^4 + p3 y^3 + p2 y^2 + p1 y + p0 with y = z + 1/2.
struct QuarticCoefficients {
    double p0 = 0, p1 = 0, p2 = 0, p3 = 0, p4 = 16;
    double eval(double z) const;
    double derivative(double z) const;
};

struct RealRoots {
    std::vector<double> roots; // distinct, ascending
    std::vector<int> multiplicity;
    int m() const { return static_cast<int>(roots.size()); }
};

QuarticCoefficients q_coefficients(const ProportionalParams& pp);
RealRoots q_real_roots(const ProportionalParams& pp);

// R(z) = -b z^3 + (b - c - 1) z^2 + (c + a) z - a, roots polished.
std::array<cplx, 3> r_roots(const ProportionalParams& pp, double c);
cplx r_eval(const ProportionalParams& pp, double c, cplx z);
double r_discriminant(const ProportionalParams& pp, double c);
double discriminant_identity_residual(const ProportionalParams& pp, double c);

cplx z_plus_proportional(const ProportionalParams& pp, double c);
cplx z_plus_fixed_gamma(double c, double gamma_plus);

struct RegionLabel {
    enum class Kind { Void, Saturated, Bulk };
    Kind kind = Kind::Void;
    cplx z_plus{0.0, 0.0}; // Bulk only, Im > 0
    static const char* name(Kind k);
};

RegionLabel classify_region(const ProportionalParams& pp, double c);
double density_limit(const RegionLabel& region);
// Fixed gamma+, x ~ beta sqrt(N): (1/pi) arccos(beta / (2 sqrt(gamma+))), clamped to [0, 1].
double density_limit_fixed(double beta, double gamma_plus);

struct PearceyData {
    double z0 = 0, a = 0, b = 0, c0 = 0, zeta = 0;
};
PearceyData double_root_family(double z0);

struct EdgeData {
    double a = 0, b = 0;
    double c1 = 0;
    double z1 = 0;
    double p3 = 0;
    double cbrt_p3() const;
    double tau(double t) const;
    double sigma(double t, double s) const;
};
EdgeData airy_constants(const ProportionalParams& pp, double c1);

// A(z; c; d) = a/z + b z + c log z + d log(1 - z), principal branches,
// with log(1 - z) = log|1 - z| + i pi on the cut z > 1.
cplx phase_A(cplx z, double c, double d, const ProportionalParams& pp);

} // namespace plancherel

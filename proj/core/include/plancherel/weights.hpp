#pragma once

#include "plancherel/combinatorics.hpp"
#include "plancherel/quadrature.hpp"

namespace plancherel {

struct PlancherelParams {
    double gamma_plus = 0.0;
    double gamma_minus = 0.0;
    void validate() const;
    PlancherelParams swapped() const { return {gamma_minus, gamma_plus}; }
};

// E(z) = exp(g+ (z - 1) + g- (1/z - 1)).
cplx E_eval(cplx z, const PlancherelParams& p);

// Laurent coefficient c(l) of E, by its convergent series.
double fourier_coeff(long l, const PlancherelParams& p);
// Same coefficient by trapezoid quadrature on |u| = 1 (cross-check).
double fourier_coeff_contour(long l, const PlancherelParams& p, const QuadratureSettings& s = {});

// P_N(lambda) = det[c(lambda_k - k + j)] * dim(lambda).
double plancherel_weight(const Signature& sig, const PlancherelParams& p);
// det[c(x_k + j)] with x the top-level positions; equals P_N(top) / dim(top).
double path_weight(const GTPath& path, const PlancherelParams& p);
double top_determinant(const Signature& top, const PlancherelParams& p);

double skellam_pmf(long l, const PlancherelParams& p);

} // namespace plancherel

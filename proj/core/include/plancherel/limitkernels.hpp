#pragma once

#include "plancherel/quadrature.hpp"

namespace plancherel {

struct SineParams {
    cplx z_plus{0.0, 1.0};
    void validate() const; // Im(z_plus) > 0
};

struct AiryArg {
    double tau = 0.0;
    double sigma = 0.0;
};

struct PearceyArg {
    double t = 0.0;
    double s = 0.0;
};

struct LimitSettings {
    QuadratureSettings quad{128, 1 << 20, 1e-11};
    // Offset of the w-contour vertices from the origin (the u-contour passes through 0).
    double pearcey_delta = 0.1;
    // u vertex at +delta, w vertex at -delta in the double Airy form.
    double airy_delta = 0.1;
};

struct LimitValue {
    double value = 0.0;
    double imag = 0.0;
    bool converged = false;
    long nodes_used = 0;
};

// The *_eval forms report convergence; the plain forms throw NumericalFailure instead.
LimitValue kernel_J_eval(double s, int x, double t, int y, const LimitSettings& st = {});
double kernel_J(double s, int x, double t, int y, const LimitSettings& st = {});

// S(dt; dx) = (1/2 pi i) int_{conj z+}^{z+} u^{dx - 1} e^{-dt u} du, dt = t_i - t_j, dx = x_i - x_j.
LimitValue sine_S_eval(const SineParams& p, double dt, int dx, const LimitSettings& st = {});
double sine_S(const SineParams& p, double dt, int dx, const LimitSettings& st = {});

// B_z(k, l) = (1/2 pi i) int_{conj z}^{z} (1 - u)^k u^{-l-1} du.
LimitValue beta_B_eval(cplx z, int k, int l, const LimitSettings& st = {});
double beta_B(cplx z, int k, int l, const LimitSettings& st = {});

LimitValue airy_Ai_eval(double x, const LimitSettings& st = {});
double airy_Ai(double x, const LimitSettings& st = {});
double airy_Ai_prime(double x, const LimitSettings& st = {});

LimitValue airy_ext_integral_eval(const AiryArg& a1, const AiryArg& a2, const LimitSettings& st = {});
double airy_ext_integral(const AiryArg& a1, const AiryArg& a2, const LimitSettings& st = {});
LimitValue airy_ext_double_eval(const AiryArg& a1, const AiryArg& a2, const LimitSettings& st = {});
double airy_ext_double(const AiryArg& a1, const AiryArg& a2, const LimitSettings& st = {});
// Extra term of the double form for tau1 < tau2 (zero otherwise).
double airy_gaussian_term(const AiryArg& a1, const AiryArg& a2);

LimitValue pearcey_P_eval(const PearceyArg& p1, const PearceyArg& p2, const LimitSettings& st = {});
double pearcey_P(const PearceyArg& p1, const PearceyArg& p2, const LimitSettings& st = {});
// Extra term for t1 > t2 (zero otherwise).
double pearcey_gaussian_term(const PearceyArg& p1, const PearceyArg& p2);

} // namespace plancherel

#include "plancherel/weights.hpp"
#include "plancherel/errors.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace plancherel {

namespace {

// log(g^k), with 0^0 = 1.
double log_pow(double g, long k) {
    if (k == 0) return 0.0;
    if (g == 0.0) return -INFINITY;
    return static_cast<double>(k) * std::log(g);
}

} // namespace

void PlancherelParams::validate() const {
    if (!(gamma_plus >= 0) || !(gamma_minus >= 0) || !std::isfinite(gamma_plus) ||
        !std::isfinite(gamma_minus))
        throw UsageError("gamma parameters must be finite and nonnegative");
}

cplx E_eval(cplx z, const PlancherelParams& p) {
    if (z == cplx(0.0, 0.0)) throw DomainError("E(z) is undefined at z = 0");
    return std::exp(p.gamma_plus * (z - 1.0) + p.gamma_minus * (1.0 / z - 1.0));
}

double fourier_coeff(long l, const PlancherelParams& p) {
    p.validate();
    const double gp = p.gamma_plus, gm = p.gamma_minus;
    const long k0 = std::max(0L, -l);
    if (gp == 0.0 && gm == 0.0) return l == 0 ? 1.0 : 0.0;
    if (gm == 0.0) return l >= 0 ? std::exp(log_pow(gp, l) - std::lgamma(l + 1.0) - gp) : 0.0;
    if (gp == 0.0) return l <= 0 ? std::exp(log_pow(gm, -l) - std::lgamma(1.0 - l) - gm) : 0.0;
    // Terms peak near k* where (k+l) k = gp gm; sum outward from the peak.
    auto log_term = [&](long k) {
        return log_pow(gp, k + l) + log_pow(gm, k) - std::lgamma(k + l + 1.0) - std::lgamma(k + 1.0) -
               gp - gm;
    };
    double ls = static_cast<double>(l);
    long kpk = std::max(k0, static_cast<long>(std::floor((-ls + std::sqrt(ls * ls + 4 * gp * gm)) / 2)));
    const double ref = log_term(kpk);
    double sum = 0.0;
    for (long k = kpk;; ++k) {
        double t = std::exp(log_term(k) - ref);
        sum += t;
        if (t < 1e-18 * sum) break;
    }
    for (long k = kpk - 1; k >= k0; --k) {
        double t = std::exp(log_term(k) - ref);
        sum += t;
        if (t < 1e-18 * sum) break;
    }
    return sum * std::exp(ref);
}

double fourier_coeff_contour(long l, const PlancherelParams& p, const QuadratureSettings& s) {
    auto r = circle_integral(
        [&](cplx u) { return E_eval(u, p) * std::pow(u, static_cast<double>(-1 - l)); },
        CircleContour{{0.0, 0.0}, 1.0}, s);
    return value_or_throw(r, "fourier_coeff_contour").real();
}

double top_determinant(const Signature& top, const PlancherelParams& p) {
    const int n = top.size();
    const auto x = top.positions();
    Eigen::MatrixXd m(n, n);
    for (int j = 1; j <= n; ++j)
        for (int k = 0; k < n; ++k) m(j - 1, k) = fourier_coeff(x[static_cast<std::size_t>(k)] + j, p);
    return n == 1 ? m(0, 0) : m.partialPivLu().determinant();
}

double plancherel_weight(const Signature& sig, const PlancherelParams& p) {
    return top_determinant(sig, p) * weyl_dim_double(sig);
}

double path_weight(const GTPath& path, const PlancherelParams& p) { return top_determinant(path.top(), p); }

double skellam_pmf(long l, const PlancherelParams& p) {
    p.validate();
    const double gp = p.gamma_plus, gm = p.gamma_minus;
    if (gp == 0.0 || gm == 0.0) return fourier_coeff(l, p);
    const double z = 2 * std::sqrt(gp * gm);
    const double nu = std::abs(static_cast<double>(l));
    const double bessel = std::cyl_bessel_i(nu, z);
    if (!std::isfinite(bessel) || bessel == 0.0) return fourier_coeff(l, p);
    return std::exp(-gp - gm + 0.5 * static_cast<double>(l) * std::log(gp / gm) + std::log(bessel));
}

} // namespace plancherel

#include "plancherel/shape.hpp"
#include "plancherel/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace plancherel {

namespace {

constexpr double kImagTol = 1e-9;
constexpr double kClusterTol = 1e-5;

// Roots of sum coeffs[k] z^k (coeffs.back() != 0) as companion-matrix eigenvalues.
std::vector<cplx> poly_roots(const std::vector<double>& coeffs) {
    const int n = static_cast<int>(coeffs.size()) - 1;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -coeffs[static_cast<std::size_t>(i)] / coeffs.back();
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    if (es.info() != Eigen::Success) throw NumericalFailure("companion eigenvalue solve failed");
    std::vector<cplx> out;
    for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()[i]);
    return out;
}

cplx horner(const std::vector<double>& c, cplx z) {
    cplx v{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
    return v;
}

std::vector<double> derivative(const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
    return d;
}

cplx newton(const std::vector<double>& c, cplx z, int iters = 8) {
    const auto d = derivative(c);
    for (int i = 0; i < iters; ++i) {
        cplx fd = horner(d, z);
        if (fd == cplx{}) break;
        cplx step = horner(c, z) / fd;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        cplx next = z - step;
        if (std::abs(horner(c, next)) > std::abs(horner(c, z))) break;
        z = next;
    }
    return z;
}

std::vector<double> r_coeffs(const ProportionalParams& pp, double c) {
    return {-pp.a, c + pp.a, pp.b - c - 1, -pp.b};
}

// Coefficients of Q in powers of z.
std::vector<double> q_in_z(const QuarticCoefficients& q) {
    // expand sum p_k (z + 1/2)^k
    std::vector<double> pk{q.p0, q.p1, q.p2, q.p3, q.p4};
    std::vector<double> out(5, 0.0);
    for (int k = 0; k <= 4; ++k) {
        double binom = 1;
        for (int j = 0; j <= k; ++j) {
            out[static_cast<std::size_t>(j)] += pk[static_cast<std::size_t>(k)] * binom * std::pow(0.5, k - j);
            binom = binom * (k - j) / (j + 1);
        }
    }
    return out;
}

} // namespace

void ProportionalParams::validate() const {
    if (!(a > 0) || !(b > 0) || !std::isfinite(a) || !std::isfinite(b))
        throw UsageError("proportional parameters a, b must be positive");
}

double QuarticCoefficients::eval(double z) const {
    double y = z + 0.5;
    return (((p4 * y + p3) * y + p2) * y + p1) * y + p0;
}

double QuarticCoefficients::derivative(double z) const {
    double y = z + 0.5;
    return ((4 * p4 * y + 3 * p3) * y + 2 * p2) * y + p1;
}

QuarticCoefficients q_coefficients(const ProportionalParams& pp) {
    pp.validate();
    const double a = pp.a, b = pp.b;
    QuarticCoefficients q;
    q.p0 = 1 - 12 * (a + b) + 4 * (a * a + b * b) + 184 * a * b - 256 * a * b * (a + b) +
           64 * a * b * (a - b) * (a - b);
    q.p1 = 8 * (b - a) * (7 - 2 * a - 2 * b + 16 * a * b);
    q.p2 = 8 * (2 * (a + b) * (a + b) - 10 * (a + b) - 1);
    q.p3 = 32 * (b - a);
    q.p4 = 16;
    return q;
}

RealRoots q_real_roots(const ProportionalParams& pp) {
    const auto q = q_coefficients(pp);
    const auto cz = q_in_z(q);
    if (!std::all_of(cz.begin(), cz.end(), [](double v) { return std::isfinite(v); }))
        throw NumericalFailure("quartic coefficients overflow");
    auto roots = poly_roots(cz);
    const auto dz = derivative(cz);
    RealRoots out;
    std::vector<bool> used(roots.size(), false);
    std::vector<std::pair<double, int>> found;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        std::size_t partner = roots.size();
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (!used[j] && std::abs(roots[i] - roots[j]) < kClusterTol) partner = j;
        if (partner < roots.size()) {
            used[i] = used[partner] = true;
            cplx z = newton(dz, 0.5 * (roots[i] + roots[partner]));
            if (std::abs(z.imag()) <= kImagTol * (1 + std::abs(z))) found.push_back({z.real(), 2});
            continue;
        }
        used[i] = true;
        cplx z = newton(cz, roots[i]);
        if (std::abs(z.imag()) <= kImagTol * (1 + std::abs(z))) found.push_back({z.real(), 1});
    }
    std::sort(found.begin(), found.end());
    for (auto& [r, m] : found) {
        out.roots.push_back(r);
        out.multiplicity.push_back(m);
    }
    return out;
}

std::array<cplx, 3> r_roots(const ProportionalParams& pp, double c) {
    if (pp.b == 0.0) throw UsageError("r_roots requires b != 0");
    const auto co = r_coeffs(pp, c);
    auto roots = poly_roots(co);
    std::array<cplx, 3> out;
    for (int i = 0; i < 3; ++i) {
        cplx z = newton(co, roots[static_cast<std::size_t>(i)]);
        // keep real roots exactly real when the imaginary part is noise
        if (std::abs(z.imag()) <= 1e-14 * (1 + std::abs(z))) z = {z.real(), 0.0};
        out[static_cast<std::size_t>(i)] = z;
    }
    std::sort(out.begin(), out.end(), [](cplx x, cplx y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    return out;
}

cplx r_eval(const ProportionalParams& pp, double c, cplx z) { return horner(r_coeffs(pp, c), z); }

double r_discriminant(const ProportionalParams& pp, double c) {
    const auto k = r_coeffs(pp, c);
    const double a0 = k[0], a1 = k[1], a2 = k[2], a3 = k[3];
    return 18 * a3 * a2 * a1 * a0 - 4 * a2 * a2 * a2 * a0 + a2 * a2 * a1 * a1 - 4 * a3 * a1 * a1 * a1 -
           27 * a3 * a3 * a0 * a0;
}

double discriminant_identity_residual(const ProportionalParams& pp, double c) {
    const double q = q_coefficients(pp).eval(c);
    return std::abs(q - 16 * r_discriminant(pp, c)) / (1 + std::abs(q));
}

cplx z_plus_proportional(const ProportionalParams& pp, double c) {
    pp.validate();
    const auto q = q_coefficients(pp);
    if (std::abs(q.eval(c)) <= 1e-12 * (1 + std::abs(q.p0) + std::abs(q.p2)))
        throw RegionError("z_plus: Q_{a,b}(c) = 0, c is an edge point");
    for (const cplx& z : r_roots(pp, c))
        if (z.imag() > kImagTol * (1 + std::abs(z))) return z;
    throw RegionError("z_plus: all roots of R are real; c is not in a bulk interval (use classify_region)");
}

cplx z_plus_fixed_gamma(double c, double gamma_plus) {
    if (!(gamma_plus > 0)) throw UsageError("gamma_plus must be positive");
    return (c + std::sqrt(cplx(c * c - 4 * gamma_plus, 0.0))) / 2.0;
}

const char* RegionLabel::name(Kind k) {
    switch (k) {
    case Kind::Void: return "void";
    case Kind::Saturated: return "saturated";
    case Kind::Bulk: return "bulk";
    }
    return "?";
}

RegionLabel classify_region(const ProportionalParams& pp, double c) {
    const auto rr = q_real_roots(pp);
    for (double q : rr.roots)
        if (std::abs(c - q) <= 1e-9) throw DomainError("classify_region: c lies on a root of Q (edge point)");
    const auto& q = rr.roots;
    const int m = rr.m();
    RegionLabel out;
    auto bulk = [&]() {
        out.kind = RegionLabel::Kind::Bulk;
        out.z_plus = z_plus_proportional(pp, c);
        return out;
    };
    if (m == 4) {
        if (c < q[0] || c > q[3]) return out;
        if (c >= q[1] && c <= q[2]) {
            out.kind = RegionLabel::Kind::Saturated;
            return out;
        }
        return bulk();
    }
    if (m < 2) throw NumericalFailure("classify_region: fewer than two real roots of Q");
    if (c < q.front() || c > q.back()) return out;
    return bulk();
}

double density_limit(const RegionLabel& region) {
    switch (region.kind) {
    case RegionLabel::Kind::Void: return 0.0;
    case RegionLabel::Kind::Saturated: return 1.0;
    case RegionLabel::Kind::Bulk: return std::arg(region.z_plus) / std::numbers::pi;
    }
    return 0.0;
}

double density_limit_fixed(double beta, double gamma_plus) {
    if (!(gamma_plus > 0)) throw UsageError("gamma_plus must be positive");
    double r = beta / (2 * std::sqrt(gamma_plus));
    return std::acos(std::clamp(r, -1.0, 1.0)) / std::numbers::pi;
}

PearceyData double_root_family(double z0) {
    if (!(z0 < 0)) throw DomainError("double_root_family requires z0 < 0");
    PearceyData d;
    d.z0 = z0;
    const double m3 = std::pow(z0 - 1, 3);
    d.a = z0 * z0 * z0 / m3;
    d.b = -1 / m3;
    d.c0 = -z0 * z0 * (z0 - 3) / m3;
    d.zeta = (z0 - 1) / std::sqrt(std::abs(z0));
    return d;
}

double EdgeData::cbrt_p3() const { return std::cbrt(p3); }

double EdgeData::tau(double t) const {
    const double c = cbrt_p3();
    return t / (2 * c * c * (z1 - 1) * (z1 - 1) * z1);
}

double EdgeData::sigma(double t, double s) const {
    const double tt = tau(t);
    return tt * tt - s / (z1 * cbrt_p3());
}

EdgeData airy_constants(const ProportionalParams& pp, double c1) {
    pp.validate();
    const auto q = q_coefficients(pp);
    const double scale = 1 + std::abs(q.p0) + std::abs(q.p1) + std::abs(q.p2) + std::abs(q.p3) + 16;
    if (std::abs(q.eval(c1)) > 1e-9 * scale) throw DomainError("airy_constants: c1 is not a root of Q");
    if (std::abs(q.derivative(c1)) <= 1e-6 * scale)
        throw DomainError("airy_constants: c1 is a multiple root of Q");
    const auto co = r_coeffs(pp, c1);
    const auto roots = r_roots(pp, c1);
    double best = INFINITY;
    cplx pair{};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            double d = std::abs(roots[static_cast<std::size_t>(i)] - roots[static_cast<std::size_t>(j)]);
            if (d < best) {
                best = d;
                pair = 0.5 * (roots[static_cast<std::size_t>(i)] + roots[static_cast<std::size_t>(j)]);
            }
        }
    if (best > kClusterTol) throw DomainError("airy_constants: R has no double root at c1");
    cplx z = newton(derivative(co), pair);
    EdgeData e;
    e.a = pp.a;
    e.b = pp.b;
    e.c1 = c1;
    e.z1 = z.real();
    const double z1 = e.z1;
    e.p3 = -1 / std::pow(1 - z1, 3) - 3 * pp.a / std::pow(z1, 4) + c1 / std::pow(z1, 3);
    return e;
}

cplx phase_A(cplx z, double c, double d, const ProportionalParams& pp) {
    if (z == cplx(0.0, 0.0) || z == cplx(1.0, 0.0)) throw DomainError("phase_A: z must avoid 0 and 1");
    cplx one_minus{1.0 - z.real(), -z.imag()};
    if (z.imag() == 0.0) one_minus = {1.0 - z.real(), 0.0};
    return pp.a / z + pp.b * z + c * std::log(z) + d * std::log(one_minus);
}

} // namespace plancherel

#include "plancherel/limitkernels.hpp"
#include "plancherel/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace plancherel {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};
constexpr int kArcVertices = 33;
// Per-dimension node cap for the tensor rules of double integrals.
constexpr int kMaxDoubleNodes = 4096;

LimitValue from(const QuadResult& r, cplx factor = 1.0) {
    cplx v = r.value * factor;
    return {v.real(), v.imag(), r.converged, r.nodes_used};
}

double checked(const LimitValue& v, const char* what) {
    if (!v.converged) throw NumericalFailure(std::string(what) + ": quadrature did not converge", v.value);
    if (std::abs(v.imag) > 1e-8 * (1 + std::abs(v.value)))
        throw NumericalFailure(std::string(what) + ": value is not real", v.value);
    return v.value;
}

QuadratureSettings double_settings(const LimitSettings& st) {
    QuadratureSettings q = st.quad;
    q.max_nodes = std::min(q.max_nodes, kMaxDoubleNodes);
    q.initial_nodes = std::min(q.initial_nodes, q.max_nodes);
    return q;
}

// Polyline with vertices on the arc rho e^{i theta}, theta from th0 to th1.
// The integrands below are analytic between the arc and its chords.
PathContour arc(double rho, double th0, double th1) {
    PathContour p;
    for (int k = 0; k < kArcVertices; ++k)
        p.vertices.push_back(std::polar(rho, th0 + (th1 - th0) * k / (kArcVertices - 1)));
    p.segment_nodes.assign(kArcVertices - 1, 16);
    return p;
}

// Arc from conj(z) to z through +|z| (right) or -|z| (left).
PathContour conj_arc(cplx z, bool right) {
    double phi = std::arg(z);
    return right ? arc(std::abs(z), -phi, phi) : arc(std::abs(z), -phi, phi - 2 * kPi);
}

// Saddle-adapted contour for Ai: vertex at i sqrt(x) for x >= 0, the two real
// saddles +-sqrt(-x) otherwise; rays leave along e^{5 pi i/6} and e^{pi i/6}.
PathContour airy_contour(double x) {
    PathContour p;
    if (x >= 0) {
        p.vertices = {cplx(0.0, std::sqrt(x))};
    } else {
        double r = std::sqrt(-x);
        p.vertices = {cplx(-r, 0.0), cplx(r, 0.0)};
        p.segment_nodes = {0, std::max(64, static_cast<int>(16 * r * r)), 0};
    }
    p.head = Ray{std::polar(1.0, 5 * kPi / 6), 3.0};
    p.tail = Ray{std::polar(1.0, kPi / 6), 3.0};
    return p;
}

} // namespace

void SineParams::validate() const {
    if (!(z_plus.imag() > 0)) throw DomainError("sine kernel requires Im(z_plus) > 0");
}

LimitValue kernel_J_eval(double s, int x, double t, int y, const LimitSettings& st) {
    if (!(s >= 0) || !(t >= 0)) throw UsageError("kernel_J requires s, t >= 0");
    // The w-circle encloses the u-circle iff s <= t.
    const bool w_outer = t >= s;
    CircleContour cu{{0.0, 0.0}, w_outer ? 0.5 : 2.0};
    CircleContour cw{{0.0, 0.0}, w_outer ? 2.0 : 0.5};
    auto F = [&](cplx u, cplx w) {
        return std::exp(1.0 / u - t * u - 1.0 / w + s * w) * std::pow(u, y) / std::pow(w, x + 1) / (w - u);
    };
    QuadratureSettings q = double_settings(st);
    QuadResult r = double_circle_integral(F, cu, cw, q);
    return from(r);
}

double kernel_J(double s, int x, double t, int y, const LimitSettings& st) {
    return checked(kernel_J_eval(s, x, t, y, st), "kernel_J");
}

LimitValue sine_S_eval(const SineParams& p, double dt, int dx, const LimitSettings& st) {
    p.validate();
    auto f = [&](cplx u) { return std::pow(u, dx - 1) * std::exp(-dt * u); };
    return from(path_integral(f, conj_arc(p.z_plus, dt >= 0), st.quad));
}

double sine_S(const SineParams& p, double dt, int dx, const LimitSettings& st) {
    return checked(sine_S_eval(p, dt, dx, st), "sine_S");
}

LimitValue beta_B_eval(cplx z, int k, int l, const LimitSettings& st) {
    if (!(z.imag() > 0)) throw DomainError("beta kernel requires Im(z) > 0");
    // For k >= 0 the only singularity is u = 0, so crossing (0, 1) or (1, inf) is equivalent.
    auto f = [&](cplx u) { return std::pow(1.0 - u, k) * std::pow(u, -l - 1); };
    return from(path_integral(f, conj_arc(z, k >= 0), st.quad));
}

double beta_B(cplx z, int k, int l, const LimitSettings& st) {
    return checked(beta_B_eval(z, k, l, st), "beta_B");
}

LimitValue airy_Ai_eval(double x, const LimitSettings& st) {
    auto f = [x](cplx s) { return std::exp(kI * (s * s * s / 3.0 + x * s)); };
    // (1/2 pi) int = i * (1/2 pi i) int
    return from(path_integral(f, airy_contour(x), st.quad), kI);
}

double airy_Ai(double x, const LimitSettings& st) { return checked(airy_Ai_eval(x, st), "airy_Ai"); }

double airy_Ai_prime(double x, const LimitSettings& st) {
    auto f = [x](cplx s) { return kI * s * std::exp(kI * (s * s * s / 3.0 + x * s)); };
    return checked(from(path_integral(f, airy_contour(x), st.quad), kI), "airy_Ai_prime");
}

LimitValue airy_ext_integral_eval(const AiryArg& a1, const AiryArg& a2, const LimitSettings& st) {
    const double d = a1.tau - a2.tau;
    LimitSettings inner = st;
    auto f = [&](cplx lam) {
        double l = lam.real();
        return cplx(std::exp(-l * d) * airy_Ai(a1.sigma + l, inner) * airy_Ai(a2.sigma + l, inner), 0.0);
    };
    PathContour p;
    p.vertices = {cplx(0.0, 0.0)};
    if (d >= 0)
        p.tail = Ray{{1.0, 0.0}, 4.0};
    else
        p.head = Ray{{-1.0, 0.0}, 4.0};
    QuadratureSettings q = st.quad;
    q.rel_tol = std::max(q.rel_tol, 1e-10);
    // path_integral divides by 2 pi i; the tau1 < tau2 branch carries a minus sign.
    return from(path_integral(f, p, q), cplx(0.0, 2 * kPi) * (d >= 0 ? 1.0 : -1.0));
}

double airy_ext_integral(const AiryArg& a1, const AiryArg& a2, const LimitSettings& st) {
    return checked(airy_ext_integral_eval(a1, a2, st), "airy_ext_integral");
}

double airy_gaussian_term(const AiryArg& a1, const AiryArg& a2) {
    const double d = a2.tau - a1.tau;
    if (!(d > 0)) return 0.0;
    const double ds = a1.sigma - a2.sigma;
    return std::exp(-ds * ds / (4 * d) - d * (a1.sigma + a2.sigma) / 2 + d * d * d / 12) / std::sqrt(4 * kPi * d);
}

LimitValue airy_ext_double_eval(const AiryArg& a1, const AiryArg& a2, const LimitSettings& st) {
    const double t1 = a1.tau, t2 = a2.tau, s1 = a1.sigma, s2 = a2.sigma;
    const double c0 = t1 * s1 - t2 * s2 - t1 * t1 * t1 / 3 + t2 * t2 * t2 / 3;
    auto F = [&](cplx u, cplx w) {
        cplx e = c0 - (s1 - t1 * t1) * u + (s2 - t2 * t2) * w - t1 * u * u + t2 * w * w + (u * u * u - w * w * w) / 3.0;
        return std::exp(e) / (u - w);
    };
    const double delta = st.airy_delta;
    // u: infinity e^{-pi i/3} -> +delta -> infinity e^{pi i/3}; w: infinity e^{4 pi i/3} -> -delta -> infinity e^{2 pi i/3}.
    PathContour pu, pw;
    pu.vertices = {cplx(delta, 0.0)};
    pu.head = Ray{std::polar(1.0, -kPi / 3), 3.0};
    pu.tail = Ray{std::polar(1.0, kPi / 3), 3.0};
    pu.grading = delta / 2;
    pw.vertices = {cplx(-delta, 0.0)};
    pw.head = Ray{std::polar(1.0, 4 * kPi / 3), 3.0};
    pw.tail = Ray{std::polar(1.0, 2 * kPi / 3), 3.0};
    pw.grading = delta / 2;
    LimitValue v = from(double_path_integral(F, pu, pw, double_settings(st)));
    v.value -= airy_gaussian_term(a1, a2);
    return v;
}

double airy_ext_double(const AiryArg& a1, const AiryArg& a2, const LimitSettings& st) {
    return checked(airy_ext_double_eval(a1, a2, st), "airy_ext_double");
}

double pearcey_gaussian_term(const PearceyArg& p1, const PearceyArg& p2) {
    const double d = p1.t - p2.t;
    if (!(d > 0)) return 0.0;
    const double ds = p2.s - p1.s;
    return std::exp(-ds * ds / (2 * d)) / std::sqrt(2 * kPi * d);
}

LimitValue pearcey_P_eval(const PearceyArg& p1, const PearceyArg& p2, const LimitSettings& st) {
    const double delta = st.pearcey_delta;
    if (!(delta > 0)) throw UsageError("pearcey_delta must be positive");
    auto F = [&](cplx u, cplx w) {
        cplx u2 = u * u, w2 = w * w;
        return std::exp(w2 * w2 - u2 * u2 + p1.t * u2 - p2.t * w2 + p1.s * u - p2.s * w) / (u - w);
    };
    // u: -i infinity -> i infinity through 0.
    PathContour pu;
    pu.vertices = {cplx(0.0, 0.0)};
    pu.head = Ray{{0.0, -1.0}, 2.0};
    pu.tail = Ray{{0.0, 1.0}, 2.0};
    pu.grading = delta / 2;
    // w: infinity e^{i pi/4} -> +delta -> infinity e^{-i pi/4}, and
    //    infinity e^{5 i pi/4} -> -delta -> infinity e^{3 i pi/4}.
    PathContour right, left;
    right.vertices = {cplx(delta, 0.0)};
    right.head = Ray{std::polar(1.0, kPi / 4), 2.0};
    right.tail = Ray{std::polar(1.0, -kPi / 4), 2.0};
    right.grading = delta / 2;
    left.vertices = {cplx(-delta, 0.0)};
    left.head = Ray{std::polar(1.0, 5 * kPi / 4), 2.0};
    left.tail = Ray{std::polar(1.0, 3 * kPi / 4), 2.0};
    left.grading = delta / 2;
    const QuadratureSettings q = double_settings(st);
    QuadResult a = double_path_integral(F, pu, right, q);
    QuadResult b = double_path_integral(F, pu, left, q);
    cplx v = a.value + b.value;
    LimitValue out{v.real(), v.imag(), a.converged && b.converged, static_cast<long>(a.nodes_used) + b.nodes_used};
    out.value -= pearcey_gaussian_term(p1, p2);
    return out;
}

double pearcey_P(const PearceyArg& p1, const PearceyArg& p2, const LimitSettings& st) {
    return checked(pearcey_P_eval(p1, p2, st), "pearcey_P");
}

} // namespace plancherel

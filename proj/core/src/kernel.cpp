#include "plancherel/kernel.hpp"
#include "plancherel/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace plancherel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSearchSamples = 65; // samples on the upper half circle
constexpr int kGrid = 20;
constexpr double kKappaFree = 30.0;
constexpr double kKappaWeight = 3.0;
// Per-rule node cap is max_circle_nodes times this; the tensor product is capped separately.
constexpr int kMaxNodeMultiple = 64;
constexpr double kMaxTensorNodes = 1 << 24;

// Peak log-magnitude of one integrand factor. For the u-role this is
// Re(g- z + g+/z + x log z + n log(1-z)); the w-role negates it with x -> x + 1.
struct LogMagnitude {
    double gp, gm, x, n, sign;
    double operator()(cplx z) const {
        double v = gm * z.real() + gp * (z.real() / std::norm(z));
        if (x != 0) v += x * 0.5 * std::log(std::norm(z));
        if (n != 0) v += n * 0.5 * std::log(std::norm(1.0 - z));
        return sign * v;
    }
};

CircleContour circle_through(double left, double right) {
    return {cplx((left + right) / 2, 0.0), (right - left) / 2};
}

double peak_on(const LogMagnitude& lm, const CircleContour& c) {
    double best = -INFINITY;
    auto probe = [&](double theta) {
        double v = lm(c.center + std::polar(c.radius, theta));
        if (std::isnan(v)) v = INFINITY;
        best = std::max(best, v);
    };
    for (int k = 0; k < kSearchSamples; ++k) probe(kPi * k / (kSearchSamples - 1));
    // A wide circle passing close to 0 or 1 has its features on a tiny arc; add
    // geometrically spaced angles around the nearest point.
    for (double s : {0.0, 1.0}) {
        double theta0 = s >= c.center.real() ? 0.0 : kPi;
        double d = std::max(std::abs(std::abs(c.center.real() - s) - c.radius), 1e-300);
        for (double h = d / c.radius; h < 0.5; h *= 2) probe(theta0 == 0.0 ? h : kPi - h);
    }
    return best;
}

// Node-count surrogate: circles passing close to a singular point need many nodes.
double crowding_penalty(const CircleContour& c, std::initializer_list<double> singular) {
    double pen = 0;
    for (double s : singular) {
        double d = std::abs(std::abs(c.center - cplx(s, 0.0)) - c.radius);
        double kappa = c.radius / std::max(d, 1e-300);
        if (kappa > kKappaFree) pen += kKappaWeight * std::log(kappa / kKappaFree);
    }
    return pen;
}

double logistic(double s) { return 1 / (1 + std::exp(-s)); }

struct Box {
    double lo1, hi1, lo2, hi2;
};

// Grid search followed by pattern search on a 2-parameter circle family.
std::pair<double, double> minimize2(const std::function<double(double, double)>& obj, const Box& box) {
    double b1 = 0, b2 = 0, best = INFINITY;
    for (int i = 0; i < kGrid; ++i)
        for (int j = 0; j < kGrid; ++j) {
            double s1 = box.lo1 + (box.hi1 - box.lo1) * i / (kGrid - 1);
            double s2 = box.lo2 + (box.hi2 - box.lo2) * j / (kGrid - 1);
            double v = obj(s1, s2);
            if (v < best) best = v, b1 = s1, b2 = s2;
        }
    double h1 = (box.hi1 - box.lo1) / (kGrid - 1), h2 = (box.hi2 - box.lo2) / (kGrid - 1);
    for (int it = 0; it < 10; ++it) {
        bool moved = true;
        while (moved) {
            moved = false;
            const double cand[4][2] = {{b1 + h1, b2}, {b1 - h1, b2}, {b1, b2 + h2}, {b1, b2 - h2}};
            for (const auto& c : cand) {
                if (c[0] < box.lo1 || c[0] > box.hi1 || c[1] < box.lo2 || c[1] > box.hi2) continue;
                double v = obj(c[0], c[1]);
                if (v < best - 1e-12) best = v, b1 = c[0], b2 = c[1], moved = true;
            }
        }
        h1 /= 2;
        h2 /= 2;
    }
    return {b1, b2};
}

cplx log1p_c(cplx z) {
    double re = 0.5 * std::log1p(2 * z.real() + std::norm(z));
    return {re, std::atan2(z.imag(), 1 + z.real())};
}

cplx expm1_c(cplx z) {
    double s = std::sin(z.imag() / 2);
    return {std::expm1(z.real()) * std::cos(z.imag()) - 2 * s * s, std::exp(z.real()) * std::sin(z.imag())};
}

double log_binom_abs(long a, long k) {
    return std::lgamma(a + 1.0) - std::lgamma(k + 1.0) - std::lgamma(static_cast<double>(a - k) + 1.0);
}

// Residue of z^p (1-z)^q at 0.
SignedLog residue_zero(long p, long q) {
    long m = -p - 1;
    if (m < 0) return {};
    SignedLog b = log_binomial(q, m);
    if (m % 2) b.sign = -b.sign;
    return b;
}

// Residue of z^p (1-z)^q at 1.
SignedLog residue_one(long p, long q) {
    if (q >= 0) return {};
    long k = -q;
    SignedLog b = log_binomial(p, k - 1);
    if (k % 2) b.sign = -b.sign;
    return b;
}

bool encloses(const CircleContour& c, cplx z) { return std::abs(z - c.center) < c.radius; }

bool disk_contains(const CircleContour& outer, const CircleContour& inner) {
    return std::abs(outer.center - inner.center) + inner.radius < outer.radius;
}

bool crosses(const CircleContour& a, const CircleContour& b) {
    double d = std::abs(a.center - b.center);
    double margin = 0.02 * std::min(a.radius, b.radius);
    return d < a.radius + b.radius + margin && d > std::abs(a.radius - b.radius) - margin;
}

struct Nodes {
    std::vector<cplx> z, dz, logv;
    double peak = -INFINITY;
};

Nodes circle_nodes(const CircleContour& c, int m, const std::function<cplx(cplx)>& logf) {
    Nodes nd;
    nd.z.resize(static_cast<std::size_t>(m));
    nd.dz.resize(static_cast<std::size_t>(m));
    nd.logv.resize(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        cplx e = std::polar(c.radius, 2 * kPi * k / m);
        auto i = static_cast<std::size_t>(k);
        nd.z[i] = c.center + e;
        nd.dz[i] = e / static_cast<double>(m);
        nd.logv[i] = logf(nd.z[i]);
        nd.peak = std::max(nd.peak, nd.logv[i].real());
    }
    return nd;
}

} // namespace

SignedLog log_binomial(long a, long k) {
    if (k < 0) return {};
    if (a >= 0) {
        if (k > a) return {};
        return {log_binom_abs(a, k), 1};
    }
    // binom(a, k) = (-1)^k binom(k - a - 1, k)
    return {log_binom_abs(k - a - 1, k), (k % 2) ? -1 : 1};
}

void SpacetimePoint::validate() const {
    if (n < 1) throw UsageError("spacetime point level must be >= 1");
}

void KernelSettings::validate() const {
    quad.validate();
    if (radius_policy == RadiusPolicy::Fixed &&
        !(u_radius > 0 && u_radius < 1 && w_radius > 0 && u_radius + w_radius < 1))
        throw UsageError("kernel radii must satisfy 0 < u_radius, 0 < w_radius, u_radius + w_radius < 1");
    if (max_circle_nodes < quad.initial_nodes) throw UsageError("max_circle_nodes below initial_nodes");
}

KernelEvaluator::KernelEvaluator(const PlancherelParams& prm, const KernelSettings& st) : prm_(prm), st_(st) {
    prm_.validate();
    st_.validate();
}

const ContourCycle& KernelEvaluator::u_contour(const SpacetimePoint& p) {
    auto key = std::make_pair(p.n, p.x);
    auto it = ucache_.find(key);
    if (it != ucache_.end()) return it->second;
    LogMagnitude lm{prm_.gamma_plus, prm_.gamma_minus, static_cast<double>(p.x), static_cast<double>(p.n), 1.0};
    ContourCycle cyc;
    CircleContour c{{0.0, 0.0}, st_.u_radius};
    if (st_.radius_policy == RadiusPolicy::Auto) {
        auto mk = [](double s1, double s2) { return circle_through(-std::exp(s1), std::exp(s2)); };
        auto obj = [&](double s1, double s2) {
            auto cc = mk(s1, s2);
            return peak_on(lm, cc) + crowding_penalty(cc, {0.0, 1.0});
        };
        auto [s1, s2] = minimize2(obj, {-10, 7, -10, 7});
        c = mk(s1, s2);
    }
    cyc.circles.push_back({c, 1});
    cyc.peak = peak_on(lm, c);
    return ucache_.emplace(key, cyc).first->second;
}

const ContourCycle& KernelEvaluator::w_contour(const SpacetimePoint& p) {
    auto key = std::make_pair(p.n, p.x);
    auto it = wcache_.find(key);
    if (it != wcache_.end()) return it->second;
    LogMagnitude lm{prm_.gamma_plus, prm_.gamma_minus, static_cast<double>(p.x) + 1, static_cast<double>(p.n),
                    -1.0};
    ContourCycle cyc;
    if (st_.radius_policy == RadiusPolicy::Fixed) {
        CircleContour c{{1.0, 0.0}, st_.w_radius};
        cyc.circles.push_back({c, 1});
        cyc.peak = peak_on(lm, c);
        return wcache_.emplace(key, cyc).first->second;
    }
    auto score = [&](const CircleContour& c) { return peak_on(lm, c) + crowding_penalty(c, {0.0, 1.0}); };
    // (A) one circle crossing the real axis in (0,1) and (1,inf)
    auto mk_a = [](double s1, double s2) { return circle_through(logistic(s1), 1 + std::exp(s2)); };
    auto [a1, a2] = minimize2([&](double s1, double s2) { return score(mk_a(s1, s2)); }, {-10, 10, -10, 6});
    CircleContour ca = mk_a(a1, a2);
    double ja = score(ca);
    // (B) outer circle around 0 and 1 minus inner circle around 0 only
    auto mk_o = [](double s1, double s2) { return circle_through(-std::exp(s1), 1 + std::exp(s2)); };
    auto mk_i = [](double s1, double s2) { return circle_through(-std::exp(s1), logistic(s2)); };
    auto [o1, o2] = minimize2([&](double s1, double s2) { return score(mk_o(s1, s2)); }, {-10, 7, -10, 6});
    auto [i1, i2] = minimize2([&](double s1, double s2) { return score(mk_i(s1, s2)); }, {-10, 7, -10, 10});
    CircleContour co = mk_o(o1, o2), ci = mk_i(i1, i2);
    double jb = std::max(score(co), score(ci));
    if (jb < ja - 0.5) {
        cyc.circles.push_back({co, 1});
        cyc.circles.push_back({ci, -1});
        cyc.peak = std::max(peak_on(lm, co), peak_on(lm, ci));
    } else {
        cyc.circles.push_back({ca, 1});
        cyc.peak = peak_on(lm, ca);
    }
    return wcache_.emplace(key, cyc).first->second;
}

double KernelEvaluator::gauge(const SpacetimePoint& p) { return u_contour(p).peak; }

// (1/2 pi i)^2 double integral of f(u) g(w) / (u - w) over the original contours,
// times exp(log_shift), evaluated on the cached contours.
//
// With S(U, C) = (1/2 pi i)^2 oint_U oint_C f(u) [g(w) - g(u)] / (u - w), which has no
// singularity on u = w, the integral equals sum_C sign_C S(U, C) - ind_U(1) Res_1 phi,
// where phi = f g = z^(x1-x2-1) (1-z)^(n1-n2). When U and C do not cross, S(U, C) is the
// plain double integral plus oint_U phi if the disk of C contains U.
KernelValue KernelEvaluator::double_integral(const SpacetimePoint& p1, const SpacetimePoint& p2,
                                             double log_shift) {
    const ContourCycle& ucyc = u_contour(p1);
    const ContourCycle& wcyc = w_contour(p2);
    const CircleContour& U = ucyc.circles.front().first;
    const double gp = prm_.gamma_plus, gm = prm_.gamma_minus;
    const double x1 = p1.x, n1 = p1.n, x2 = p2.x, n2 = p2.n;
    const long pe = static_cast<long>(p1.x) - p2.x - 1, qe = static_cast<long>(p1.n) - p2.n;

    auto logf = [&](cplx u) {
        cplx v = gm * u + gp / u;
        if (x1 != 0) v += x1 * std::log(u);
        if (n1 != 0) v += n1 * std::log(1.0 - u);
        return v;
    };
    auto logg = [&](cplx w) {
        cplx v = gm * w + gp / w;
        if (x2 + 1 != 0) v += (x2 + 1) * std::log(w);
        if (n2 != 0) v += n2 * std::log(1.0 - w);
        return -v;
    };
    auto logphi = [&](cplx z) {
        cplx v{};
        if (pe != 0) v += static_cast<double>(pe) * std::log(z);
        if (qe != 0) v += static_cast<double>(qe) * std::log(1.0 - z);
        return v;
    };

    const bool u_has_one = encloses(U, cplx(1.0, 0.0));
    double closed_form = 0.0;
    const SignedLog r0 = residue_zero(pe, qe), r1 = residue_one(pe, qe);
    if (u_has_one) closed_form -= r1.value(log_shift);
    std::vector<bool> subtract(wcyc.circles.size(), false);
    for (std::size_t c = 0; c < wcyc.circles.size(); ++c) {
        const auto& [C, sign] = wcyc.circles[c];
        if (crosses(U, C)) {
            subtract[c] = true;
        } else if (disk_contains(C, U)) {
            closed_form += sign * (r0.value(log_shift) + (u_has_one ? r1.value(log_shift) : 0.0));
        }
    }

    struct Estimate {
        cplx total;
        double scale = 0;
        bool finite() const { return std::isfinite(total.real()) && std::isfinite(total.imag()); }
    };
    auto evaluate = [&](int mu, int mw) {
        Nodes un = circle_nodes(U, mu, logf);
        std::vector<cplx> a(un.z.size()), phi(un.z.size());
        for (std::size_t j = 0; j < un.z.size(); ++j) {
            a[j] = std::exp(un.logv[j] - un.peak) * un.dz[j];
            phi[j] = std::exp(logphi(un.z[j]) + log_shift) * un.dz[j];
        }
        cplx total = closed_form;
        double scale = std::abs(closed_form);
        for (std::size_t c = 0; c < wcyc.circles.size(); ++c) {
            const auto& [C, sign] = wcyc.circles[c];
            Nodes wn = circle_nodes(C, mw, logg);
            const cplx amp = std::exp(cplx(un.peak + wn.peak + log_shift, 0.0));
            std::vector<cplx> b(wn.z.size());
            for (std::size_t k = 0; k < wn.z.size(); ++k) b[k] = std::exp(wn.logv[k] - wn.peak) * wn.dz[k] * amp;
            cplx sum{};
            double abs_sum = 0;
            if (!subtract[c]) {
                for (std::size_t j = 0; j < un.z.size(); ++j) {
                    cplx inner{};
                    double inner_abs = 0;
                    for (std::size_t k = 0; k < wn.z.size(); ++k) {
                        cplx t = b[k] / (un.z[j] - wn.z[k]);
                        inner += t;
                        inner_abs += std::abs(t);
                    }
                    sum += a[j] * inner;
                    abs_sum += std::abs(a[j]) * inner_abs;
                }
            } else {
                for (std::size_t j = 0; j < un.z.size(); ++j) {
                    const cplx u = un.z[j];
                    const double near = 0.25 * std::min(std::abs(u), std::abs(1.0 - u));
                    for (std::size_t k = 0; k < wn.z.size(); ++k) {
                        const cplx w = wn.z[k];
                        const cplx diff = u - w;
                        cplx t;
                        if (std::abs(diff) < near) {
                            cplx d = -(gm * (w - u) + gp * diff / (u * w) + (x2 + 1) * log1p_c((w - u) / u) +
                                       n2 * log1p_c(diff / (1.0 - u)));
                            cplx em = d.real() > 1 ? std::exp(d) - 1.0 : expm1_c(d);
                            t = phi[j] * wn.dz[k] * em / diff;
                        } else {
                            t = (a[j] * b[k] - phi[j] * wn.dz[k]) / diff;
                        }
                        sum += t;
                        abs_sum += std::abs(t);
                    }
                }
            }
            total += static_cast<double>(sign) * sum;
            scale += abs_sum;
        }
        return Estimate{total, scale};
    };

    // Anisotropic doubling: the u- and w-rules are refined separately, and only
    // the rule whose refinement still moves the value is doubled. Circles that
    // pass close to 0 or 1 need many more nodes than their partner.
    KernelValue out;
    const int cap = std::min(st_.max_circle_nodes, st_.quad.max_nodes) * kMaxNodeMultiple;
    int mu = st_.quad.initial_nodes, mw = st_.quad.initial_nodes;
    Estimate base = evaluate(mu, mw);
    auto record = [&](const Estimate& e) {
        out.value = e.total.real();
        out.imag = e.total.imag();
        out.scale = e.scale;
        out.nodes = std::max(mu, mw);
    };
    record(base);
    while (base.finite() && 2 * mu <= cap && 2 * mw <= cap && static_cast<double>(mu) * mw <= kMaxTensorNodes) {
        const Estimate fu = evaluate(2 * mu, mw), fw = evaluate(mu, 2 * mw);
        const double tol = st_.quad.rel_tol * std::max({std::abs(base.total), base.scale, fu.scale, fw.scale});
        const bool u_ok = std::abs(fu.total - base.total) <= tol, w_ok = std::abs(fw.total - base.total) <= tol;
        if (u_ok && w_ok) {
            // each refinement removes the error of its own rule; combine both
            mu *= 2;
            mw *= 2;
            record(Estimate{fu.total + fw.total - base.total, std::max(fu.scale, fw.scale)});
            out.converged = fu.finite() && fw.finite();
            return out;
        }
        if (!u_ok && !w_ok) {
            mu *= 2;
            mw *= 2;
            base = evaluate(mu, mw);
        } else if (!u_ok) {
            mu *= 2;
            base = fu;
        } else {
            mw *= 2;
            base = fw;
        }
        record(base);
    }
    out.converged = false;
    return out;
}

KernelValue KernelEvaluator::eval_raw(const SpacetimePoint& p1, const SpacetimePoint& p2, KernelKind kind,
                                      double log_shift) {
    p1.validate();
    p2.validate();
    KernelValue v = double_integral(p1, p2, log_shift);
    const long dn = static_cast<long>(p2.n) - p1.n, dx = static_cast<long>(p2.x) - p1.x;
    // coefficient of z^dx in (1 - z)^(-dn), dn >= 0
    auto zcoef = [&]() -> double {
        if (dx < 0) return 0.0;
        if (dn == 0) return dx == 0 ? std::exp(log_shift) : 0.0;
        return log_binomial(dn - 1 + dx, dx).value(log_shift);
    };
    if (kind == KernelKind::K) {
        if (dn > 0) v.value -= zcoef();
    } else {
        v.value = -v.value;
        v.imag = -v.imag;
        if (dn >= 0) v.value += zcoef();
    }
    return v;
}

double KernelEvaluator::eval(const SpacetimePoint& p1, const SpacetimePoint& p2, KernelKind kind,
                             double log_shift) {
    KernelValue v = eval_raw(p1, p2, kind, log_shift);
    if (!v.converged) throw NumericalFailure("kernel: contour quadrature did not converge", v.value);
    if (std::abs(v.imag) > 1e-8 * (1 + std::abs(v.value)))
        throw NumericalFailure("kernel: imaginary part check failed", v.value);
    return v.value;
}

std::vector<std::vector<double>> KernelEvaluator::matrix(const std::vector<SpacetimePoint>& pts, KernelKind kind,
                                                         bool use_gauge) {
    const std::size_t k = pts.size();
    std::vector<double> g(k, 0.0);
    if (use_gauge)
        for (std::size_t i = 0; i < k; ++i) g[i] = gauge(pts[i]);
    std::vector<std::vector<double>> m(k, std::vector<double>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m[i][j] = eval(pts[i], pts[j], kind, g[j] - g[i]);
    return m;
}

double determinant(const std::vector<std::vector<double>>& m) {
    const int k = static_cast<int>(m.size());
    if (k == 0) return 1.0;
    Eigen::MatrixXd a(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) a(i, j) = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return a.partialPivLu().determinant();
}

double kernel_K(const SpacetimePoint& p1, const SpacetimePoint& p2, const PlancherelParams& prm,
                const KernelSettings& st) {
    KernelEvaluator ev(prm, st);
    return ev.eval(p1, p2, KernelKind::K);
}

double kernel_K_delta(const SpacetimePoint& p1, const SpacetimePoint& p2, const PlancherelParams& prm,
                      const KernelSettings& st) {
    KernelEvaluator ev(prm, st);
    return ev.eval(p1, p2, KernelKind::KDelta);
}

double single_term(const SpacetimePoint& p1, const SpacetimePoint& p2) {
    if (p1.n >= p2.n) throw UsageError("single_term requires n1 < n2");
    const long dn = static_cast<long>(p2.n) - p1.n, dx = static_cast<long>(p2.x) - p1.x;
    if (dx < 0) return 0.0;
    return -log_binomial(dn - 1 + dx, dx).value();
}

double corr_det(KernelEvaluator& ev, const std::vector<SpacetimePoint>& points, KernelKind which,
                bool use_gauge) {
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j]) throw UsageError("corr_det: points must be distinct");
    return determinant(ev.matrix(points, which, use_gauge));
}

double corr_det(const std::vector<SpacetimePoint>& points, const PlancherelParams& prm, const KernelSettings& st,
                KernelKind which, bool use_gauge) {
    KernelEvaluator ev(prm, st);
    return corr_det(ev, points, which, use_gauge);
}

double swap_symmetry_residual(const SpacetimePoint& p1, const SpacetimePoint& p2, const PlancherelParams& prm,
                              const KernelSettings& st) {
    KernelEvaluator ev(prm, st), evs(prm.swapped(), st);
    SpacetimePoint q1{p1.n, -p1.x - p1.n - 1}, q2{p2.n, -p2.x - p2.n - 1};
    double lhs = ev.eval(q1, q2, KernelKind::K) * (((p1.n - p2.n) % 2) ? -1.0 : 1.0);
    double rhs = evs.eval(p1, p2, KernelKind::K);
    return std::abs(lhs - rhs);
}

} // namespace plancherel

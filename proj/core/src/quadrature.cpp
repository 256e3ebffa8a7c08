#include "plancherel/quadrature.hpp"
#include "plancherel/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace plancherel {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kTwoPiI{0.0, 2.0 * kPi};
constexpr int kPanelOrder = 16;
constexpr int kMaxRayDoublings = 12;
constexpr int kMaxTensorNodes = 8192;

bool accept(cplx prev, cplx cur, double scale, double tol) {
    return std::abs(cur - prev) <= tol * std::max(std::abs(cur), scale);
}

struct Segment {
    cplx a, b;
    double grade_a = 0.0; // first panel length at a (0: none)
    double grade_b = 0.0;
    int base_panels = 4;
};

// Breakpoints in [0, len] with geometric refinement towards graded ends.
std::vector<double> breakpoints(double len, double ga, double gb, int base) {
    std::vector<double> lo{0.0}, hi{len};
    double half = len / 2;
    if (ga > 0)
        for (double d = ga; d < half; d *= 2) lo.push_back(d);
    if (gb > 0)
        for (double d = gb; d < half; d *= 2) hi.push_back(len - d);
    double start = lo.back(), stop = hi.back();
    std::vector<double> out = lo;
    int mid = std::max(1, static_cast<int>(std::ceil(base * (stop - start) / len)));
    for (int k = 1; k < mid; ++k) out.push_back(start + (stop - start) * k / mid);
    for (auto it = hi.rbegin(); it != hi.rend(); ++it) out.push_back(*it);
    return out;
}

std::vector<Segment> segments_of(const PathContour& p) {
    if (p.vertices.empty() || (p.vertices.size() < 2 && !p.head && !p.tail))
        throw UsageError("path contour needs at least two vertices or a ray");
    std::vector<Segment> segs;
    const double g = p.grading;
    auto nodes_for = [&](std::size_t i) {
        if (i < p.segment_nodes.size() && p.segment_nodes[i] > 0)
            return std::max(1, p.segment_nodes[i] / kPanelOrder);
        return 4;
    };
    std::size_t idx = 0;
    if (p.head) {
        cplx far = p.vertices.front() + p.head->direction / std::abs(p.head->direction) * p.head->cutoff;
        segs.push_back({far, p.vertices.front(), 0.0, g, nodes_for(idx++)});
    }
    for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i)
        segs.push_back({p.vertices[i], p.vertices[i + 1], g, g, nodes_for(idx++)});
    if (p.tail) {
        cplx far = p.vertices.back() + p.tail->direction / std::abs(p.tail->direction) * p.tail->cutoff;
        segs.push_back({p.vertices.back(), far, g, 0.0, nodes_for(idx++)});
    }
    return segs;
}

QuadResult fail_or(QuadResult r, bool ok) {
    r.converged = ok;
    return r;
}

} // namespace

void QuadratureSettings::validate() const {
    if (initial_nodes < 1 || max_nodes < initial_nodes || !(rel_tol > 0))
        throw UsageError("invalid quadrature settings");
}

const std::vector<std::pair<double, double>>& gauss_legendre(int order) {
    static std::mutex mu;
    static std::map<int, std::vector<std::pair<double, double>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
    std::vector<std::pair<double, double>> nw(static_cast<std::size_t>(order));
    for (int i = 0; i < order; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= order; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (order == 1) p0 = 1, p1 = x;
            dp = order * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1, p1 = x;
        for (int k = 2; k <= order; ++k) {
            double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = order * (x * p1 - p0) / (x * x - 1);
        nw[static_cast<std::size_t>(i)] = {x, 2 / ((1 - x * x) * dp * dp)};
    }
    return cache.emplace(order, std::move(nw)).first->second;
}

bool circles_intersect(const CircleContour& a, const CircleContour& b) {
    double d = std::abs(a.center - b.center);
    return d <= a.radius + b.radius && d >= std::abs(a.radius - b.radius);
}

QuadResult circle_integral(const std::function<cplx(cplx)>& f, const CircleContour& c,
                           const QuadratureSettings& s) {
    s.validate();
    if (!(c.radius > 0)) throw UsageError("circle radius must be positive");
    QuadResult r;
    cplx prev{};
    bool have_prev = false;
    for (int m = s.initial_nodes; m <= s.max_nodes; m *= 2) {
        cplx sum{};
        double abs_sum = 0;
        for (int k = 0; k < m; ++k) {
            cplx e = std::polar(c.radius, 2 * kPi * k / m);
            cplx t = f(c.center + e) * e;
            sum += t;
            abs_sum += std::abs(t);
        }
        r.value = sum / static_cast<double>(m);
        r.scale = abs_sum / m;
        r.nodes_used = m;
        if (have_prev) {
            r.error_estimate = std::abs(r.value - prev);
            if (accept(prev, r.value, r.scale, s.rel_tol)) return fail_or(r, true);
        }
        prev = r.value;
        have_prev = true;
    }
    return fail_or(r, false);
}

QuadResult double_circle_integral(const std::function<cplx(cplx, cplx)>& F, const CircleContour& cu,
                                  const CircleContour& cw, const QuadratureSettings& s) {
    s.validate();
    if (!(cu.radius > 0) || !(cw.radius > 0)) throw UsageError("circle radius must be positive");
    if (circles_intersect(cu, cw)) throw UsageError("double_circle_integral: contours intersect");
    QuadResult r;
    cplx prev{};
    bool have_prev = false;
    const int cap = std::min(s.max_nodes, kMaxTensorNodes);
    for (int m = s.initial_nodes; m <= cap; m *= 2) {
        std::vector<cplx> eu(static_cast<std::size_t>(m)), ew(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k) {
            eu[static_cast<std::size_t>(k)] = std::polar(cu.radius, 2 * kPi * k / m);
            ew[static_cast<std::size_t>(k)] = std::polar(cw.radius, 2 * kPi * k / m);
        }
        cplx sum{};
        double abs_sum = 0;
        for (const cplx& a : eu)
            for (const cplx& b : ew) {
                cplx t = F(cu.center + a, cw.center + b) * a * b;
                sum += t;
                abs_sum += std::abs(t);
            }
        double mm = static_cast<double>(m) * m;
        r.value = sum / mm;
        r.scale = abs_sum / mm;
        r.nodes_used = m;
        if (have_prev) {
            r.error_estimate = std::abs(r.value - prev);
            if (accept(prev, r.value, r.scale, s.rel_tol)) return fail_or(r, true);
        }
        prev = r.value;
        have_prev = true;
    }
    return fail_or(r, false);
}

PathRule discretize(const PathContour& p, int refinement) {
    const auto& gl = gauss_legendre(kPanelOrder);
    PathRule rule;
    const int sub = 1 << refinement;
    for (const auto& seg : segments_of(p)) {
        double len = std::abs(seg.b - seg.a);
        if (len == 0) continue;
        cplx dir = (seg.b - seg.a) / len;
        auto bp = breakpoints(len, seg.grade_a, seg.grade_b, seg.base_panels);
        for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
            double h = (bp[i + 1] - bp[i]) / sub;
            for (int j = 0; j < sub; ++j) {
                double lo = bp[i] + j * h;
                for (const auto& [x, wt] : gl) {
                    rule.z.push_back(seg.a + dir * (lo + h * (x + 1) / 2));
                    rule.w.push_back(dir * (h / 2 * wt) / kTwoPiI);
                }
            }
        }
    }
    return rule;
}

namespace {

// Doubles ray cutoffs until |f| at every truncated end is below tol * peak.
bool extend_rays(PathContour& p, const std::function<double(cplx)>& mag, double tol) {
    auto peak_of = [&]() {
        double peak = 0;
        for (const cplx& z : discretize(p, 0).z) peak = std::max(peak, mag(z));
        return peak;
    };
    for (int it = 0; it <= kMaxRayDoublings; ++it) {
        double peak = peak_of();
        bool ok = true;
        if (p.head) {
            cplx far = p.vertices.front() + p.head->direction / std::abs(p.head->direction) * p.head->cutoff;
            if (!(mag(far) <= tol * peak)) {
                p.head->cutoff *= 2;
                ok = false;
            }
        }
        if (p.tail) {
            cplx far = p.vertices.back() + p.tail->direction / std::abs(p.tail->direction) * p.tail->cutoff;
            if (!(mag(far) <= tol * peak)) {
                p.tail->cutoff *= 2;
                ok = false;
            }
        }
        if (ok) return true;
    }
    return false;
}

// Keeps the base panel length on rays fixed while the cutoff grows.
void scale_ray_panels(PathContour& p, const PathContour& original) {
    std::size_t nseg = p.vertices.size() - 1 + (p.head ? 1 : 0) + (p.tail ? 1 : 0);
    p.segment_nodes.resize(nseg, 0);
    for (std::size_t i = 0; i < nseg; ++i)
        if (p.segment_nodes[i] <= 0) p.segment_nodes[i] = 4 * kPanelOrder;
    if (p.head)
        p.segment_nodes.front() = static_cast<int>(
            p.segment_nodes.front() * std::ceil(p.head->cutoff / original.head->cutoff));
    if (p.tail)
        p.segment_nodes.back() = static_cast<int>(
            p.segment_nodes.back() * std::ceil(p.tail->cutoff / original.tail->cutoff));
}

} // namespace

QuadResult path_integral(const std::function<cplx(cplx)>& f, const PathContour& p0,
                         const QuadratureSettings& s) {
    s.validate();
    PathContour p = p0;
    if (!extend_rays(p, [&](cplx z) { return std::abs(f(z)); }, s.rel_tol)) {
        QuadResult r;
        r.value = std::numeric_limits<double>::quiet_NaN();
        return fail_or(r, false);
    }
    scale_ray_panels(p, p0);
    QuadResult r;
    cplx prev{};
    bool have_prev = false;
    for (int lvl = 0;; ++lvl) {
        PathRule rule = discretize(p, lvl);
        if (static_cast<int>(rule.z.size()) > s.max_nodes && have_prev) break;
        cplx sum{};
        double abs_sum = 0;
        for (std::size_t k = 0; k < rule.z.size(); ++k) {
            cplx t = f(rule.z[k]) * rule.w[k];
            sum += t;
            abs_sum += std::abs(t);
        }
        r.value = sum;
        r.scale = abs_sum;
        r.nodes_used = static_cast<int>(rule.z.size());
        if (have_prev) {
            r.error_estimate = std::abs(r.value - prev);
            if (accept(prev, r.value, r.scale, s.rel_tol)) return fail_or(r, true);
        }
        prev = r.value;
        have_prev = true;
        if (lvl > 20) break;
    }
    return fail_or(r, false);
}

QuadResult double_path_integral(const std::function<cplx(cplx, cplx)>& F, const PathContour& pu0,
                                const PathContour& pw0, const QuadratureSettings& s) {
    s.validate();
    PathContour pu = pu0, pw = pw0;
    // Tail tests use the other variable sampled on its coarse rule.
    {
        PathRule rw = discretize(pw, 0);
        auto mag_u = [&](cplx u) {
            double m = 0;
            for (const cplx& w : rw.z) m = std::max(m, std::abs(F(u, w)));
            return m;
        };
        if (!extend_rays(pu, mag_u, s.rel_tol)) return fail_or(QuadResult{}, false);
        PathRule ru = discretize(pu, 0);
        auto mag_w = [&](cplx w) {
            double m = 0;
            for (const cplx& u : ru.z) m = std::max(m, std::abs(F(u, w)));
            return m;
        };
        if (!extend_rays(pw, mag_w, s.rel_tol)) return fail_or(QuadResult{}, false);
    }
    scale_ray_panels(pu, pu0);
    scale_ray_panels(pw, pw0);
    QuadResult r;
    cplx prev{};
    bool have_prev = false;
    for (int lvl = 0; lvl < 12; ++lvl) {
        PathRule ru = discretize(pu, lvl), rw = discretize(pw, lvl);
        if (static_cast<int>(std::max(ru.z.size(), rw.z.size())) > s.max_nodes && have_prev) break;
        cplx sum{};
        double abs_sum = 0;
        for (std::size_t i = 0; i < ru.z.size(); ++i) {
            cplx inner{};
            double inner_abs = 0;
            for (std::size_t j = 0; j < rw.z.size(); ++j) {
                cplx t = F(ru.z[i], rw.z[j]) * rw.w[j];
                inner += t;
                inner_abs += std::abs(t);
            }
            sum += inner * ru.w[i];
            abs_sum += inner_abs * std::abs(ru.w[i]);
        }
        r.value = sum;
        r.scale = abs_sum;
        r.nodes_used = static_cast<int>(ru.z.size() * rw.z.size());
        if (have_prev) {
            r.error_estimate = std::abs(r.value - prev);
            if (accept(prev, r.value, r.scale, s.rel_tol)) return fail_or(r, true);
        }
        prev = r.value;
        have_prev = true;
    }
    return fail_or(r, false);
}

cplx value_or_throw(const QuadResult& r, const char* what) {
    if (!r.converged)
        throw NumericalFailure(std::string(what) + ": quadrature did not converge", r.value.real());
    return r.value;
}

} // namespace plancherel

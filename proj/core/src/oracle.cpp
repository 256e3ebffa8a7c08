#include "plancherel/oracle.hpp"
#include "plancherel/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace plancherel {

namespace {

// c(l) for l in [lo, hi], reused by every determinant of one enumeration.
class CoeffTable {
public:
    CoeffTable(const PlancherelParams& p, int lo, int hi) : lo_(lo), c_(static_cast<std::size_t>(hi - lo + 1)) {
        for (int l = lo; l <= hi; ++l) c_[static_cast<std::size_t>(l - lo)] = fourier_coeff(l, p);
    }
    double operator()(int l) const { return c_[static_cast<std::size_t>(l - lo_)]; }

private:
    int lo_;
    std::vector<double> c_;
};

// det[c(x_k + j)]_{j,k = 1..N} for N <= 4.
double small_det(const CoeffTable& c, const std::vector<int>& x) {
    const int n = static_cast<int>(x.size());
    double m[4][4];
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) m[j][k] = c(x[static_cast<std::size_t>(k)] + j + 1);
    // Gaussian elimination with partial pivoting.
    double det = 1;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (m[piv][col] == 0) return 0;
        if (piv != col) {
            for (int k = 0; k < n; ++k) std::swap(m[piv][k], m[col][k]);
            det = -det;
        }
        det *= m[col][col];
        for (int r = col + 1; r < n; ++r) {
            double f = m[r][col] / m[col][col];
            for (int k = col; k < n; ++k) m[r][k] -= f * m[col][k];
        }
    }
    return det;
}

void for_each_top(const EnumerationSpec& spec, const std::function<void(const std::vector<int>&)>& visit) {
    const int n = spec.N;
    std::vector<int> x(static_cast<std::size_t>(n));
    auto rec = [&](auto&& self, int i, int upper) -> void {
        if (i == n) {
            visit(x);
            return;
        }
        // leave room for the remaining n - i - 1 strictly smaller positions
        for (int v = upper; v >= spec.window.lo + (n - i - 1); --v) {
            x[static_cast<std::size_t>(i)] = v;
            self(self, i + 1, v - 1);
        }
    };
    rec(rec, 0, spec.window.hi);
}

struct TopWeight {
    std::vector<int> x;
    double det;   // path weight
    double dim;   // Weyl dimension
};

std::vector<TopWeight> checked_tops(const EnumerationSpec& spec) {
    spec.validate();
    CoeffTable c(spec.params, spec.window.lo + 1, spec.window.hi + spec.N);
    std::vector<TopWeight> tops;
    double max_w = 0, max_boundary = 0;
    for_each_top(spec, [&](const std::vector<int>& x) {
        Signature s = Signature::from_positions(x);
        TopWeight t{x, small_det(c, x), weyl_dim_double(s)};
        double w = t.det * t.dim;
        max_w = std::max(max_w, std::abs(w));
        if (x.front() == spec.window.hi || x.back() == spec.window.lo)
            max_boundary = std::max(max_boundary, std::abs(w));
        tops.push_back(std::move(t));
    });
    if (!(max_boundary < kBoundaryRatio * max_w))
        throw WindowTooSmall("enumeration window [" + std::to_string(spec.window.lo) + "," +
                             std::to_string(spec.window.hi) + "] too small: boundary weight ratio " +
                             std::to_string(max_w > 0 ? max_boundary / max_w : INFINITY));
    return tops;
}

// Visits every chain below a top (levels 1..N-1), top last.
void for_each_chain(const std::vector<int>& top_x,
                    const std::function<void(const std::vector<std::vector<int>>&)>& visit) {
    const int n = static_cast<int>(top_x.size());
    std::vector<std::vector<int>> levels(static_cast<std::size_t>(n));
    levels[static_cast<std::size_t>(n - 1)] = top_x;
    // Interlacing in positions: y_i in [x_{i+1} + 1, x_i] for the level below (positions shift by one).
    auto rec = [&](auto&& self, int lvl) -> void {
        if (lvl == 0) {
            visit(levels);
            return;
        }
        const auto& up = levels[static_cast<std::size_t>(lvl)];
        auto& cur = levels[static_cast<std::size_t>(lvl - 1)];
        cur.assign(static_cast<std::size_t>(lvl), 0);
        auto fill = [&](auto&& fself, int i) -> void {
            if (i == lvl) {
                self(self, lvl - 1);
                return;
            }
            // lambda'_i in [lambda_{i+1}, lambda_i] with x = lambda - i on each level
            int lam_hi = up[static_cast<std::size_t>(i)] + i + 1;
            int lam_lo = up[static_cast<std::size_t>(i + 1)] + i + 2;
            for (int lam = lam_lo; lam <= lam_hi; ++lam) {
                cur[static_cast<std::size_t>(i)] = lam - i - 1;
                fself(fself, i + 1);
            }
        };
        fill(fill, 0);
    };
    rec(rec, n - 1);
}

} // namespace

void EnumerationSpec::validate() const {
    if (N < 1 || N > 4) throw UsageError("enumeration requires 1 <= N <= 4");
    if (window.lo > window.hi) throw UsageError("window requires lo <= hi");
    if (window.width() < N) throw UsageError("window narrower than N");
    params.validate();
}

std::string OracleReport::to_json() const {
    nlohmann::json j;
    j["max_abs_error"] = max_abs_error;
    j["tuples_checked"] = tuples_checked;
    j["total_mass"] = total_mass;
    auto& wt = j["worst_tuple"] = nlohmann::json::array();
    for (const auto& p : worst_tuple) wt.push_back({{"n", p.n}, {"x", p.x}});
    return j.dump();
}

std::vector<std::pair<Signature, double>> enum_signatures(const EnumerationSpec& spec) {
    std::vector<std::pair<Signature, double>> out;
    for (const auto& t : checked_tops(spec)) out.emplace_back(Signature::from_positions(t.x), t.det * t.dim);
    return out;
}

void for_each_path(const EnumerationSpec& spec, const std::function<void(const GTPath&, double)>& visit) {
    if (spec.N > 3) throw UsageError("path enumeration requires N <= 3");
    for (const auto& t : checked_tops(spec)) {
        for_each_chain(t.x, [&](const std::vector<std::vector<int>>& levels) {
            std::vector<Signature> sigs;
            for (const auto& l : levels) sigs.push_back(Signature::from_positions(l));
            visit(GTPath(std::move(sigs)), t.det);
        });
    }
}

std::vector<std::pair<GTPath, double>> enum_paths(const EnumerationSpec& spec) {
    std::vector<std::pair<GTPath, double>> out;
    for_each_path(spec, [&](const GTPath& p, double w) { out.emplace_back(p, w); });
    return out;
}

namespace {

// Sums path weights over configurations satisfying `pred(levels)`.
double sum_over_configs(const EnumerationSpec& spec, bool need_paths,
                        const std::function<bool(const std::vector<std::vector<int>>&)>& pred) {
    double total = 0;
    if (!need_paths) {
        for (const auto& t : checked_tops(spec)) {
            std::vector<std::vector<int>> lv(static_cast<std::size_t>(spec.N));
            lv.back() = t.x;
            if (pred(lv)) total += t.det * t.dim;
        }
        return total;
    }
    if (spec.N > 3) throw UsageError("multi-level correlations require N <= 3");
    for (const auto& t : checked_tops(spec))
        for_each_chain(t.x, [&](const std::vector<std::vector<int>>& lv) {
            if (pred(lv)) total += t.det;
        });
    return total;
}

bool occupied(const std::vector<std::vector<int>>& lv, const SpacetimePoint& p) {
    const auto& l = lv[static_cast<std::size_t>(p.n - 1)];
    return std::find(l.begin(), l.end(), p.x) != l.end();
}

void check_levels(const std::vector<SpacetimePoint>& points, int N) {
    for (const auto& p : points)
        if (p.n < 1 || p.n > N) throw UsageError("point level exceeds enumeration depth");
}

} // namespace

double exact_corr(const std::vector<SpacetimePoint>& points, const EnumerationSpec& spec) {
    check_levels(points, spec.N);
    bool need_paths = std::any_of(points.begin(), points.end(), [&](const auto& p) { return p.n != spec.N; });
    return sum_over_configs(spec, need_paths, [&](const auto& lv) {
        return std::all_of(points.begin(), points.end(), [&](const auto& p) { return occupied(lv, p); });
    });
}

double exact_corr_complement(const std::vector<SpacetimePoint>& points, const EnumerationSpec& spec) {
    check_levels(points, spec.N);
    bool need_paths = std::any_of(points.begin(), points.end(), [&](const auto& p) { return p.n != spec.N; });
    return sum_over_configs(spec, need_paths, [&](const auto& lv) {
        return std::none_of(points.begin(), points.end(), [&](const auto& p) { return occupied(lv, p); });
    });
}

Window auto_window(int N, const PlancherelParams& p, const Window& probe) {
    Window w = probe;
    for (int grow = 0; grow < 200; ++grow) {
        try {
            checked_tops({N, w, p});
            return w;
        } catch (const WindowTooSmall&) {
            w = Window(w.lo - 1, w.hi + 1);
        }
    }
    throw WindowTooSmall("auto_window: no admissible window found");
}

OracleReport compare(const EnumerationSpec& spec, const CompareOptions& opt) {
    spec.validate();
    const Window probe = opt.probe.value_or(spec.window);
    if (probe.lo < spec.window.lo || probe.hi > spec.window.hi)
        throw UsageError("probe window must lie inside the enumeration window");
    const int width = spec.window.width();
    if (width > 64) throw UsageError("compare supports enumeration windows up to 64 sites");

    std::vector<std::vector<SpacetimePoint>> tuples;
    if (opt.exhaustive) {
        for (int x = probe.lo; x <= probe.hi; ++x) tuples.push_back({{spec.N, x}});
        for (int x = probe.lo; x <= probe.hi; ++x)
            for (int y = x + 1; y <= probe.hi; ++y) tuples.push_back({{spec.N, x}, {spec.N, y}});
    }
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> kdist(1, 3), xdist(probe.lo, probe.hi);
    std::uniform_int_distribution<int> ldist(opt.multi_level ? 1 : spec.N, spec.N);
    for (int t = 0; t < opt.tuple_budget; ++t) {
        const int k = kdist(rng);
        std::set<SpacetimePoint> pts;
        while (static_cast<int>(pts.size()) < k) pts.insert({ldist(rng), xdist(rng)});
        tuples.emplace_back(pts.begin(), pts.end());
    }

    // Exact side: one pass over all configurations, bitmask per level.
    const bool need_paths = opt.multi_level && spec.N > 1;
    std::vector<std::array<std::uint64_t, 4>> tmask(tuples.size(), std::array<std::uint64_t, 4>{});
    for (std::size_t t = 0; t < tuples.size(); ++t)
        for (const auto& p : tuples[t]) tmask[t][static_cast<std::size_t>(p.n - 1)] |= 1ULL << (p.x - spec.window.lo);
    std::vector<double> exact(tuples.size(), 0.0);
    double mass = 0;
    const bool complement = opt.which == KernelKind::KDelta;
    auto accumulate = [&](const std::array<std::uint64_t, 4>& cfg, double w) {
        mass += w;
        for (std::size_t t = 0; t < tuples.size(); ++t) {
            bool hit = true;
            for (int l = 0; l < spec.N && hit; ++l) {
                auto m = tmask[t][static_cast<std::size_t>(l)];
                hit = complement ? (cfg[static_cast<std::size_t>(l)] & m) == 0
                                 : (cfg[static_cast<std::size_t>(l)] & m) == m;
            }
            if (hit) exact[t] += w;
        }
    };
    for (const auto& top : checked_tops(spec)) {
        if (!need_paths) {
            std::array<std::uint64_t, 4> cfg{};
            for (int x : top.x) cfg[static_cast<std::size_t>(spec.N - 1)] |= 1ULL << (x - spec.window.lo);
            accumulate(cfg, top.det * top.dim);
            continue;
        }
        for_each_chain(top.x, [&](const std::vector<std::vector<int>>& lv) {
            std::array<std::uint64_t, 4> cfg{};
            for (std::size_t l = 0; l < lv.size(); ++l)
                for (int x : lv[l]) cfg[l] |= 1ULL << (x - spec.window.lo);
            accumulate(cfg, top.det);
        });
    }

    // Determinantal side: memoized gauged entries.
    KernelEvaluator ev(spec.params, opt.kernel);
    std::map<std::pair<SpacetimePoint, SpacetimePoint>, double> memo;
    auto entry = [&](const SpacetimePoint& a, const SpacetimePoint& b) {
        auto key = std::make_pair(a, b);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        double v = ev.eval(a, b, opt.which, ev.gauge(b) - ev.gauge(a));
        memo.emplace(key, v);
        return v;
    };
    OracleReport rep;
    rep.total_mass = mass;
    for (std::size_t t = 0; t < tuples.size(); ++t) {
        const auto& pts = tuples[t];
        std::vector<std::vector<double>> m(pts.size(), std::vector<double>(pts.size()));
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = 0; j < pts.size(); ++j) m[i][j] = entry(pts[i], pts[j]);
        double err = std::abs(determinant(m) - exact[t]);
        if (err > rep.max_abs_error || rep.worst_tuple.empty()) {
            rep.max_abs_error = std::max(rep.max_abs_error, err);
            if (err >= rep.max_abs_error) rep.worst_tuple = pts;
        }
        ++rep.tuples_checked;
    }
    return rep;
}

} // namespace plancherel

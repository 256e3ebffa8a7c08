#include "plancherel/experiments.hpp"
#include "plancherel/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace plancherel {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int round_half_away(double v) { return static_cast<int>(std::lround(v)); }

// One determinant comparison: det[prefactor * K] at `pts` against `limit`.
struct Comparison {
    std::vector<SpacetimePoint> pts;
    KernelKind kind = KernelKind::K;
    double prefactor = 1.0;
    double limit = 0.0;
};

using Builder = std::function<std::vector<Comparison>(int N, PlancherelParams& prm)>;

ErrorTable run(const ConvergenceSpec& spec, const Builder& build) {
    spec.validate();
    ErrorTable table;
    table.regime = spec.regime;
    for (int N : spec.Ns) {
        ErrorRow row;
        row.N = N;
        try {
            PlancherelParams prm;
            std::vector<Comparison> comps = build(N, prm);
            KernelEvaluator ev(prm, spec.kernel);
            bool first = true;
            for (const auto& cmp : comps) {
                auto m = ev.matrix(cmp.pts, cmp.kind, true);
                const double finite = std::pow(cmp.prefactor, static_cast<double>(cmp.pts.size())) * determinant(m);
                const double err = std::abs(finite - cmp.limit);
                if (first || err > row.max_abs_error) {
                    row.max_abs_error = err;
                    row.finite = finite;
                    row.limit = cmp.limit;
                    first = false;
                }
            }
        } catch (const NumericalFailure&) {
            row.converged = false;
            row.max_abs_error = kNaN;
        }
        table.rows.push_back(row);
    }
    return table;
}

double det_of(std::size_t k, const std::function<double(std::size_t, std::size_t)>& entry) {
    std::vector<std::vector<double>> m(k, std::vector<double>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m[i][j] = entry(i, j);
    return determinant(m);
}

std::string fmt12(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

} // namespace

const char* regime_name(Regime r) {
    switch (r) {
    case Regime::PoissonJ: return "poisson";
    case Regime::BulkFixed: return "bulk-fixed";
    case Regime::BulkProportional: return "bulk-proportional";
    case Regime::Pearcey: return "pearcey";
    case Regime::Airy: return "airy";
    }
    return "?";
}

Regime parse_regime(const std::string& name) {
    for (Regime r : {Regime::PoissonJ, Regime::BulkFixed, Regime::BulkProportional, Regime::Pearcey, Regime::Airy})
        if (name == regime_name(r)) return r;
    throw UsageError("unknown regime '" + name + "'");
}

void ConvergenceSpec::validate() const {
    if (Ns.size() < 2) throw UsageError("convergence spec needs at least two values of N");
    for (std::size_t i = 0; i < Ns.size(); ++i) {
        if (Ns[i] < 1) throw UsageError("N must be positive");
        if (i > 0 && Ns[i] <= Ns[i - 1]) throw UsageError("Ns must be strictly increasing");
    }
    if (probes.empty()) throw UsageError("convergence spec needs at least one probe tuple");
    for (const auto& t : probes)
        if (t.empty() || t.size() > 3) throw UsageError("probe tuples must have 1 to 3 points");
    kernel.validate();
}

ConvergenceSpec default_spec(Regime r) {
    ConvergenceSpec s;
    s.regime = r;
    switch (r) {
    case Regime::PoissonJ:
        s.a = 1.0;
        for (int x = -3; x <= 3; ++x) s.probes.push_back({{1.0, 0.0, x, 0}});
        break;
    case Regime::BulkFixed:
        s.gamma_plus = s.gamma_minus = 1.0;
        s.c = 0.0;
        s.probes = {{{0.0, 0.0, 0, 0}},
                    {{0.0, 0.0, 0, 0}, {0.0, 0.0, 1, 0}},
                    {{0.0, 0.0, 0, 0}, {0.0, 0.0, 2, 0}},
                    {{0.0, 0.0, 0, 0}, {0.5, 0.0, 1, 0}}};
        break;
    case Regime::BulkProportional:
        s.a = s.b = 0.125;
        s.c = 0.0;
        s.probes = {{{0.0, 0.0, 0, 0}}, {{0.0, 0.0, 0, 0}, {0.0, 0.0, 1, 0}}, {{0.0, 0.0, 0, 0}, {0.0, 0.0, 1, 1}}};
        break;
    case Regime::Pearcey:
        s.z0 = -1.0;
        s.Ns = {100, 200, 400};
        s.probes = {{{0.0, 0.0, 0, 0}}, {{0.0, 1.0, 0, 0}}};
        break;
    case Regime::Airy: {
        s.a = s.b = 0.125;
        s.c1 = q_real_roots({s.a, s.b}).roots.back();
        s.Ns = {100, 200, 400};
        s.probes = {{{0.0, -1.0, 0, 0}}, {{0.0, 0.0, 0, 0}}, {{0.0, 1.0, 0, 0}}};
        break;
    }
    }
    return s;
}

bool ErrorTable::strictly_decreasing() const {
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].converged || std::isnan(rows[i].max_abs_error)) return false;
        if (i > 0 && !(rows[i].max_abs_error < rows[i - 1].max_abs_error)) return false;
    }
    return true;
}

std::string ErrorTable::to_csv() const {
    std::string out = "N,max_abs_error,converged,finite,limit\n";
    for (const auto& r : rows)
        out += std::to_string(r.N) + "," + fmt12(r.max_abs_error) + "," + (r.converged ? "1" : "0") + "," +
               fmt12(r.finite) + "," + fmt12(r.limit) + "\n";
    return out;
}

ErrorTable ErrorTable::from_csv(const std::string& text, Regime regime) {
    ErrorTable t;
    t.regime = regime;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "N,max_abs_error,converged,finite,limit")
        throw UsageError("error table CSV: unexpected header");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string f[5];
        for (auto& field : f)
            if (!std::getline(ls, field, ',')) throw UsageError("error table CSV: short record");
        ErrorRow r;
        r.N = std::stoi(f[0]);
        r.max_abs_error = std::stod(f[1]);
        r.converged = f[2] == "1";
        r.finite = std::stod(f[3]);
        r.limit = std::stod(f[4]);
        t.rows.push_back(r);
    }
    return t;
}

ErrorTable converge_poisson(const ConvergenceSpec& spec) {
    if (!(spec.a > 0)) throw UsageError("poisson regime requires a > 0");
    return run(spec, [&](int N, PlancherelParams& prm) {
        prm = {spec.a / N, spec.a / N};
        std::vector<Comparison> out;
        for (const auto& tuple : spec.probes) {
            Comparison c;
            std::vector<double> time;
            for (const auto& p : tuple) {
                int n = std::max(1, round_half_away(p.t * N));
                c.pts.push_back({n, p.dx});
                time.push_back(spec.a * n / N);
            }
            c.limit = det_of(tuple.size(), [&](std::size_t i, std::size_t j) {
                return kernel_J(time[i], c.pts[i].x, time[j], c.pts[j].x, spec.limit);
            });
            out.push_back(std::move(c));
        }
        return out;
    });
}

ErrorTable converge_bulk_fixed(const ConvergenceSpec& spec) {
    PlancherelParams fixed{spec.gamma_plus, spec.gamma_minus};
    fixed.validate();
    if (!(spec.gamma_plus > 0)) throw UsageError("bulk-fixed regime requires gamma+ > 0");
    const double edge = 2 * std::sqrt(spec.gamma_plus);
    return run(spec, [&](int N, PlancherelParams& prm) {
        prm = fixed;
        const double rn = std::sqrt(static_cast<double>(N));
        const int x0 = round_half_away(spec.c * rn);
        std::vector<Comparison> out;
        for (const auto& tuple : spec.probes) {
            Comparison c;
            std::vector<double> time;
            for (const auto& p : tuple) {
                int n = N + round_half_away(p.t * rn);
                c.pts.push_back({n, x0 + p.dx});
                time.push_back((n - N) / rn);
            }
            if (spec.c >= edge) {
                c.limit = 0.0;
            } else if (spec.c <= -edge) {
                c.limit = 1.0;
            } else {
                SineParams sp{z_plus_fixed_gamma(x0 / rn, spec.gamma_plus)};
                c.limit = det_of(tuple.size(), [&](std::size_t i, std::size_t j) {
                    return sine_S(sp, time[i] - time[j], c.pts[i].x - c.pts[j].x, spec.limit);
                });
            }
            out.push_back(std::move(c));
        }
        return out;
    });
}

ErrorTable converge_bulk_proportional(const ConvergenceSpec& spec) {
    const ProportionalParams pp{spec.a, spec.b};
    pp.validate();
    const RegionLabel region = classify_region(pp, spec.c);
    return run(spec, [&](int N, PlancherelParams& prm) {
        prm = {spec.a * N, spec.b * N};
        const int x0 = round_half_away(spec.c * N);
        std::vector<Comparison> out;
        for (const auto& tuple : spec.probes) {
            Comparison c;
            for (const auto& p : tuple) c.pts.push_back({N + p.dn, x0 + p.dx});
            if (region.kind == RegionLabel::Kind::Bulk) {
                const cplx z = z_plus_proportional(pp, static_cast<double>(x0) / N);
                c.limit = det_of(tuple.size(), [&](std::size_t i, std::size_t j) {
                    return beta_B(z, c.pts[i].n - c.pts[j].n, c.pts[j].x - c.pts[i].x, spec.limit);
                });
            } else {
                c.limit = density_limit(region);
            }
            out.push_back(std::move(c));
        }
        return out;
    });
}

ErrorTable converge_pearcey(const ConvergenceSpec& spec) {
    const PearceyData d = double_root_family(spec.z0);
    return run(spec, [&](int N, PlancherelParams& prm) {
        prm = {d.a * N, d.b * N};
        const double rn = std::sqrt(static_cast<double>(N)), qn = std::pow(N, 0.25);
        std::vector<Comparison> out;
        for (const auto& tuple : spec.probes) {
            Comparison c;
            c.kind = KernelKind::KDelta;
            c.prefactor = -qn / d.zeta;
            std::vector<PearceyArg> args;
            for (const auto& p : tuple) {
                const int n = N + round_half_away(2 * p.t * rn);
                const double t = (n - N) / (2 * rn);
                const double tt = d.z0 / (1 - d.z0) * t;
                const int x = round_half_away(d.c0 * N + tt * rn + p.s * qn / d.zeta);
                c.pts.push_back({n, x});
                args.push_back({t, d.zeta * (x - d.c0 * N - tt * rn) / qn});
            }
            c.limit = det_of(tuple.size(),
                             [&](std::size_t i, std::size_t j) { return pearcey_P(args[i], args[j], spec.limit); });
            out.push_back(std::move(c));
        }
        return out;
    });
}

ErrorTable converge_airy(const ConvergenceSpec& spec) {
    const ProportionalParams pp{spec.a, spec.b};
    pp.validate();
    // Snap the requested edge to the nearest root of Q so callers may pass rounded values.
    const RealRoots q = q_real_roots(pp);
    double c1 = spec.c1, best = INFINITY;
    for (double r : q.roots)
        if (std::abs(r - spec.c1) < best) best = std::abs(r - spec.c1), c1 = r;
    if (!(best < 1e-3)) throw UsageError("c1 is not close to a root of Q_{a,b}");
    const EdgeData e = airy_constants(pp, c1);
    const KernelKind kind = (c1 > 0 || c1 < -1) ? KernelKind::K : KernelKind::KDelta;
    return run(spec, [&](int N, PlancherelParams& prm) {
        prm = {spec.a * N, spec.b * N};
        const double n13 = std::cbrt(static_cast<double>(N)), n23 = n13 * n13;
        std::vector<Comparison> out;
        for (const auto& tuple : spec.probes) {
            Comparison c;
            c.kind = kind;
            c.prefactor = std::abs(e.z1 * e.cbrt_p3()) * n13;
            std::vector<AiryArg> args;
            for (const auto& p : tuple) {
                const int n = N + round_half_away(p.t * n23);
                const double t = (n - N) / n23;
                const double tt = t * e.z1 / (1 - e.z1);
                const int x = round_half_away(c1 * N + tt * n23 + p.s * n13);
                c.pts.push_back({n, x});
                const double s = (x - c1 * N - tt * n23) / n13;
                args.push_back({e.tau(t), e.sigma(t, s)});
            }
            c.limit = det_of(tuple.size(), [&](std::size_t i, std::size_t j) {
                return airy_ext_integral(args[i], args[j], spec.limit);
            });
            out.push_back(std::move(c));
        }
        return out;
    });
}

ErrorTable converge(const ConvergenceSpec& spec) {
    switch (spec.regime) {
    case Regime::PoissonJ: return converge_poisson(spec);
    case Regime::BulkFixed: return converge_bulk_fixed(spec);
    case Regime::BulkProportional: return converge_bulk_proportional(spec);
    case Regime::Pearcey: return converge_pearcey(spec);
    case Regime::Airy: return converge_airy(spec);
    }
    throw UsageError("unknown regime");
}

std::vector<DensityRow> density_profile(const PlancherelParams& p, int N, const std::vector<double>& betas,
                                        const KernelSettings& st) {
    if (N < 1) throw UsageError("N must be positive");
    KernelEvaluator ev(p, st);
    const double rn = std::sqrt(static_cast<double>(N));
    std::vector<DensityRow> out;
    for (double beta : betas) {
        DensityRow r;
        r.beta = beta;
        r.x = round_half_away(beta * rn);
        r.finite = ev.eval({N, r.x}, {N, r.x}, KernelKind::K);
        r.limit = density_limit_fixed(r.x / rn, p.gamma_plus);
        out.push_back(r);
    }
    return out;
}

double poisson_independence(double a, int N, const std::vector<int>& xs, const std::vector<int>& ys,
                            const KernelSettings& st) {
    if (!(a > 0) || N < 1) throw UsageError("poisson_independence requires a > 0 and N >= 1");
    KernelEvaluator ev({a / N, a / N}, st);
    double worst = 0;
    for (int x : xs)
        for (int y : ys) {
            SpacetimePoint p{N, x}, q{N, -N - y - 1};
            double g = ev.gauge(q) - ev.gauge(p);
            double kpq = ev.eval(p, q, KernelKind::K, g), kqp = ev.eval(q, p, KernelKind::K, -g);
            worst = std::max(worst, std::sqrt(std::abs(kpq * kqp)));
        }
    return worst;
}

} // namespace plancherel

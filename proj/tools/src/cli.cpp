#include "plancherel_cli/cli.hpp"

#include "plancherel/errors.hpp"
#include "plancherel/experiments.hpp"
#include "plancherel/kernel.hpp"
#include "plancherel/limitkernels.hpp"
#include "plancherel/oracle.hpp"
#include "plancherel/sampler.hpp"
#include "plancherel/shape.hpp"
#include "plancherel/weights.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace plancherel::cli {

namespace {

using nlohmann::json;

// Signals that a result was produced but did not converge.
struct NotConverged {};

KernelKind parse_kind(const std::string& s) {
    if (s == "K") return KernelKind::K;
    if (s == "KDelta") return KernelKind::KDelta;
    throw UsageError("kernel kind must be K or KDelta");
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("expected a comma-separated integer list, got '" + text + "'");
        }
    }
    if (out.empty()) throw UsageError("empty integer list");
    return out;
}

json roots_json(const RealRoots& r) {
    json j = json::array();
    for (double x : r.roots) j.push_back(x);
    return j;
}

json limit_json(const LimitValue& v) {
    return json{{"value", v.value}, {"converged", v.converged}, {"nodes_used", v.nodes_used}};
}

struct Options {
    // kernel eval
    int n1 = 1, x1 = 0, n2 = 1, x2 = 0;
    double gp = 0, gm = 0;
    std::string kind = "K";
    // measure weight
    std::string sig;
    // oracle check
    int N = 1;
    std::string window = "-10,6";
    int tuples = 200;
    std::uint64_t seed = 1;
    bool single_level = false;
    // shape
    double a = 0, b = 0, c = 0;
    // limit
    double s = 0, t = 0;
    int x = 0, y = 0, k = 0, l = 0;
    double re = 0, im = 1;
    double dt = 0;
    int dx = 0;
    double arg = 0;
    double tau1 = 0, sigma1 = 0, tau2 = 0, sigma2 = 0;
    double t1 = 0, s1 = 0, t2 = 0, s2 = 0;
    // converge
    std::string ns;
    std::optional<double> oa, ob, oc, ogp, ogm, oz0, oc1;
    // sample
    long count = 1000;
    long steps = 0, burn_in = 1000;
    std::string method = "mcmc";
    std::string sample_window;
    std::string summary;
};

void add_params(CLI::App* sc, Options& o) {
    sc->add_option("--gp", o.gp, "gamma+")->required();
    sc->add_option("--gm", o.gm, "gamma-")->required();
}

} // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Plancherel measures for U(infinity): kernels, enumeration, limit shapes and scaling limits"};
    app.require_subcommand(1);
    Options o;
    std::function<void()> action;

    // kernel eval
    auto* kernel = app.add_subcommand("kernel", "Correlation kernel entries");
    kernel->require_subcommand(1);
    auto* keval = kernel->add_subcommand("eval", "K(n1,x1; n2,x2) or K_Delta as JSON");
    keval->add_option("--n1", o.n1)->required();
    keval->add_option("--x1", o.x1)->required();
    keval->add_option("--n2", o.n2)->required();
    keval->add_option("--x2", o.x2)->required();
    add_params(keval, o);
    keval->add_option("--kind", o.kind, "K or KDelta")->capture_default_str();
    keval->callback([&] {
        action = [&] {
            PlancherelParams p{o.gp, o.gm};
            p.validate();
            KernelEvaluator ev(p, {});
            auto v = ev.eval_raw({o.n1, o.x1}, {o.n2, o.x2}, parse_kind(o.kind));
            out << json{{"value", v.value}, {"converged", v.converged}, {"nodes_used", v.nodes}}.dump() << '\n';
            if (!v.converged) throw NotConverged{};
        };
    });

    // measure weight
    auto* measure = app.add_subcommand("measure", "Plancherel measure");
    measure->require_subcommand(1);
    auto* mweight = measure->add_subcommand("weight", "P_N(lambda) for one signature");
    mweight->add_option("--sig", o.sig, "signature, e.g. 2,0,-1")->required();
    add_params(mweight, o);
    mweight->callback([&] {
        action = [&] {
            PlancherelParams p{o.gp, o.gm};
            p.validate();
            auto sig = Signature::parse(o.sig);
            out << json{{"signature", sig.to_string()},
                        {"weight", plancherel_weight(sig, p)},
                        {"dim", weyl_dim(sig).str()}}
                       .dump()
                << '\n';
        };
    });

    // oracle check
    auto* oracle = app.add_subcommand("oracle", "Brute-force enumeration oracle");
    oracle->require_subcommand(1);
    auto* ocheck = oracle->add_subcommand("check", "Compare kernel determinants with exact correlations");
    ocheck->add_option("--n", o.N, "level N (1..3 for multi-level)")->required();
    add_params(ocheck, o);
    ocheck->add_option("--window", o.window, "probe window lo,hi")->capture_default_str();
    ocheck->add_option("--kind", o.kind, "K or KDelta")->capture_default_str();
    ocheck->add_option("--tuples", o.tuples, "random tuples of size <= 3")->capture_default_str();
    ocheck->add_option("--seed", o.seed)->capture_default_str();
    ocheck->add_flag("--single-level", o.single_level, "random tuples on level N only");
    ocheck->callback([&] {
        action = [&] {
            PlancherelParams p{o.gp, o.gm};
            p.validate();
            const Window probe = Window::parse(o.window);
            EnumerationSpec spec{o.N, probe, p};
            spec.validate();
            spec.window = auto_window(o.N, p, probe);
            CompareOptions opt;
            opt.which = parse_kind(o.kind);
            opt.tuple_budget = o.tuples;
            opt.seed = o.seed;
            opt.multi_level = !o.single_level;
            opt.probe = probe;
            auto rep = compare(spec, opt);
            auto j = json::parse(rep.to_json());
            j["enumeration_window"] = {spec.window.lo, spec.window.hi};
            j["probe_window"] = {probe.lo, probe.hi};
            out << j.dump() << '\n';
        };
    });

    // shape roots|region|density
    auto* shape = app.add_subcommand("shape", "Limit shape in the proportional regime");
    shape->require_subcommand(1);
    auto shape_cmd = [&](const char* name, const char* help, bool with_c) {
        auto* sc = shape->add_subcommand(name, help);
        sc->add_option("--a", o.a, "gamma+ / N")->required();
        sc->add_option("--b", o.b, "gamma- / N")->required();
        if (with_c) sc->add_option("--c", o.c, "x / N")->required();
        return sc;
    };
    auto shape_json = [&](bool with_c, bool density) {
        ProportionalParams pp{o.a, o.b};
        pp.validate();
        auto roots = q_real_roots(pp);
        json j{{"a", o.a}, {"b", o.b}, {"q_roots", roots_json(roots)}, {"m", roots.m()}};
        if (with_c) {
            j["c"] = o.c;
            auto reg = classify_region(pp, o.c);
            j["region"] = RegionLabel::name(reg.kind);
            if (reg.kind == RegionLabel::Kind::Bulk) j["z_plus"] = {reg.z_plus.real(), reg.z_plus.imag()};
            if (density) j["density"] = density_limit(reg);
        }
        return j;
    };
    shape_cmd("roots", "Real roots of Q_{a,b}", false)->callback([&] {
        action = [&] { out << shape_json(false, false).dump() << '\n'; };
    });
    shape_cmd("region", "Void, Bulk or Saturated at x = cN", true)->callback([&] {
        action = [&] { out << shape_json(true, false).dump() << '\n'; };
    });
    shape_cmd("density", "Limit density at x = cN", true)->callback([&] {
        action = [&] { out << shape_json(true, true).dump() << '\n'; };
    });

    // limit <name>
    auto* limit = app.add_subcommand("limit", "Limit kernels");
    limit->require_subcommand(1);
    auto emit = [&](const LimitValue& v) {
        out << limit_json(v).dump() << '\n';
        if (!v.converged) throw NotConverged{};
    };
    auto* lj = limit->add_subcommand("J", "J(s,x; t,y)");
    lj->add_option("--s", o.s)->required();
    lj->add_option("--x", o.x)->required();
    lj->add_option("--t", o.t)->required();
    lj->add_option("--y", o.y)->required();
    lj->callback([&] { action = [&] { emit(kernel_J_eval(o.s, o.x, o.t, o.y)); }; });
    auto* ls = limit->add_subcommand("sine", "S_{z+}(dt; dx)");
    ls->add_option("--re", o.re, "Re z+")->required();
    ls->add_option("--im", o.im, "Im z+ > 0")->required();
    ls->add_option("--dt", o.dt)->required();
    ls->add_option("--dx", o.dx)->required();
    ls->callback([&] {
        action = [&] {
            SineParams sp{{o.re, o.im}};
            sp.validate();
            emit(sine_S_eval(sp, o.dt, o.dx));
        };
    });
    auto* lb = limit->add_subcommand("beta", "B_z(k, l)");
    lb->add_option("--re", o.re, "Re z")->required();
    lb->add_option("--im", o.im, "Im z > 0")->required();
    lb->add_option("--k", o.k)->required();
    lb->add_option("--l", o.l)->required();
    lb->callback([&] { action = [&] { emit(beta_B_eval({o.re, o.im}, o.k, o.l)); }; });
    auto* lai = limit->add_subcommand("airy", "Ai(x)");
    lai->add_option("--x", o.arg)->required();
    lai->callback([&] { action = [&] { emit(airy_Ai_eval(o.arg)); }; });
    auto airy_args = [&](CLI::App* sc) {
        sc->add_option("--tau1", o.tau1)->required();
        sc->add_option("--sigma1", o.sigma1)->required();
        sc->add_option("--tau2", o.tau2)->required();
        sc->add_option("--sigma2", o.sigma2)->required();
    };
    auto* lae = limit->add_subcommand("airy-ext", "Extended Airy kernel (integral over lambda)");
    airy_args(lae);
    lae->callback([&] {
        action = [&] { emit(airy_ext_integral_eval({o.tau1, o.sigma1}, {o.tau2, o.sigma2})); };
    });
    auto* lad = limit->add_subcommand("airy-ext-double", "Extended Airy kernel (double contour form)");
    airy_args(lad);
    lad->callback([&] {
        action = [&] { emit(airy_ext_double_eval({o.tau1, o.sigma1}, {o.tau2, o.sigma2})); };
    });
    auto* lp = limit->add_subcommand("pearcey", "Pearcey kernel P(t1,s1; t2,s2)");
    lp->add_option("--t1", o.t1)->required();
    lp->add_option("--s1", o.s1)->required();
    lp->add_option("--t2", o.t2)->required();
    lp->add_option("--s2", o.s2)->required();
    lp->callback([&] { action = [&] { emit(pearcey_P_eval({o.t1, o.s1}, {o.t2, o.s2})); }; });

    // converge <regime>
    auto* conv = app.add_subcommand("converge", "Error table for one scaling regime (CSV)");
    std::string regime;
    conv->add_option("regime", regime, "poisson | bulk-fixed | bulk-proportional | pearcey | airy")->required();
    conv->add_option("--ns", o.ns, "comma-separated increasing N values");
    conv->add_option("--a", o.oa);
    conv->add_option("--b", o.ob);
    conv->add_option("--c", o.oc);
    conv->add_option("--gp", o.ogp);
    conv->add_option("--gm", o.ogm);
    conv->add_option("--z0", o.oz0);
    conv->add_option("--c1", o.oc1);
    conv->callback([&] {
        action = [&] {
            auto spec = default_spec(parse_regime(regime));
            if (!o.ns.empty()) spec.Ns = parse_int_list(o.ns);
            if (o.oa) spec.a = *o.oa;
            if (o.ob) spec.b = *o.ob;
            if (o.oc) spec.c = *o.oc;
            if (o.ogp) spec.gamma_plus = *o.ogp;
            if (o.ogm) spec.gamma_minus = *o.ogm;
            if (o.oz0) spec.z0 = *o.oz0;
            if (o.oc1) spec.c1 = *o.oc1;
            // a changed (a, b) moves the edge; default to its largest root
            if (spec.regime == Regime::Airy && !o.oc1 && (o.oa || o.ob))
                spec.c1 = q_real_roots({spec.a, spec.b}).roots.back();
            spec.validate();
            auto table = converge(spec);
            out << table.to_csv();
            for (const auto& r : table.rows)
                if (!r.converged) throw NotConverged{};
        };
    });

    // sample
    auto* sample = app.add_subcommand("sample", "Draw signatures (CSV, one row per sample)");
    sample->add_option("--n", o.N)->required();
    add_params(sample, o);
    sample->add_option("--count", o.count)->capture_default_str();
    sample->add_option("--method", o.method, "mcmc or exact")->capture_default_str();
    sample->add_option("--steps", o.steps, "total sweeps (default burn-in + 10 * count)");
    sample->add_option("--burn-in", o.burn_in)->capture_default_str();
    sample->add_option("--seed", o.seed)->capture_default_str();
    sample->add_option("--window", o.sample_window, "position clamp lo,hi");
    sample->add_option("--summary", o.summary, "write a JSON summary with the empirical density here");
    sample->callback([&] {
        action = [&] {
            SamplerConfig cfg;
            cfg.N = o.N;
            cfg.params = {o.gp, o.gm};
            cfg.burn_in = o.burn_in;
            cfg.steps = o.steps > 0 ? o.steps : o.burn_in + 10 * std::max<long>(o.count, 1);
            cfg.seed = o.seed;
            if (!o.sample_window.empty()) cfg.window = Window::parse(o.sample_window);
            std::vector<Signature> draws;
            if (o.method == "mcmc")
                draws = mcmc_sample(cfg, o.count);
            else if (o.method == "exact")
                draws = exact_sample_small(cfg, o.count);
            else
                throw UsageError("method must be mcmc or exact");
            for (int i = 0; i < o.N; ++i) out << (i ? "," : "") << "lambda" << i + 1;
            out << '\n';
            for (const auto& sig : draws) out << sig.to_string() << '\n';
            if (!o.summary.empty()) {
                json dens = json::object();
                if (!draws.empty())
                    for (const auto& [x, f] : empirical_density(draws, o.N)) dens[std::to_string(x)] = f;
                json j{{"N", o.N},
                       {"gamma_plus", o.gp},
                       {"gamma_minus", o.gm},
                       {"method", o.method},
                       {"count", static_cast<long>(draws.size())},
                       {"seed", o.seed},
                       {"density", dens}};
                std::ofstream f(o.summary);
                if (!f) throw UsageError("cannot write " + o.summary);
                f << j.dump(2) << '\n';
            }
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    try {
        if (action) action();
        return kExitOk;
    } catch (const NotConverged&) {
        err << "error: quadrature did not converge\n";
        return kExitNumerical;
    } catch (const NumericalFailure& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const WindowTooSmall& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace plancherel::cli

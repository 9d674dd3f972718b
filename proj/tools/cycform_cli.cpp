// Command-line entry point: verification suites, the cyclic HKR map, weight
// estimation, star products and L-infinity residuals, with deterministic JSON
// reports (timing goes to stderr so reports are byte-stable).

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>

#include "cycform/suites.hpp"

using namespace cycform;

namespace {

int emit(const json& report, const std::string& out_path) {
    std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path);
        if (!f) {
            std::cerr << "cannot open output path: " << out_path << "\n";
            return 2;
        }
        f << text;
    }
    return 0;
}

json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open input file: " + path);
    json j;
    f >> j;
    return j;
}

Polynomial parse_log_density(const std::string& spec, int dim) {
    if (spec.empty() || spec == "zero") return Polynomial(dim);
    return polynomial_from_json(json::parse(spec));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cycform: cyclic Hochschild / formality verification engine"};
    app.require_subcommand(1);

    // shared options
    int dim = 2, trials = 20, max_poly_degree = 2, max_degree = 3, workers = 1;
    long long samples = 200000;
    std::uint64_t seed = 1;
    std::string out_path, log_density_spec = "zero";

    auto add_common = [&](CLI::App* sub, bool mc) {
        sub->add_option("--dim", dim, "ambient dimension");
        sub->add_option("--seed", seed, "deterministic seed");
        sub->add_option("--out", out_path, "write the JSON report to a file");
        sub->add_option("--log-density", log_density_spec,
                        "volume form log-density: 'zero' or a polynomial JSON");
        if (mc) {
            sub->add_option("--samples", samples, "Monte Carlo samples per weight");
            sub->add_option("--jobs", workers, "worker threads (fixed count => deterministic)");
        }
    };

    // verify
    auto* verify = app.add_subcommand("verify", "run a named verification suite");
    std::string suite;
    verify->add_option("--suite", suite,
                       "algebra|hochschild|cyclic|bicomplex|hkr|chainmap|weights-n1|linf-n2|star")
        ->required();
    verify->add_option("--trials", trials, "randomized trials");
    verify->add_option("--max-poly-degree", max_poly_degree, "coefficient degree bound");
    verify->add_option("--max-degree", max_degree, "arity / polyvector degree bound");
    add_common(verify, true);

    // hkr-cycl
    auto* hkrc = app.add_subcommand("hkr-cycl", "apply the cyclic HKR map to a polyvector");
    std::string input_path;
    int u_power = 0;
    hkrc->add_option("--input", input_path, "polyvector JSON file")->required();
    hkrc->add_option("--u-power", u_power, "u-power k of the input");
    add_common(hkrc, false);

    // weights
    auto* weights = app.add_subcommand("weights", "Monte Carlo weights of admissible graphs");
    std::string graph_path;
    int wn = 1, wm = 1, wk = 0;
    weights->add_option("--graph", graph_path, "single graph JSON file");
    weights->add_option("--n", wn, "first-type vertices");
    weights->add_option("--m", wm, "second-type vertices");
    weights->add_option("--k", wk, "dashed pairs");
    add_common(weights, true);

    // star
    auto* star = app.add_subcommand("star", "build and check a cyclically invariant star product");
    std::string poisson_path, checks = "assoc,cyc,trace";
    int order = 1;
    star->add_option("--poisson", poisson_path, "Poisson bivector JSON file")->required();
    star->add_option("--order", order, "truncation order (<= 2)");
    star->add_option("--checks", checks, "comma list: assoc,cyc,trace");
    add_common(star, true);

    // linf
    auto* linf = app.add_subcommand("linf", "L-infinity relation residual");
    int ln = 1, lm = 2;
    std::vector<std::string> eta_paths;
    linf->add_option("--n", ln, "number of inputs (1 or 2)");
    linf->add_option("--m", lm, "output arity (n = 2)");
    linf->add_option("--eta", eta_paths, "u-element JSON files (n of them)");
    add_common(linf, true);

    CLI11_PARSE(app, argc, argv);
    auto t0 = std::chrono::steady_clock::now();
    int code = 0;

    try {
        if (*verify) {
            SuiteConfig cfg;
            cfg.suite = suite;
            cfg.dim = dim;
            cfg.trials = trials;
            cfg.max_poly_degree = max_poly_degree;
            cfg.max_degree = max_degree;
            cfg.seed = seed;
            cfg.samples = samples;
            cfg.workers = workers;
            cfg.log_density = parse_log_density(log_density_spec, dim);
            auto records = run_suite(cfg);
            code = emit(make_report(cfg, records), out_path);
            if (code == 0 && !all_ok(records)) code = 1;
        } else if (*hkrc) {
            PolyVector pv = polyvector_from_json(load_json(input_path));
            VolumeForm vol{pv.dim(), parse_log_density(log_density_spec, pv.dim())};
            PolyDiffOp op = cyclic_hkr(pv, u_power, vol);
            code = emit(to_json(op), out_path);
        } else if (*weights) {
            json report = json::array();
            bool any = false;
            if (!graph_path.empty()) {
                AdmissibleGraph g = graph_from_json(load_json(graph_path));
                auto w = weight_mc_cached(g, samples, seed, workers);
                report.push_back({{"graph", to_json(g)}, {"weight", to_json(w)}});
                any = true;
            } else {
                for (auto& g : enumerate_admissible(wn, wm, wk)) {
                    auto w = weight_mc_cached(g, samples, graph_seed(seed, g), workers);
                    report.push_back({{"graph", to_json(g)}, {"weight", to_json(w)}});
                    any = true;
                }
            }
            if (!any) throw std::invalid_argument("no graphs to estimate");
            code = emit({{"weights", report}, {"conventions", conventions()}}, out_path);
        } else if (*star) {
            PolyVector gamma = polyvector_from_json(load_json(poisson_path));
            VolumeForm vol{gamma.dim(), parse_log_density(log_density_spec, gamma.dim())};
            auto pois = check_poisson(gamma, vol);
            if (!pois.ok()) {
                json diag = {{"error", "input rejected"},
                             {"jacobi_ok", pois.jacobi_ok},
                             {"div_free", pois.div_free},
                             {"hint", "need [gamma,gamma] = 0 and div(gamma) = 0"}};
                emit(diag, out_path);
                return 1;
            }
            auto s = mc_series(gamma, vol, order, samples, seed, workers);
            json rep{{"order", order}, {"B1", to_json(s.b1)}, {"checks", json::array()}};
            bool ok = true;
            auto want = [&](const std::string& c) {
                return checks.find(c) != std::string::npos;
            };
            if (want("assoc")) {
                PolyDiffOp m = mult_op(s.dim);
                bool a1 = (compose_into_slot(s.b1, 0, m) - compose_into_slot(s.b1, 1, m) +
                           compose_into_slot(m, 0, s.b1) - compose_into_slot(m, 1, s.b1))
                              .is_zero();
                rep["checks"].push_back({{"name", "associativity_order1_exact"}, {"ok", a1}});
                ok = ok && a1;
                if (order >= 2) {
                    auto r2 = mc_associativity_order2(s);
                    bool a2 = r2.consistent_with_zero(3.0);
                    rep["checks"].push_back({{"name", "associativity_order2_mc"},
                                             {"ok", a2},
                                             {"worst_sigma_ratio", r2.worst_sigma_ratio}});
                    ok = ok && a2;
                }
            }
            if (want("cyc") || want("trace")) {
                StarProduct exact1{s.dim, 1, {s.b1}};
                if (want("cyc")) {
                    bool c1 = cyclicity_residual(exact1, 1, vol).is_zero();
                    rep["checks"].push_back({{"name", "cyclicity_order1_exact"}, {"ok", c1}});
                    ok = ok && c1;
                }
                if (want("trace")) {
                    bool t1 = trace_residual(exact1, 1, vol).is_zero();
                    rep["checks"].push_back({{"name", "trace_order1_exact"}, {"ok", t1}});
                    ok = ok && t1;
                }
            }
            rep["conventions"] = conventions();
            code = emit(rep, out_path);
            if (code == 0 && !ok) code = 1;
        } else if (*linf) {
            std::vector<UPolyElement> etas;
            for (auto& p : eta_paths) etas.push_back(uelement_from_json(load_json(p)));
            if (static_cast<int>(etas.size()) != ln)
                throw std::invalid_argument("need exactly n --eta inputs");
            int vdim = etas.at(0).dim();
            VolumeForm vol{vdim, parse_log_density(log_density_spec, vdim)};
            auto rep = linf_residual(ln, etas, lm, vol, samples, seed, workers);
            json j{{"n", ln},
                   {"m", lm},
                   {"exact_zero", rep.exact_zero},
                   {"worst_sigma_ratio", rep.worst_sigma_ratio},
                   {"coefficients", rep.coefficient_count},
                   {"conventions", conventions()}};
            code = emit(j, out_path);
            bool ok = ln == 1 ? rep.exact_zero : rep.consistent_with_zero(3.0);
            if (code == 0 && !ok) code = 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "json error: " << e.what() << "\n";
        return 2;
    }

    auto dt = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::cerr << "wall_time_ms " << dt << "\n";
    return code;
}

// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.

#include <chrono>
#include <iostream>

#include "cycform/suites.hpp"

using namespace cycform;

namespace {

int failures = 0;

void report(int num, const std::string& what, bool ok, const std::string& note = "") {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << num << ": " << what;
    if (!note.empty()) std::cout << "  (" << note << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

bool records_ok(const std::vector<CheckRecord>& recs, const std::string& prefix,
                std::string* why = nullptr) {
    bool ok = true;
    bool any = false;
    for (auto& r : recs)
        if (r.name.rfind(prefix, 0) == 0) {
            any = true;
            if (!r.ok) {
                ok = false;
                if (why) *why += r.name + " ";
            }
        }
    return any && ok;
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::to_string(std::chrono::duration_cast<std::chrono::seconds>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count()) +
               "s";
    };

    // ---- criterion 1: golden closed forms, d <= 3, both volume forms -------
    {
        bool ok = true;
        std::string why;
        for (int d : {2, 3}) {
            SuiteConfig cfg;
            cfg.suite = "hkr";
            cfg.dim = d;
            cfg.trials = 3;
            cfg.seed = 11 + d;
            auto recs = suite_hkr(cfg);
            ok = ok && records_ok(recs, "golden_", &why);
        }
        report(1, "golden closed forms 2.2 (i)-(v), d <= 3, both volume forms", ok, why);
    }

    // ---- criterion 2: structural identities, >= 50 samples each ------------
    {
        bool ok = true;
        std::string why;
        for (int d : {2, 3}) {
            SuiteConfig cfg;
            cfg.dim = d;
            cfg.trials = d == 2 ? 30 : 22;  // x both volumes x arities >= 50 samples per identity
            cfg.max_degree = 4;
            cfg.max_poly_degree = 3;
            cfg.seed = 100 + d;
            auto h = suite_hochschild(cfg);
            for (auto& name : {"d_squared_zero", "d_equals_bracket_with_m", "mm_bracket_zero",
                               "dK_squared_zero", "homotopy_eq18"})
                ok = ok && records_ok(h, name, &why);
            SuiteConfig ccfg = cfg;
            ccfg.max_degree = d == 2 ? 4 : 3;
            ccfg.trials = d == 2 ? 13 : 7;
            auto c = suite_cyclic(ccfg);
            for (auto& name : {"C_periodicity", "one_minus_C_annihilates_sigma",
                               "cyclic_closed_under_d", "cyclic_closed_under_bracket",
                               "sigma_defect_identity"})
                ok = ok && records_ok(c, name, &why);
            auto b = suite_bicomplex(ccfg);
            ok = ok && records_ok(b, "star", &why) && records_ok(b, "squares_on_m", &why);
            SuiteConfig acfg = cfg;
            acfg.trials = 8;  // x (p,q) pairs x volumes >= 50 each
            auto a = suite_algebra(acfg);
            for (auto& name : {"lemma_1_3_1", "d_div_squared_zero",
                               "d_div_derivation_over_u_bracket", "schouten_graded_antisymmetry",
                               "schouten_graded_jacobi"})
                ok = ok && records_ok(a, name, &why);
        }
        report(2, "structural identities (d^2, d=[m,.], Eq.18, C-periodicity, squares, 1.3.1, Eq.29)",
               ok, why + elapsed());
    }

    // ---- criterion 3: Theorem 2.3 chain map, >= 100 instances --------------
    {
        int instances = 0;
        bool ok = true;
        for (int d : {2, 3}) {
            SuiteConfig cfg;
            cfg.suite = "chainmap";
            cfg.dim = d;
            cfg.max_degree = 3;
            cfg.max_poly_degree = 2;
            cfg.trials = d == 2 ? 18 : 12;  // trials/6 reps per (ell,k) cell
            cfg.seed = 200 + d;
            auto recs = suite_chainmap(cfg);
            for (auto& r : recs) {
                ok = ok && r.ok;
                if (r.details.contains("instances")) instances += r.details["instances"].get<int>();
            }
        }
        report(3, "Theorem 2.3 chain map residual exactly zero", ok && instances >= 100,
               std::to_string(instances) + " instances, " + elapsed());
    }

    // ---- criterion 4: graph lemmas ------------------------------------------
    {
        SuiteConfig cfg;
        cfg.suite = "hkr";
        cfg.dim = 2;
        cfg.trials = 3;
        cfg.seed = 300;
        auto recs = suite_hkr(cfg);
        std::string why;
        bool ok = records_ok(recs, "shorten_graph_coboundary", &why) &&
                  records_ok(recs, "line_graph_operators_cocycles", &why) &&
                  records_ok(recs, "lemma_2_5_1", &why) && records_ok(recs, "lemma_2_5_2", &why);
        report(4, "Lemma 2.4.1 coboundary/cocycle (l+2k <= 5) and Lemmas 2.5.1/2.5.2 (l+2k <= 4)",
               ok, why + elapsed());
    }

    // ---- criterion 5: enumeration counts ------------------------------------
    {
        SuiteConfig cfg;
        cfg.suite = "hkr";
        cfg.dim = 2;
        cfg.trials = 1;
        cfg.seed = 400;
        auto recs = suite_hkr(cfg);
        std::string why;
        bool ok = records_ok(recs, "count_gamma_2_1", &why) &&
                  records_ok(recs, "count_gamma_1_1", &why) &&
                  records_ok(recs, "count_gamma_ell_0", &why) &&
                  records_ok(recs, "enumeration_matches_brute_force", &why);
        report(5, "enumeration counts |Gamma(2,1)|=4, |Gamma(1,1)|=3, |Gamma(l,0)|=1 vs brute force",
               ok, why);
    }

    // ---- criterion 6: n = 1 weight recovery at >= 2e5 samples ---------------
    {
        SuiteConfig cfg;
        cfg.suite = "weights-n1";
        cfg.samples = 200000;
        cfg.seed = 500;
        cfg.workers = 4;
        auto recs = suite_weights_n1(cfg);
        std::string why;
        bool ok = true;
        for (auto& r : recs) {
            if (!r.ok) why += r.name + " ";
            ok = ok && r.ok;
        }
        report(6, "n=1 Monte Carlo weights reproduce the Taylor coefficients within 3 sigma", ok,
               why + elapsed());
    }

    // ---- criterion 7: L-infinity residual ------------------------------------
    {
        SuiteConfig cfg;
        cfg.suite = "linf-n2";
        cfg.samples = 1000000;
        cfg.seed = 600;
        cfg.workers = 4;
        cfg.trials = 8;
        auto recs = suite_linf_n2(cfg);
        std::string why;
        bool ok = true;
        for (auto& r : recs) {
            if (!r.ok) {
                why += r.name + " ";
                if (r.details.contains("alert")) why += "[" + r.details["alert"].get<std::string>() + "] ";
            }
            ok = ok && r.ok;
        }
        report(7, "L-infinity relation: n=1 exact zero; n=2 residuals within 3 sigma at 1e6 samples",
               ok, why + elapsed());
    }

    // ---- criterion 8: quantization -------------------------------------------
    {
        SuiteConfig cfg;
        cfg.suite = "star";
        cfg.samples = 1000000;
        cfg.seed = 700;
        cfg.workers = 4;
        auto recs = suite_star(cfg);
        std::string why;
        bool ok = true;
        for (auto& r : recs) {
            if (!r.ok) why += r.name + " ";
            ok = ok && r.ok;
        }
        report(8, "Moyal exact through order 2; mc_series matches cyclic HKR and the Moyal oracle",
               ok, why + elapsed());
    }

    std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed"
                                : "ACCEPTANCE: " + std::to_string(failures) + " criteria FAILED")
              << std::endl;
    return failures == 0 ? 0 : 1;
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cycform/suites.hpp"

using namespace cycform;

TEST_CASE("reports are byte-identical for fixed config, seed and workers") {
    SuiteConfig cfg;
    cfg.suite = "algebra";
    cfg.trials = 5;
    cfg.seed = 99;
    auto r1 = make_report(cfg, run_suite(cfg));
    auto r2 = make_report(cfg, run_suite(cfg));
    CHECK(r1.dump() == r2.dump());

    SuiteConfig wcfg;
    wcfg.suite = "weights-n1";
    wcfg.samples = 20000;
    wcfg.seed = 7;
    wcfg.workers = 2;
    auto w1 = make_report(wcfg, run_suite(wcfg));
    auto w2 = make_report(wcfg, run_suite(wcfg));
    CHECK(w1.dump() == w2.dump());
}

TEST_CASE("report carries resolved conventions and an all_ok flag") {
    SuiteConfig cfg;
    cfg.suite = "algebra";
    cfg.trials = 3;
    auto rep = make_report(cfg, run_suite(cfg));
    CHECK(rep.contains("conventions"));
    CHECK(rep["all_ok"].is_boolean());
    CHECK(rep["checks"].is_array());
    CHECK(rep["conventions"].contains("divergence"));
}

TEST_CASE("unknown suite is a usage error") {
    SuiteConfig cfg;
    cfg.suite = "nonsense";
    CHECK_THROWS_AS(run_suite(cfg), std::invalid_argument);
}

#pragma once

#include <string>

#include "cycform/json_io.hpp"

namespace cycform {

struct SuiteConfig {
    std::string suite;
    int dim = 2;
    int max_poly_degree = 2;
    int max_degree = 3;  // arity / polyvector degree bound
    int trials = 20;
    std::uint64_t seed = 1;
    Polynomial log_density;  // empty -> standard volume form only
    bool both_volumes = true;
    long long samples = 200000;
    int workers = 1;

    VolumeForm standard_vol() const { return VolumeForm::standard(dim); }
    /// deterministic generic polynomial log-density for the second volume form
    VolumeForm generic_vol() const {
        if (!log_density.is_zero()) return VolumeForm{dim, log_density};
        return VolumeForm{dim, random_polynomial(dim, 2, seed ^ 0x5eedf00dULL)};
    }
};

struct CheckRecord {
    std::string name;
    bool ok = false;
    json details;  // counterexample / estimate / notes
};

/// Runs one named suite: algebra | hochschild | cyclic | bicomplex | hkr |
/// chainmap | weights-n1 | linf-n2 | star.
std::vector<CheckRecord> run_suite(const SuiteConfig& cfg);

/// Deterministic JSON report (wall time goes to stderr, not into the report).
json make_report(const SuiteConfig& cfg, const std::vector<CheckRecord>& records);

bool all_ok(const std::vector<CheckRecord>& records);

// Individual suites (shared by `verify`, the unit tests and the acceptance runner).
std::vector<CheckRecord> suite_algebra(const SuiteConfig&);
std::vector<CheckRecord> suite_hochschild(const SuiteConfig&);
std::vector<CheckRecord> suite_cyclic(const SuiteConfig&);
std::vector<CheckRecord> suite_bicomplex(const SuiteConfig&);
std::vector<CheckRecord> suite_hkr(const SuiteConfig&);
std::vector<CheckRecord> suite_chainmap(const SuiteConfig&);
std::vector<CheckRecord> suite_weights_n1(const SuiteConfig&);
std::vector<CheckRecord> suite_linf_n2(const SuiteConfig&);
std::vector<CheckRecord> suite_star(const SuiteConfig&);

}  // namespace cycform

#pragma once

#include <map>
#include <mutex>

#include "cycform/graphs.hpp"

namespace cycform {

/// Monte Carlo estimate of a configuration-space weight.
struct WeightEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long long samples = 0;
    std::uint64_t seed = 0;
};

/// Weight W_Gamma of Eq. 35: combinatorial prefactors times the integral of
/// the wedge of pullback angle 1-forms over the gauge-fixed slice of
/// C^+_{n,m}, estimated by mixture-importance Monte Carlo.
///
/// Gauges: m>=2: q_1 = 0, q_m = 1, interior q's free; m = 1: q_1 = 0,
/// p_1 = e^{i pi t}; m = 0: p_1 = i. Slice orientation: coordinate order
/// (p-pairs in vertex order, interior q ascending) times (-1)^{#interior q}.
/// Throws if form degree != slice dimension.
WeightEstimate weight_mc(const AdmissibleGraph& g, long long samples, std::uint64_t seed,
                         int workers = 1);

/// Process-wide cache keyed by (canonical graph, samples, seed, workers).
WeightEstimate weight_mc_cached(const AdmissibleGraph& g, long long samples, std::uint64_t seed,
                                int workers = 1);

/// Deterministic per-graph seed derived from a master seed.
std::uint64_t graph_seed(std::uint64_t master, const AdmissibleGraph& g);

/// The harmonic angle phi(p, z) = arg((z-p)/(z-pbar)) and its gradient.
struct AngleGrad {
    double phi, dpx, dpy, dzx, dzy;
};
AngleGrad harmonic_angle(double px, double py, double zx, double zy);

}  // namespace cycform

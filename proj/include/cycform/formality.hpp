#pragma once

#include <functional>

#include "cycform/linegraph.hpp"
#include "cycform/montecarlo.hpp"

namespace cycform {

/// Linear combination  sum_G  W_G * op_G  of exact operators with independent
/// Monte Carlo weights. Symbolic transforms are applied per part exactly, so
/// statistical errors propagate linearly to every output coefficient.
struct WeightedOpSum {
    int dim = 0;
    int arity = 0;
    struct Part {
        PolyDiffOp op;
        WeightEstimate weight;
    };
    std::vector<Part> parts;
    PolyDiffOp exact;  // optional exact summand (zero-weight-error)

    WeightedOpSum() = default;
    WeightedOpSum(int d, int a) : dim(d), arity(a), exact(d, a) {}

    bool empty() const { return parts.empty() && exact.is_zero(); }

    /// apply an exact linear operator transform to every summand
    WeightedOpSum map(const std::function<PolyDiffOp(const PolyDiffOp&)>& f) const {
        WeightedOpSum r;
        r.dim = dim;
        r.exact = f(exact);
        r.arity = r.exact.arity();
        for (auto& p : parts) r.parts.push_back({f(p.op), p.weight});
        return r;
    }

    void add_exact(const PolyDiffOp& op) { exact = exact + op; }

    WeightedOpSum operator+(const WeightedOpSum& o) const {
        WeightedOpSum r = *this;
        r.exact = r.exact + o.exact;
        for (auto& p : o.parts) r.parts.push_back(p);
        return r;
    }

    /// central value of one coefficient
    double value(const SlotList& slots, const MultiIndex& mon) const {
        auto coeff = [&](const PolyDiffOp& op) {
            auto it = op.terms().find(slots);
            if (it == op.terms().end()) return 0.0;
            auto jt = it->second.terms().find(mon);
            return jt == it->second.terms().end() ? 0.0 : to_double(jt->second);
        };
        double v = coeff(exact);
        for (auto& p : parts) v += p.weight.value * coeff(p.op);
        return v;
    }

    /// evaluate all coefficients with propagated standard errors
    std::map<std::pair<SlotList, MultiIndex>, std::pair<double, double>> coefficients() const {
        std::map<std::pair<SlotList, MultiIndex>, std::pair<double, double>> out;
        auto visit = [&](const PolyDiffOp& op, double w, double sig) {
            for (auto& [slots, poly] : op.terms())
                for (auto& [mon, c] : poly.terms()) {
                    auto& cell = out[{slots, mon}];
                    double cd = to_double(c);
                    cell.first += w * cd;
                    cell.second += sig * sig * cd * cd;  // variance accumulates
                }
        };
        visit(exact, 1.0, 0.0);
        for (auto& p : parts) visit(p.op, p.weight.value, p.weight.std_error);
        for (auto& [k, v] : out) v.second = std::sqrt(v.second);
        return out;
    }

    /// max over coefficients of |value| / max(sigma, floor); also reports worst cell
    double max_sigma_ratio(double sigma_floor = 1e-12) const {
        double worst = 0.0;
        auto coeffs = coefficients();
        for (auto& [k, v] : coeffs) {
            double r = std::abs(v.first) / std::max(v.second, sigma_floor);
            if (std::abs(v.first) < 1e-12 && v.second < sigma_floor) continue;
            worst = std::max(worst, r);
        }
        return worst;
    }
};

/// Taylor component C~_n at fixed output arity m: the weighted sum of graph
/// operators over all admissible graphs matching the input profile. Weights
/// are Monte Carlo estimates with per-graph seeds derived from `seed`.
inline WeightedOpSum taylor_component(int n, const std::vector<std::pair<int, PolyVector>>& etas,
                                      int m, long long samples, std::uint64_t seed,
                                      int workers = 1) {
    if (static_cast<int>(etas.size()) != n)
        throw std::invalid_argument("taylor_component: need n etas");
    int d = etas.empty() ? 0 : etas[0].second.dim();
    int k = 0;
    for (auto& [kv, pv] : etas) k += kv;
    WeightedOpSum out(d, m);
    if (2 * n + m < 2 || 2 * n + m - 2 * k - 2 < 0) return out;
    for (auto& g : enumerate_admissible(n, m, k)) {
        bool profile = true;
        for (int v = 1; v <= n && profile; ++v)
            profile = g.star_size(v) == etas[v - 1].second.degree() &&
                      g.dashed_count(v) == etas[v - 1].first;
        if (!profile) continue;
        PolyDiffOp op = graph_operator(g, etas);
        if (op.is_zero()) continue;
        WeightEstimate w = weight_mc_cached(g, samples, graph_seed(seed, g), workers);
        out.parts.push_back({std::move(op), w});
    }
    return out;
}

/// C_n = [Sigma] o C~_n.
inline WeightedOpSum cyclic_component(int n, const std::vector<std::pair<int, PolyVector>>& etas,
                                      int m, const VolumeForm& vol, long long samples,
                                      std::uint64_t seed, int workers = 1) {
    auto tc = taylor_component(n, etas, m, samples, seed, workers);
    return tc.map([&](const PolyDiffOp& op) { return sigma_projector(op, vol); });
}

/// Coefficient-wise residual with propagated MC errors.
struct ResidualReport {
    bool exact_zero = false;                    // n = 1 path
    double worst_sigma_ratio = 0.0;             // max |value|/sigma over coefficients
    double worst_value = 0.0;
    std::size_t coefficient_count = 0;
    bool consistent_with_zero(double nsigma) const {
        return exact_zero || worst_sigma_ratio <= nsigma;
    }
};

/// L-infinity relation residual.
/// n = 1: exact arithmetic; equals the Theorem 2.3 chain-map residual and must
/// be identically zero. n = 2: with the conventions of this library the
/// relation reads, for inputs with d_div eta_i = 0 and [eta_1, eta_2] = 0:
///   d_Hoch(C_2(eta_1, eta_2)) + [C_1 eta_1, C_1 eta_2] = 0,
/// and in general acquires the exact terms C_1(u_bracket) and the MC terms on
/// d_div-shifted profiles (same signs as the n = 1 sector).
inline ResidualReport linf_residual(int n, const std::vector<UPolyElement>& etas, int m,
                                    const VolumeForm& vol, long long samples, std::uint64_t seed,
                                    int workers = 1) {
    ResidualReport rep;
    if (n == 1) {
        // homogeneous pieces have distinct arities, so each must vanish on its own
        rep.exact_zero = true;
        for (auto& [k, pv] : etas.at(0).terms())
            if (!chain_map_residual(pv, k, vol).is_zero()) rep.exact_zero = false;
        return rep;
    }
    if (n != 2) throw std::invalid_argument("linf_residual: only n = 1, 2 supported");

    auto homog = [](const UPolyElement& e) {
        if (e.terms().size() != 1)
            throw std::invalid_argument("linf_residual: homogeneous u-terms required");
        auto& [k, pv] = *e.terms().begin();
        return std::make_pair(k, pv);
    };
    auto [k1, g1] = homog(etas.at(0));
    auto [k2, g2] = homog(etas.at(1));

    WeightedOpSum R(vol.dim, m);
    // d_Hoch of the arity-(m-1) piece of C_2
    if (m >= 1) {
        auto c2 = cyclic_component(2, {{k1, g1}, {k2, g2}}, m - 1, vol, samples, seed, workers);
        R = R + c2.map([](const PolyDiffOp& op) { return hochschild_d(op); });
    }
    // [C_1 eta_1, C_1 eta_2] at arity m
    PolyDiffOp c1a = cyclic_hkr(g1, k1, vol);
    PolyDiffOp c1b = cyclic_hkr(g2, k2, vol);
    if (c1a.arity() + c1b.arity() - 1 == m) R.add_exact(gerstenhaber(c1a, c1b));
    // exact C_1 of the bracket
    UPolyElement br = u_bracket(UPolyElement(k1, g1), UPolyElement(k2, g2));
    for (auto& [kb, pb] : br.terms())
        if (pb.degree() - 1 + 2 * kb + 1 == m) R.add_exact(cyclic_hkr(pb, kb, vol));
    // MC terms on d_div-shifted profiles
    PolyVector dgam1 = divergence(g1, vol);
    PolyVector dgam2 = divergence(g2, vol);
    if (!dgam1.is_zero())
        R = R + cyclic_component(2, {{k1 + 1, dgam1}, {k2, g2}}, m, vol, samples, seed, workers);
    if (!dgam2.is_zero())
        R = R + cyclic_component(2, {{k1, g1}, {k2 + 1, dgam2}}, m, vol, samples, seed, workers);

    auto coeffs = R.coefficients();
    rep.coefficient_count = coeffs.size();
    for (auto& [key, vs] : coeffs) {
        double ratio = std::abs(vs.first) / std::max(vs.second, 1e-12);
        if (ratio > rep.worst_sigma_ratio) {
            rep.worst_sigma_ratio = ratio;
            rep.worst_value = vs.first;
        }
    }
    return rep;
}

}  // namespace cycform

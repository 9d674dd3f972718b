#pragma once

#include "cycform/formality.hpp"

namespace cycform {

/// Star product f*g = fg + sum_r hbar^r B_r(f,g), hbar a formal bookkeeping
/// grade. corrections[r-1] = B_r, all arity 2.
struct StarProduct {
    int dim = 0;
    int order = 0;
    std::vector<PolyDiffOp> corrections;

    static StarProduct undeformed(int d) { return {d, 0, {}}; }

    const PolyDiffOp& correction(int r) const { return corrections.at(r - 1); }
    /// B_0 is the plain multiplication
    PolyDiffOp term(int r) const { return r == 0 ? mult_op(dim) : corrections.at(r - 1); }
};

/// Gauge transformation T = 1 + hbar T_1 + ... ; corrections all arity 1.
struct GaugeTransform {
    int dim = 0;
    int order = 0;
    std::vector<PolyDiffOp> corrections;
};

/// n-th term of the Moyal series of a constant bivector: B_n = (1/n!) P^n where
/// P(f,g) = (1/2) gamma^{ij} d_i f d_j g; normalized so B_1 = hkr(gamma).
inline PolyDiffOp moyal_order(const PolyVector& gamma, int n) {
    if (gamma.degree() != 2) throw std::invalid_argument("moyal_order: need a bivector");
    int d = gamma.dim();
    for (auto& [I, c] : gamma.components())
        if (c.total_degree() > 0) throw std::invalid_argument("moyal_order: gamma must be constant");
    if (n == 0) return mult_op(d);
    PolyDiffOp bn(d, 2);
    // iterate over n index pairs
    std::vector<int> idx(2 * n, 0);
    while (true) {
        Rational c = 1;
        for (int t = 0; t < n; ++t) {
            Polynomial e = gamma.skew_entry({idx[2 * t], idx[2 * t + 1]});
            if (e.is_zero()) {
                c = 0;
                break;
            }
            c *= e.terms().begin()->second;
        }
        if (c != 0) {
            MultiIndex a = zero_index(d), b = zero_index(d);
            for (int t = 0; t < n; ++t) {
                a[idx[2 * t]] += 1;
                b[idx[2 * t + 1]] += 1;
            }
            bn.add_term({a, b}, Polynomial::constant(d, c));
        }
        int i = 0;
        while (i < 2 * n) {
            idx[i] += 1;
            if (idx[i] < d) break;
            idx[i] = 0;
            ++i;
        }
        if (i == 2 * n) break;
    }
    Rational pref = 1 / factorial(n);
    for (int t = 0; t < n; ++t) pref /= 2;
    return pref * bn;
}

/// Moyal star product of a constant bivector, truncated at `order`.
inline StarProduct moyal_star(const PolyVector& gamma, int order) {
    StarProduct s{gamma.dim(), order, {}};
    for (int r = 1; r <= order; ++r) s.corrections.push_back(moyal_order(gamma, r));
    return s;
}

/// Coefficient of hbar^r in (f*g)*h - f*(g*h).
inline PolyDiffOp associativity_residual(const StarProduct& s, int r) {
    if (r > s.order) throw std::invalid_argument("associativity_residual: order exceeded");
    PolyDiffOp res(s.dim, 3);
    for (int a = 0; a <= r; ++a) {
        int b = r - a;
        // B_a(B_b(f,g), h) - B_a(f, B_b(g,h))
        res = res + compose_into_slot(s.term(a), 0, s.term(b)) -
              compose_into_slot(s.term(a), 1, s.term(b));
    }
    return res;
}

/// Per-order normal form of int (f*g) h Omega - int (g*h) f Omega.
inline DensityNormalForm cyclicity_residual(const StarProduct& s, int r, const VolumeForm& vol) {
    detail::RawDensity dens;
    dens.dim = s.dim;
    dens.n_slots = 3;
    MultiIndex z = zero_index(s.dim);
    PolyDiffOp br = s.term(r);
    for (auto& [slots, c] : br.terms()) {
        dens.add({slots[0], slots[1], z}, c);   // B_r(f,g) * h
        dens.add({z, slots[0], slots[1]}, -c);  // - B_r(g,h) * f
    }
    return detail::normalize(dens, vol);
}

/// Per-order normal form of int (f*g) Omega - int f g Omega.
inline DensityNormalForm trace_residual(const StarProduct& s, int r, const VolumeForm& vol) {
    detail::RawDensity dens;
    dens.dim = s.dim;
    dens.n_slots = 2;
    if (r >= 1) {
        PolyDiffOp br = s.term(r);
        for (auto& [slots, c] : br.terms()) dens.add({slots[0], slots[1]}, c);
    }
    return detail::normalize(dens, vol);
}

/// Substitute h = 1 in a 3-slot cyclicity normal form; used for the structural
/// identity trace = cyclicity|_{h=1} (valid when B_r(., 1) = 0).
inline DensityNormalForm specialize_last_slot(const DensityNormalForm& nf) {
    DensityNormalForm out;
    out.dim = nf.dim;
    out.n_slots = nf.n_slots - 1;
    out.vol = nf.vol;
    MultiIndex z = zero_index(nf.dim);
    for (auto& [slots, c] : nf.terms) {
        if (slots.back() != z) continue;
        SlotList s(slots.begin(), slots.end() - 1);
        auto it = out.terms.find(s);
        if (it == out.terms.end()) out.terms.emplace(s, c);
        else {
            it->second = it->second + c;
            if (it->second.is_zero()) out.terms.erase(it);
        }
    }
    return out;
}

/// Formal inverse of T order by order: S_0 = id, S_r = -sum_{a=1..r} T_a o S_{r-a}.
inline std::vector<PolyDiffOp> gauge_inverse(const GaugeTransform& t) {
    int d = t.dim;
    PolyDiffOp id(d, 1);
    id.add_term({zero_index(d)}, Polynomial::constant(d, 1));
    std::vector<PolyDiffOp> S{id};
    for (int r = 1; r <= t.order; ++r) {
        PolyDiffOp s(d, 1);
        for (int a = 1; a <= r; ++a)
            s = s - compose_into_slot(t.corrections[a - 1], 0, S[r - a]);
        S.push_back(s);
    }
    return S;
}

/// f*'g = T(T^{-1}(f) * T^{-1}(g)) through order min(s.order, t.order).
inline StarProduct gauge_transform(const StarProduct& s, const GaugeTransform& t) {
    if (s.dim != t.dim) throw std::invalid_argument("gauge_transform: dimension mismatch");
    int N = std::min(s.order, t.order);
    int d = s.dim;
    auto S = gauge_inverse(t);
    PolyDiffOp id(d, 1);
    id.add_term({zero_index(d)}, Polynomial::constant(d, 1));
    auto T_of = [&](int r) { return r == 0 ? id : t.corrections.at(r - 1); };
    StarProduct out{d, N, {}};
    for (int r = 1; r <= N; ++r) {
        PolyDiffOp br(d, 2);
        for (int a = 0; a <= r; ++a)
            for (int e = 0; a + e <= r; ++e)
                for (int b = 0; a + e + b <= r; ++b) {
                    int c = r - a - e - b;
                    PolyDiffOp inner = compose_into_slot(s.term(e), 0, S[b]);
                    inner = compose_into_slot(inner, 1, S[c]);
                    br = br + compose_into_slot(T_of(a), 0, inner);
                }
        out.corrections.push_back(br);
    }
    return out;
}

/// Maurer-Cartan star product of a divergence-free Poisson bivector:
/// B_1 = C_1(gamma) exact, B_2 = (1/2) C_2(gamma, gamma) Monte Carlo.
struct McStarProduct {
    int dim = 0;
    int order = 0;
    PolyDiffOp b1;
    WeightedOpSum b2;  // already includes the 1/2 prefactor
};

inline McStarProduct mc_series(const PolyVector& gamma, const VolumeForm& vol, int order,
                               long long samples, std::uint64_t seed, int workers = 1) {
    if (order < 0 || order > 2) throw std::invalid_argument("mc_series: order must be <= 2");
    auto rep = check_poisson(gamma, vol);
    if (!rep.ok()) throw std::invalid_argument("mc_series: input is not a divergence-free Poisson bivector");
    McStarProduct s;
    s.dim = gamma.dim();
    s.order = order;
    if (order >= 1) s.b1 = cyclic_hkr(gamma, 0, vol);
    if (order >= 2) {
        auto c2 = cyclic_component(2, {{0, gamma}, {0, gamma}}, 2, vol, samples, seed, workers);
        s.b2 = c2.map([](const PolyDiffOp& op) { return Rational(1, 2) * op; });
    }
    return s;
}

/// hbar^2 associativity residual of an MC star product, with errors:
/// L(B_2) + B_1(B_1(f,g),h) - B_1(f,B_1(g,h)) where
/// L(X) = X(fg,h) - X(f,gh) + X(f,g)h... assembled via insertion composition.
inline ResidualReport mc_associativity_order2(const McStarProduct& s) {
    PolyDiffOp m = mult_op(s.dim);
    auto L = [&](const PolyDiffOp& x) {
        return compose_into_slot(x, 0, m) - compose_into_slot(x, 1, m) +
               compose_into_slot(m, 0, x) - compose_into_slot(m, 1, x);
    };
    WeightedOpSum R = s.b2.map(L);
    R.add_exact(compose_into_slot(s.b1, 0, s.b1) - compose_into_slot(s.b1, 1, s.b1));
    ResidualReport rep;
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

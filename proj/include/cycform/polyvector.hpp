#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cycform/polynomial.hpp"

namespace cycform {

// Index tuple of wedge factors, strictly increasing.
using IndexTuple = std::vector<int>;

/// Sign of the permutation sorting idx, or 0 if it has duplicates.
/// Returns {sign, sorted tuple}.
inline std::pair<int, IndexTuple> sort_sign(IndexTuple idx) {
    int n = static_cast<int>(idx.size());
    int sign = 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (idx[i] == idx[j]) return {0, {}};
            if (idx[i] > idx[j]) sign = -sign;
        }
    std::sort(idx.begin(), idx.end());
    return {sign, idx};
}

/// Antisymmetric polyvector field of fixed degree k (number of wedge factors,
/// grading i = k-1). Components keyed by strictly increasing index tuples;
/// k = 0 stores a single polynomial under the empty tuple.
class PolyVector {
public:
    PolyVector() : dim_(0), degree_(0) {}
    PolyVector(int dim, int degree) : dim_(dim), degree_(degree) {}

    static PolyVector function(const Polynomial& f) {
        PolyVector v(f.dim(), 0);
        if (!f.is_zero()) v.comps_[{}] = f;
        return v;
    }
    /// coordinate vector field d/dx_i
    static PolyVector basis_vector(int dim, int i) {
        PolyVector v(dim, 1);
        v.comps_[{i}] = Polynomial::constant(dim, 1);
        return v;
    }
    /// the top polyvector d/dx_1 ^ ... ^ d/dx_d  (theta_k's polyvector part)
    static PolyVector top(int dim) {
        PolyVector v(dim, dim);
        IndexTuple all(dim);
        for (int i = 0; i < dim; ++i) all[i] = i;
        v.comps_[all] = Polynomial::constant(dim, 1);
        return v;
    }

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    bool is_zero() const { return comps_.empty(); }
    const std::map<IndexTuple, Polynomial>& components() const { return comps_; }

    Polynomial component(const IndexTuple& I) const {
        auto it = comps_.find(I);
        return it == comps_.end() ? Polynomial(dim_) : it->second;
    }

    void add_component(const IndexTuple& I, const Polynomial& p) {
        if (p.is_zero()) return;
        auto it = comps_.find(I);
        if (it == comps_.end()) {
            comps_.emplace(I, p);
        } else {
            it->second = it->second + p;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }

    /// skew tensor entry gamma^{T} for an arbitrary ordered tuple T
    Polynomial skew_entry(const IndexTuple& T) const {
        auto [s, K] = sort_sign(T);
        if (s == 0) return Polynomial(dim_);
        auto it = comps_.find(K);
        if (it == comps_.end()) return Polynomial(dim_);
        return Rational(s) * it->second;
    }

    bool operator==(const PolyVector& o) const {
        return dim_ == o.dim_ && degree_ == o.degree_ && comps_ == o.comps_;
    }
    bool operator!=(const PolyVector& o) const { return !(*this == o); }

    friend PolyVector operator+(const PolyVector& a, const PolyVector& b) {
        if (a.dim_ != b.dim_ || a.degree_ != b.degree_)
            throw std::invalid_argument("polyvector shape mismatch");
        PolyVector r = a;
        for (auto& [I, p] : b.comps_) r.add_component(I, p);
        return r;
    }
    friend PolyVector operator*(const Rational& c, const PolyVector& a) {
        PolyVector r(a.dim_, a.degree_);
        if (c == 0) return r;
        for (auto& [I, p] : a.comps_) r.comps_[I] = c * p;
        return r;
    }
    PolyVector operator-() const { return Rational(-1) * (*this); }
    friend PolyVector operator-(const PolyVector& a, const PolyVector& b) {
        return a + (Rational(-1) * b);
    }

private:
    int dim_;
    int degree_;
    std::map<IndexTuple, Polynomial> comps_;
};

/// Volume form Omega = e^{phi} dx_1 ^ ... ^ dx_d with polynomial log-density phi.
struct VolumeForm {
    int dim = 0;
    Polynomial log_density;  // default 0: the standard volume form

    static VolumeForm standard(int d) { return {d, Polynomial(d)}; }
    static VolumeForm with_log_density(const Polynomial& phi) { return {phi.dim(), phi}; }
    bool is_standard() const { return log_density.is_zero(); }
};

inline PolyVector wedge(const PolyVector& a, const PolyVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("wedge: dimension mismatch");
    PolyVector r(a.dim(), a.degree() + b.degree());
    if (a.degree() + b.degree() > a.dim()) return r;
    for (auto& [I, p] : a.components())
        for (auto& [J, q] : b.components()) {
            IndexTuple IJ = I;
            IJ.insert(IJ.end(), J.begin(), J.end());
            auto [s, K] = sort_sign(IJ);
            if (s == 0) continue;
            r.add_component(K, Rational(s) * (p * q));
        }
    return r;
}

namespace detail {

/// [xi_1 ^..^ xi_p, eta_1 ^..^ eta_q] in the convention matching the
/// Gerstenhaber bracket through the HKR map on the nose:
///   (-1)^{(p-1)(q-1)} sum_{r,s} (-1)^{r+s} [xi_r, eta_s] ^ rest   (1-indexed),
/// coefficients carried by the first factor of each component term.
inline PolyVector schouten_positive(const PolyVector& a, const PolyVector& b) {
    int d = a.dim();
    int p = a.degree(), q = b.degree();
    PolyVector r(d, p + q - 1);
    for (auto& [I, A] : a.components())
        for (auto& [J, B] : b.components()) {
            // r = 1, s = 1
            {
                IndexTuple rest;
                rest.insert(rest.end(), I.begin() + 1, I.end());
                rest.insert(rest.end(), J.begin() + 1, J.end());
                IndexTuple t1 = {J[0]};
                t1.insert(t1.end(), rest.begin(), rest.end());
                auto [s1, K1] = sort_sign(t1);
                if (s1 != 0) r.add_component(K1, Rational(s1) * (A * partial_derivative(B, I[0])));
                IndexTuple t2 = {I[0]};
                t2.insert(t2.end(), rest.begin(), rest.end());
                auto [s2, K2] = sort_sign(t2);
                if (s2 != 0) r.add_component(K2, Rational(-s2) * (B * partial_derivative(A, J[0])));
            }
            // r = 1, s >= 2: (-1)^s (d_{j_s} A) B on [i_1] + I' + (J \ j_s)
            for (int s = 2; s <= q; ++s) {
                Polynomial co = partial_derivative(A, J[s - 1]) * B;
                if (co.is_zero()) continue;
                IndexTuple t = {I[0]};
                t.insert(t.end(), I.begin() + 1, I.end());
                for (int u = 0; u < q; ++u)
                    if (u != s - 1) t.push_back(J[u]);
                auto [sg, K] = sort_sign(t);
                if (sg != 0) r.add_component(K, Rational(sg * ((s % 2 == 0) ? 1 : -1)) * co);
            }
            // r >= 2, s = 1: (-1)^{r+1} A (d_{i_r} B) on [j_1] + (I \ i_r) + J'
            for (int t_r = 2; t_r <= p; ++t_r) {
                Polynomial co = A * partial_derivative(B, I[t_r - 1]);
                if (co.is_zero()) continue;
                IndexTuple t = {J[0]};
                for (int u = 0; u < p; ++u)
                    if (u != t_r - 1) t.push_back(I[u]);
                t.insert(t.end(), J.begin() + 1, J.end());
                auto [sg, K] = sort_sign(t);
                if (sg != 0) r.add_component(K, Rational(sg * ((t_r % 2 == 0) ? -1 : 1)) * co);
            }
        }
    return r;
}

/// [a, f] for a function f:  (-1)^{p-1} sum_r (-1)^{r+1} A d_{i_r}(f) e[I \ i_r]
inline PolyVector schouten_with_function(const PolyVector& a, const Polynomial& f) {
    int p = a.degree();
    PolyVector r(a.dim(), p - 1);
    for (auto& [I, A] : a.components())
        for (int ri = 1; ri <= p; ++ri) {
            Polynomial co = A * partial_derivative(f, I[ri - 1]);
            if (co.is_zero()) continue;
            IndexTuple rest;
            for (int u = 0; u < p; ++u)
                if (u != ri - 1) rest.push_back(I[u]);
            r.add_component(rest, Rational((ri % 2 == 1) ? 1 : -1) * co);
        }
    return ((p - 1) % 2 == 0) ? r : -r;
}

}  // namespace detail

/// Schouten-Nijenhuis bracket; degree p + q - 1, grading |a| = p - 1.
/// Reduces to the Lie bracket on vector fields; all signs pinned by the
/// HKR - Gerstenhaber compatibility oracle (see tests).
inline PolyVector schouten_bracket(const PolyVector& a, const PolyVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("schouten: dimension mismatch");
    int p = a.degree(), q = b.degree();
    if (p == 0 && q == 0) return PolyVector(a.dim(), 0);
    if (q == 0) return detail::schouten_with_function(a, b.component({}));
    if (p == 0) {
        // graded antisymmetry: [f, b] = -(-1)^{(p-1)(q-1)} [b, f] = (-1)^q [b, f]
        PolyVector bf = detail::schouten_with_function(b, a.component({}));
        return (q % 2 == 0) ? bf : -bf;
    }
    return detail::schouten_positive(a, b);
}

/// Divergence with respect to Omega = e^{phi} dx. Degree drops by one;
/// a function maps to 0. For a vector field: sum_i (d_i xi^i + xi^i d_i phi).
/// On a p-vector the operator is (-1)^{p+1} times the Omega-conjugated de Rham
/// differential taken with the contraction anchor iota_{e_I} dx = sgn(I, I^c) dx_{I^c};
/// the degree sign is the one making the cyclic HKR map a chain map.
inline PolyVector divergence(const PolyVector& a, const VolumeForm& vol) {
    if (a.dim() != vol.dim) throw std::invalid_argument("divergence: dimension mismatch");
    int d = a.dim();
    int p = a.degree();
    PolyVector r(d, p > 0 ? p - 1 : 0);
    if (p == 0) return r;

    auto shuffle_sign = [&](const IndexTuple& I) {
        // sign of the permutation (I, I^c) of (0..d-1)
        std::vector<int> arr = I;
        for (int x = 0; x < d; ++x)
            if (std::find(I.begin(), I.end(), x) == I.end()) arr.push_back(x);
        int sign = 1;
        for (size_t i = 0; i < arr.size(); ++i)
            for (size_t j = i + 1; j < arr.size(); ++j)
                if (arr[i] > arr[j]) sign = -sign;
        return sign;
    };

    for (auto& [I, A] : a.components()) {
        int eI = shuffle_sign(I);
        for (int t : I) {
            Polynomial co = partial_derivative(A, t);
            if (!vol.log_density.is_zero()) co = co + A * partial_derivative(vol.log_density, t);
            if (co.is_zero()) continue;
            // dx_t ^ dx_{I^c} reordering sign
            int below = 0;
            for (int u = 0; u < d; ++u)
                if (u < t && std::find(I.begin(), I.end(), u) == I.end()) ++below;
            int s1 = (below % 2 == 0) ? 1 : -1;
            IndexTuple Kc;
            for (int u : I)
                if (u != t) Kc.push_back(u);
            int eK = shuffle_sign(Kc);
            r.add_component(Kc, Rational(eI * s1 * eK) * co);
        }
    }
    return ((p + 1) % 2 == 0) ? r : -r;
}

/// Element of T_poly tensor C[u], deg u = 2: a list of (u-power, polyvector)
/// with distinct u-powers.
class UPolyElement {
public:
    UPolyElement() : dim_(0) {}
    explicit UPolyElement(int dim) : dim_(dim) {}
    UPolyElement(int u_power, const PolyVector& pv) : dim_(pv.dim()) { add_term(u_power, pv); }

    int dim() const { return dim_; }
    const std::map<int, PolyVector>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(int u_power, const PolyVector& pv) {
        if (pv.is_zero()) return;
        if (pv.dim() != dim_) throw std::invalid_argument("u-term dimension mismatch");
        auto it = terms_.find(u_power);
        if (it == terms_.end()) {
            terms_.emplace(u_power, pv);
        } else {
            if (it->second.degree() != pv.degree())
                throw std::invalid_argument("u-term degree clash at equal u-power");
            it->second = it->second + pv;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    bool operator==(const UPolyElement& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }

private:
    int dim_;
    std::map<int, PolyVector> terms_;  // u-power -> polyvector
};

/// d_div(gamma tensor u^k) = div(gamma) tensor u^{k+1}
inline UPolyElement d_div(const UPolyElement& e, const VolumeForm& vol) {
    UPolyElement r(e.dim());
    for (auto& [k, pv] : e.terms()) {
        PolyVector dv = divergence(pv, vol);
        if (!dv.is_zero()) r.add_term(k + 1, dv);
    }
    return r;
}

/// [g1 u^{k1}, g2 u^{k2}] = [g1, g2] u^{k1+k2}, bilinear.
inline UPolyElement u_bracket(const UPolyElement& a, const UPolyElement& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("u_bracket: dimension mismatch");
    UPolyElement r(a.dim());
    for (auto& [k1, g1] : a.terms())
        for (auto& [k2, g2] : b.terms()) {
            PolyVector br = schouten_bracket(g1, g2);
            if (!br.is_zero()) r.add_term(k1 + k2, br);
        }
    return r;
}

struct PoissonReport {
    bool jacobi_ok = false;
    bool div_free = false;
    bool ok() const { return jacobi_ok && div_free; }
};

/// Maurer-Cartan conditions for a bivector: [g, g] = 0 and div(g) = 0.
inline PoissonReport check_poisson(const PolyVector& gamma, const VolumeForm& vol) {
    if (gamma.degree() != 2) throw std::invalid_argument("check_poisson: degree must be 2");
    PoissonReport rep;
    rep.jacobi_ok = schouten_bracket(gamma, gamma).is_zero();
    rep.div_free = divergence(gamma, vol).is_zero();
    return rep;
}

/// Deterministic random polyvector of the given degree.
inline PolyVector random_polyvector(int dim, int degree, int max_poly_degree, std::uint64_t seed) {
    PolyVector v(dim, degree);
    if (degree > dim) return v;
    std::vector<int> idx(degree);
    // iterate over increasing tuples
    for (int i = 0; i < degree; ++i) idx[i] = i;
    std::uint64_t salt = 0;
    while (true) {
        Polynomial p = random_polynomial(dim, max_poly_degree, seed ^ (0xabcdef12345ULL + salt * 7919));
        v.add_component(idx, p);
        ++salt;
        // next increasing tuple
        int i = degree - 1;
        while (i >= 0 && idx[i] == dim - degree + i) --i;
        if (i < 0) break;
        idx[i] += 1;
        for (int j = i + 1; j < degree; ++j) idx[j] = idx[j - 1] + 1;
    }
    return v;
}

}  // namespace cycform

#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "cycform/rational.hpp"

namespace cycform {

// Exponent vector of a monomial; length = ambient dimension of the context.
using MultiIndex = std::vector<int>;

inline int order(const MultiIndex& m) {
    int s = 0;
    for (int e : m) s += e;
    return s;
}

inline MultiIndex zero_index(int dim) { return MultiIndex(dim, 0); }

inline MultiIndex unit_index(int dim, int axis) {
    MultiIndex m(dim, 0);
    m[axis] = 1;
    return m;
}

/// Sparse multivariate polynomial over Q. No zero coefficients stored; every
/// key has length dim, so equality is structural equality of the term map.
class Polynomial {
public:
    Polynomial() : dim_(0) {}
    explicit Polynomial(int dim) : dim_(dim) {}
    Polynomial(int dim, const Rational& c) : dim_(dim) {
        if (c != 0) terms_[zero_index(dim)] = c;
    }

    static Polynomial constant(int dim, const Rational& c) { return Polynomial(dim, c); }
    static Polynomial variable(int dim, int axis) {
        Polynomial p(dim);
        p.terms_[unit_index(dim, axis)] = 1;
        return p;
    }
    static Polynomial monomial(int dim, const MultiIndex& m, const Rational& c) {
        Polynomial p(dim);
        if (c != 0) p.terms_[m] = c;
        return p;
    }

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<MultiIndex, Rational>& terms() const { return terms_; }

    void add_term(const MultiIndex& m, const Rational& c) {
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (c != 0) terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    int total_degree() const {
        int d = 0;
        for (auto& [m, c] : terms_) d = std::max(d, order(m));
        return d;
    }

    bool operator==(const Polynomial& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        check_dims(a, b);
        Polynomial r = a;
        for (auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        check_dims(a, b);
        Polynomial r = a;
        for (auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        check_dims(a, b);
        Polynomial r(a.dim_);
        for (auto& [m1, c1] : a.terms_)
            for (auto& [m2, c2] : b.terms_) {
                MultiIndex m(a.dim_);
                for (int i = 0; i < a.dim_; ++i) m[i] = m1[i] + m2[i];
                r.add_term(m, c1 * c2);
            }
        return r;
    }
    friend Polynomial operator*(const Rational& c, const Polynomial& a) {
        Polynomial r(a.dim_);
        if (c == 0) return r;
        for (auto& [m, v] : a.terms_) r.terms_[m] = c * v;
        return r;
    }
    Polynomial operator-() const { return Rational(-1) * (*this); }

private:
    static void check_dims(const Polynomial& a, const Polynomial& b) {
        if (a.dim_ != b.dim_) throw std::invalid_argument("polynomial dimension mismatch");
    }
    int dim_;
    std::map<MultiIndex, Rational> terms_;
};

/// Formal d/dx_i.
inline Polynomial partial_derivative(const Polynomial& p, int axis) {
    if (axis < 0 || axis >= p.dim()) throw std::out_of_range("axis out of range");
    Polynomial r(p.dim());
    for (auto& [m, c] : p.terms()) {
        if (m[axis] == 0) continue;
        MultiIndex m2 = m;
        m2[axis] -= 1;
        r.add_term(m2, c * m[axis]);
    }
    return r;
}

inline Polynomial derivative_multi(const Polynomial& p, const MultiIndex& mi) {
    Polynomial r = p;
    for (int i = 0; i < static_cast<int>(mi.size()); ++i)
        for (int k = 0; k < mi[i]; ++k) r = partial_derivative(r, i);
    return r;
}

/// Deterministic pseudo-random polynomial of total degree <= max_degree with
/// small rational coefficients. Same (dim, max_degree, seed) gives identical output.
inline Polynomial random_polynomial(int dim, int max_degree, std::uint64_t seed) {
    if (max_degree < 0) throw std::invalid_argument("max_degree must be >= 0");
    SplitMix64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x853c49e6748fea9bULL + dim * 1315423911ULL +
                   max_degree * 2654435761ULL);
    Polynomial p(dim);
    // walk all monomials of total degree <= max_degree
    MultiIndex m(dim, 0);
    bool first_term = true;
    while (true) {
        if (rng.next() % 2 == 0 || first_term) {
            Rational c(rng.range(-9, 9), rng.range(1, 3));
            if (c != 0) {
                p.add_term(m, c);
                first_term = false;
            }
        }
        // next monomial in the degree-bounded box
        int i = 0;
        while (i < dim) {
            m[i] += 1;
            if (order(m) <= max_degree) break;
            m[i] = 0;
            ++i;
        }
        if (i == dim) break;
    }
    return p;
}

}  // namespace cycform

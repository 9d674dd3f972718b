#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "cycform/polyvector.hpp"

namespace cycform {

// One derivative multi-index per argument slot.
using SlotList = std::vector<MultiIndex>;

/// Multilinear polydifferential operator of fixed arity n:
///   (f_1,..,f_n) -> sum coeff * prod_j d^{slots[j]} f_j.
/// Arity 0 is a plain polynomial (grading i = n - 1). Like terms merged,
/// zero coefficients dropped, so equality is structural.
class PolyDiffOp {
public:
    PolyDiffOp() : dim_(0), arity_(0) {}
    PolyDiffOp(int dim, int arity) : dim_(dim), arity_(arity) {}

    static PolyDiffOp constant(const Polynomial& p) {
        PolyDiffOp op(p.dim(), 0);
        op.add_term({}, p);
        return op;
    }

    int dim() const { return dim_; }
    int arity() const { return arity_; }
    /// Hochschild grading i = arity - 1
    int grading() const { return arity_ - 1; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<SlotList, Polynomial>& terms() const { return terms_; }

    void add_term(const SlotList& slots, const Polynomial& coeff) {
        if (coeff.is_zero()) return;
        if (static_cast<int>(slots.size()) != arity_)
            throw std::invalid_argument("slot count != arity");
        auto it = terms_.find(slots);
        if (it == terms_.end()) {
            terms_.emplace(slots, coeff);
        } else {
            it->second = it->second + coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    bool operator==(const PolyDiffOp& o) const {
        return dim_ == o.dim_ && arity_ == o.arity_ && terms_ == o.terms_;
    }
    bool operator!=(const PolyDiffOp& o) const { return !(*this == o); }

    friend PolyDiffOp operator+(const PolyDiffOp& a, const PolyDiffOp& b) {
        if (a.dim_ != b.dim_ || a.arity_ != b.arity_)
            throw std::invalid_argument("operator shape mismatch");
        PolyDiffOp r = a;
        for (auto& [s, c] : b.terms_) r.add_term(s, c);
        return r;
    }
    friend PolyDiffOp operator-(const PolyDiffOp& a, const PolyDiffOp& b) {
        return a + (Rational(-1) * b);
    }
    friend PolyDiffOp operator*(const Rational& c, const PolyDiffOp& a) {
        PolyDiffOp r(a.dim_, a.arity_);
        if (c == 0) return r;
        for (auto& [s, v] : a.terms_) r.terms_[s] = c * v;
        return r;
    }
    PolyDiffOp operator-() const { return Rational(-1) * (*this); }

private:
    int dim_;
    int arity_;
    std::map<SlotList, Polynomial> terms_;
};

/// Evaluate on polynomial arguments.
inline Polynomial apply(const PolyDiffOp& op, const std::vector<Polynomial>& args) {
    if (static_cast<int>(args.size()) != op.arity())
        throw std::invalid_argument("apply: wrong argument count");
    Polynomial out(op.dim());
    for (auto& [slots, c] : op.terms()) {
        Polynomial v = c;
        for (int j = 0; j < op.arity(); ++j) {
            if (args[j].dim() != op.dim()) throw std::invalid_argument("apply: dimension mismatch");
            v = v * derivative_multi(args[j], slots[j]);
        }
        out = out + v;
    }
    return out;
}

/// m(a, b) = a * b
inline PolyDiffOp mult_op(int dim) {
    PolyDiffOp m(dim, 2);
    m.add_term({zero_index(dim), zero_index(dim)}, Polynomial::constant(dim, 1));
    return m;
}

namespace detail {

/// All splittings of mi into `parts` multi-indices with multinomial coefficients.
inline void splits_rec(const MultiIndex& mi, int parts, int axis, SlotList& cur,
                       Rational coeff, std::vector<std::pair<SlotList, Rational>>& out) {
    // distribute axis-by-axis; cur holds partially built parts
    if (axis == static_cast<int>(mi.size())) {
        out.emplace_back(cur, coeff);
        return;
    }
    // compositions of mi[axis] into `parts` non-negative integers
    std::vector<int> comp(parts, 0);
    comp[0] = mi[axis];
    auto emit = [&]() {
        Integer mult = 1;  // multinomial mi[axis]! / prod comp!
        {
            Integer num = 1;
            for (int i = 2; i <= mi[axis]; ++i) num *= i;
            Integer den = 1;
            for (int c : comp)
                for (int i = 2; i <= c; ++i) den *= i;
            mult = num / den;
        }
        for (int p = 0; p < parts; ++p) cur[p][axis] = comp[p];
        splits_rec(mi, parts, axis + 1, cur, coeff * Rational(mult), out);
        for (int p = 0; p < parts; ++p) cur[p][axis] = 0;
    };
    // enumerate compositions
    while (true) {
        emit();
        // next composition: move one unit
        int i = 0;
        while (i < parts - 1 && comp[i] == 0) ++i;
        if (i == parts - 1) break;
        comp[i + 1] += 1;
        int head = comp[i] - 1;
        comp[i] = 0;
        comp[0] = head;
    }
}

inline std::vector<std::pair<SlotList, Rational>> multi_splits(const MultiIndex& mi, int parts) {
    std::vector<std::pair<SlotList, Rational>> out;
    SlotList cur(parts, MultiIndex(mi.size(), 0));
    splits_rec(mi, parts, 0, cur, 1, out);
    return out;
}

}  // namespace detail

/// Substitute inner's output into slot i of outer (0-indexed). The slot's
/// multi-index Leibniz-distributes over inner's coefficient and slots.
inline PolyDiffOp compose_into_slot(const PolyDiffOp& outer, int i, const PolyDiffOp& inner) {
    if (outer.dim() != inner.dim()) throw std::invalid_argument("compose: dimension mismatch");
    int n2 = inner.arity();
    PolyDiffOp res(outer.dim(), outer.arity() + n2 - 1);
    for (auto& [slots1, c1] : outer.terms()) {
        const MultiIndex& beta = slots1[i];
        for (auto& [slots2, c2] : inner.terms()) {
            for (auto& [parts, mco] : detail::multi_splits(beta, n2 + 1)) {
                Polynomial dc2 = derivative_multi(c2, parts[0]);
                if (dc2.is_zero()) continue;
                SlotList ns;
                ns.reserve(outer.arity() + n2 - 1);
                for (int u = 0; u < i; ++u) ns.push_back(slots1[u]);
                for (int j = 0; j < n2; ++j) {
                    MultiIndex m = slots2[j];
                    for (size_t ax = 0; ax < m.size(); ++ax) m[ax] += parts[j + 1][ax];
                    ns.push_back(std::move(m));
                }
                for (int u = i + 1; u < outer.arity(); ++u) ns.push_back(slots1[u]);
                res.add_term(ns, mco * (c1 * dc2));
            }
        }
    }
    return res;
}

/// Insertion sum (a o b)(x_0..x_{k1+k2}) = sum_i (-1)^{i k2} a(.., b(x_i,..), ..).
inline PolyDiffOp insertion_compose(const PolyDiffOp& a, const PolyDiffOp& b) {
    int k1 = a.grading(), k2 = b.grading();
    PolyDiffOp out(a.dim(), std::max(a.arity() + b.arity() - 1, 0));
    for (int i = 0; i <= k1; ++i) {
        Rational s = ((i * k2) % 2 == 0) ? 1 : -1;
        out = out + s * compose_into_slot(a, i, b);
    }
    return out;
}

/// Gerstenhaber bracket [a, b] = (-1)^{k1 k2} a o b - b o a; reduces to the Lie
/// bracket on arity-1 operators, and d = [m, .] is the Hochschild differential.
inline PolyDiffOp gerstenhaber(const PolyDiffOp& a, const PolyDiffOp& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("gerstenhaber: dimension mismatch");
    int k1 = a.grading(), k2 = b.grading();
    Rational s = ((k1 * k2) % 2 == 0) ? 1 : -1;
    return s * insertion_compose(a, b) - insertion_compose(b, a);
}

/// Hochschild differential:
///   (d psi)(a_1..a_{n+1}) = a_1 psi(a_2..) + sum (-1)^i psi(.. a_i a_{i+1} ..)
///                           + (-1)^{n+1} psi(a_1..a_n) a_{n+1};
/// equals gerstenhaber(mult_op, psi) on the nose.
inline PolyDiffOp hochschild_d(const PolyDiffOp& op) {
    int n = op.arity(), d = op.dim();
    PolyDiffOp res(d, n + 1);
    MultiIndex z = zero_index(d);
    for (auto& [slots, c] : op.terms()) {
        SlotList s0 = {z};
        s0.insert(s0.end(), slots.begin(), slots.end());
        res.add_term(s0, c);
        SlotList sl = slots;
        sl.push_back(z);
        res.add_term(sl, ((n + 1) % 2 == 0) ? c : -c);
    }
    for (int i = 1; i <= n; ++i) {
        Rational si = (i % 2 == 0) ? 1 : -1;
        for (auto& [slots, c] : op.terms()) {
            for (auto& [ab, mco] : detail::multi_splits(slots[i - 1], 2)) {
                SlotList ns;
                ns.reserve(n + 1);
                for (int u = 0; u < i - 1; ++u) ns.push_back(slots[u]);
                ns.push_back(ab[0]);
                ns.push_back(ab[1]);
                for (int u = i; u < n; ++u) ns.push_back(slots[u]);
                res.add_term(ns, (si * mco) * c);
            }
        }
    }
    return res;
}

/// K-complex differential: the Hochschild differential without its last term.
inline PolyDiffOp d_K(const PolyDiffOp& op) {
    int n = op.arity(), d = op.dim();
    PolyDiffOp res(d, n + 1);
    MultiIndex z = zero_index(d);
    for (auto& [slots, c] : op.terms()) {
        SlotList s0 = {z};
        s0.insert(s0.end(), slots.begin(), slots.end());
        res.add_term(s0, c);
    }
    for (int i = 1; i <= n; ++i) {
        Rational si = (i % 2 == 0) ? 1 : -1;
        for (auto& [slots, c] : op.terms()) {
            for (auto& [ab, mco] : detail::multi_splits(slots[i - 1], 2)) {
                SlotList ns;
                ns.reserve(n + 1);
                for (int u = 0; u < i - 1; ++u) ns.push_back(slots[u]);
                ns.push_back(ab[0]);
                ns.push_back(ab[1]);
                for (int u = i; u < n; ++u) ns.push_back(slots[u]);
                res.add_term(ns, (si * mco) * c);
            }
        }
    }
    return res;
}

/// Cup product: arity-additive concatenation.
inline PolyDiffOp cup(const PolyDiffOp& a, const PolyDiffOp& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("cup: dimension mismatch");
    PolyDiffOp r(a.dim(), a.arity() + b.arity());
    for (auto& [s1, c1] : a.terms())
        for (auto& [s2, c2] : b.terms()) {
            SlotList s = s1;
            s.insert(s.end(), s2.begin(), s2.end());
            r.add_term(s, c1 * c2);
        }
    return r;
}

/// HKR map: 1/k! Alt xi_1(f_1)...xi_k(f_k) on wedges; componentwise via the skew tensor.
inline PolyDiffOp hkr(const PolyVector& gamma) {
    int k = gamma.degree(), d = gamma.dim();
    if (k == 0) return PolyDiffOp::constant(gamma.component({}));
    PolyDiffOp r(d, k);
    Rational pref = 1 / factorial(k);
    std::vector<int> T(k, 0);
    while (true) {
        Polynomial entry = gamma.skew_entry(T);
        if (!entry.is_zero()) {
            SlotList slots;
            slots.reserve(k);
            for (int j = 0; j < k; ++j) slots.push_back(unit_index(d, T[j]));
            r.add_term(slots, pref * entry);
        }
        int i = 0;
        while (i < k) {
            T[i] += 1;
            if (T[i] < d) break;
            T[i] = 0;
            ++i;
        }
        if (i == k) break;
    }
    return r;
}

/// Substitute the unit in the last slot: keep terms whose last multi-index is zero.
inline PolyDiffOp homotopy_h(const PolyDiffOp& op) {
    if (op.arity() < 1) throw std::invalid_argument("homotopy_h: arity 0");
    PolyDiffOp r(op.dim(), op.arity() - 1);
    MultiIndex z = zero_index(op.dim());
    for (auto& [slots, c] : op.terms()) {
        if (slots.back() == z) r.add_term(SlotList(slots.begin(), slots.end() - 1), c);
    }
    return r;
}

/// Deterministic random operator for property suites; each slot carries a
/// multi-index of total order <= max_order.
inline PolyDiffOp random_operator(int dim, int arity, int max_order, int max_poly_degree,
                                  std::uint64_t seed, int nterms = 3) {
    SplitMix64 rng(seed * 0x2545f4914f6cdd1dULL + arity * 977 + dim);
    PolyDiffOp op(dim, arity);
    for (int t = 0; t < nterms; ++t) {
        SlotList slots;
        for (int j = 0; j < arity; ++j) {
            MultiIndex m(dim);
            int o = static_cast<int>(rng.range(0, max_order));
            for (int u = 0; u < o; ++u) m[rng.range(0, dim - 1)] += 1;
            slots.push_back(m);
        }
        op.add_term(slots, random_polynomial(dim, max_poly_degree, rng.next()));
    }
    return op;
}

}  // namespace cycform

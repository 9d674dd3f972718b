#pragma once

#include <deque>

#include "cycform/polydiffop.hpp"

namespace cycform {

/// Canonical representative of a multilinear density
///   sum coeff * prod_j d^{slots[j]} f_j,
/// integrated against Omega = e^{phi} dx, modulo total derivatives: slot 0
/// carries no derivatives. For compactly supported test functions the
/// coefficient-to-functional map is injective, so equality of normal forms
/// decides equality "under the integral".
struct DensityNormalForm {
    int dim = 0;
    int n_slots = 0;
    VolumeForm vol;
    std::map<SlotList, Polynomial> terms;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const DensityNormalForm& o) const {
        return dim == o.dim && n_slots == o.n_slots && terms == o.terms;
    }
};

namespace detail {

struct RawDensity {
    int dim = 0;
    int n_slots = 0;
    std::map<SlotList, Polynomial> terms;

    void add(const SlotList& s, const Polynomial& c) {
        if (c.is_zero()) return;
        auto it = terms.find(s);
        if (it == terms.end()) {
            terms.emplace(s, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
};

/// Repeated integration by parts until slot 0 is derivative-free:
///   int (d_i G) H e^phi = -int G (d_i H + (d_i phi) H) e^phi.
inline DensityNormalForm normalize(RawDensity dens, const VolumeForm& vol) {
    DensityNormalForm out;
    out.dim = dens.dim;
    out.n_slots = dens.n_slots;
    out.vol = vol;
    MultiIndex z = zero_index(dens.dim);
    // merging worklist: like terms combine as soon as they appear, which keeps
    // the repeated integration by parts polynomial-sized
    std::map<SlotList, Polynomial> work(dens.terms.begin(), dens.terms.end());
    std::map<SlotList, Polynomial> done;
    auto deposit = [](std::map<SlotList, Polynomial>& target, const SlotList& s, Polynomial c) {
        if (c.is_zero()) return;
        auto it = target.find(s);
        if (it == target.end()) {
            target.emplace(s, std::move(c));
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) target.erase(it);
        }
    };
    while (!work.empty()) {
        auto node = work.extract(work.begin());
        SlotList slots = std::move(node.key());
        Polynomial c = std::move(node.mapped());
        if (c.is_zero()) continue;
        if (slots[0] == z) {
            deposit(done, slots, std::move(c));
            continue;
        }
        int ax = 0;
        while (slots[0][ax] == 0) ++ax;
        SlotList base = slots;
        base[0][ax] -= 1;
        Polynomial dc = partial_derivative(c, ax);
        if (!vol.log_density.is_zero()) dc = dc + c * partial_derivative(vol.log_density, ax);
        deposit(work, base, -dc);
        for (int j = 1; j < dens.n_slots; ++j) {
            SlotList s2 = base;
            s2[j][ax] += 1;
            deposit(work, s2, -c);
        }
    }
    out.terms = std::move(done);
    return out;
}

inline RawDensity pairing_density(const PolyDiffOp& op) {
    RawDensity d;
    d.dim = op.dim();
    d.n_slots = op.arity() + 1;
    MultiIndex z = zero_index(op.dim());
    for (auto& [slots, c] : op.terms()) {
        SlotList s = slots;
        s.push_back(z);
        d.terms.emplace(std::move(s), c);
    }
    return d;
}

}  // namespace detail

/// Normal form of the pairing density op(f_1..f_n) * f_{n+1} * Omega.
inline DensityNormalForm density_normal_form(const PolyDiffOp& op, const VolumeForm& vol) {
    if (op.dim() != vol.dim) throw std::invalid_argument("density: dimension mismatch");
    return detail::normalize(detail::pairing_density(op), vol);
}

/// Cyclic shift: the unique operator with
///   int psi(f_1..f_n) f_{n+1} Omega = (-1)^n int (C psi)(f_2..f_{n+1}) f_1 Omega.
inline PolyDiffOp cyclic_shift(const PolyDiffOp& op, const VolumeForm& vol) {
    DensityNormalForm nf = density_normal_form(op, vol);
    int n = op.arity();
    PolyDiffOp r(op.dim(), n);
    Rational s = (n % 2 == 0) ? 1 : -1;
    for (auto& [slots, c] : nf.terms)
        r.add_term(SlotList(slots.begin() + 1, slots.end()), s * c);
    return r;
}

/// Sigma = 1 + C + ... + C^{i+1}, i = arity - 1.
inline PolyDiffOp sigma(const PolyDiffOp& op, const VolumeForm& vol) {
    PolyDiffOp acc = op;
    PolyDiffOp cur = op;
    for (int r = 0; r < op.arity(); ++r) {
        cur = cyclic_shift(cur, vol);
        acc = acc + cur;
    }
    return acc;
}

/// [Sigma] = Sigma / (i+2), the idempotent projector onto cyclic operators.
inline PolyDiffOp sigma_projector(const PolyDiffOp& op, const VolumeForm& vol) {
    return (Rational(1) / Rational(op.arity() + 1)) * sigma(op, vol);
}

inline bool is_cyclic(const PolyDiffOp& op, const VolumeForm& vol) {
    return cyclic_shift(op, vol) == op;
}

struct BicomplexReport {
    bool star1_ok = false;  // (1-C) d_Hoch = d_K (1-C)
    bool star2_ok = false;  // d_Hoch Sigma = Sigma d_K
    bool ok() const { return star1_ok && star2_ok; }
};

/// Commutativity of the two bicomplex squares on a given operator.
inline BicomplexReport bicomplex_square_check(const PolyDiffOp& op, const VolumeForm& vol) {
    BicomplexReport rep;
    PolyDiffOp dH = hochschild_d(op);
    PolyDiffOp lhs1 = dH - cyclic_shift(dH, vol);
    PolyDiffOp rhs1 = d_K(op - cyclic_shift(op, vol));
    rep.star1_ok = (lhs1 == rhs1);
    rep.star2_ok = (hochschild_d(sigma(op, vol)) == sigma(d_K(op), vol));
    return rep;
}

/// The explicit defect cochain phi of Lemma 2.4.2: term r (r = 0..k+1) places
/// psi on the cyclic block starting at slot r and multiplies the two leftover
/// adjacent slots; odd-r terms carry (-1)^{k-1}.
inline PolyDiffOp sigma_defect(const PolyDiffOp& op) {
    if (op.arity() < 1) throw std::invalid_argument("sigma_defect: arity must be >= 1");
    int n = op.arity(), d = op.dim();
    int N = n + 2;
    PolyDiffOp res(d, N);
    MultiIndex z = zero_index(d);
    Rational eps = ((n - 1) % 2 == 0) ? 1 : -1;
    for (int r = 0; r < N; ++r) {
        Rational s = (r % 2 == 0) ? Rational(1) : eps;
        for (auto& [slots, c] : op.terms()) {
            SlotList ns(N, z);
            for (int j = 0; j < n; ++j) ns[(r + j) % N] = slots[j];
            res.add_term(ns, s * c);
        }
    }
    return res;
}

inline PolyDiffOp sigma_defect(const PolyDiffOp& op, const VolumeForm&) { return sigma_defect(op); }

/// Resolved Lemma 2.4.2 identity, as densities in normal form:
///   pairing(d_Hoch Sigma psi - Sigma d_Hoch psi) = (-1)^k pairing-density(sigma_defect psi).
inline bool sigma_defect_identity_holds(const PolyDiffOp& psi, const VolumeForm& vol) {
    int k = psi.arity();
    PolyDiffOp defect = hochschild_d(sigma(psi, vol)) - sigma(hochschild_d(psi), vol);
    DensityNormalForm lhs = density_normal_form(defect, vol);
    detail::RawDensity rhs;
    rhs.dim = psi.dim();
    rhs.n_slots = k + 2;
    Rational s = (k % 2 == 0) ? 1 : -1;
    PolyDiffOp defect29 = sigma_defect(psi);
    for (auto& [slots, c] : defect29.terms()) rhs.add(slots, s * c);
    return lhs == detail::normalize(rhs, vol);
}

/// Equality of two operators "under the integral" (same pairing functional).
inline bool pairing_equal(const PolyDiffOp& a, const PolyDiffOp& b, const VolumeForm& vol) {
    return density_normal_form(a, vol) == density_normal_form(b, vol);
}

}  // namespace cycform

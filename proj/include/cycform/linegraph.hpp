#pragma once

#include <optional>

#include "cycform/density.hpp"

namespace cycform {

/// Line graph in Gamma(l, k): one aerial vertex with l edges to a line of
/// l + 2k ground positions; `endpoints` lists the edge endpoints (1-based,
/// strictly increasing). The parity condition asks for an even number of free
/// positions between consecutive endpoints.
struct LineGraph {
    int ell = 0;
    int k = 0;
    std::vector<int> endpoints;

    int positions() const { return ell + 2 * k; }

    /// Eq. 25 read literally: parity constrained only between consecutive endpoints.
    bool parity_ok() const {
        for (size_t i = 0; i + 1 < endpoints.size(); ++i)
            if ((endpoints[i + 1] - endpoints[i] - 1) % 2 != 0) return false;
        return true;
    }
    /// Even prefix as well: the free positions then split into adjacent pairs
    /// (the dashed pairs of the corresponding admissible graph). The maps
    /// (26)-(28) are supported on these.
    bool paired() const {
        if (!parity_ok()) return false;
        if (ell == 0) return true;
        return (endpoints.front() - 1) % 2 == 0;
    }

    bool operator==(const LineGraph& o) const {
        return ell == o.ell && k == o.k && endpoints == o.endpoints;
    }
};

/// All endpoint placements satisfying the literal parity condition, lexicographic.
inline std::vector<LineGraph> enumerate_line_graphs(int ell, int k) {
    if (ell < 0 || k < 0) throw std::invalid_argument("enumerate_line_graphs: negative input");
    int m = ell + 2 * k;
    std::vector<LineGraph> out;
    std::vector<int> idx(ell);
    for (int i = 0; i < ell; ++i) idx[i] = i + 1;
    if (ell == 0) {
        out.push_back({0, k, {}});
        return out;
    }
    while (true) {
        LineGraph g{ell, k, idx};
        if (g.parity_ok()) out.push_back(g);
        int i = ell - 1;
        while (i >= 0 && idx[i] == m - ell + i + 1) --i;
        if (i < 0) break;
        idx[i] += 1;
        for (int j = i + 1; j < ell; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

/// The matching-compatible subset (even prefix and gaps); these carry the maps.
inline std::vector<LineGraph> enumerate_paired_line_graphs(int ell, int k) {
    std::vector<LineGraph> out;
    for (auto& g : enumerate_line_graphs(ell, k))
        if (g.paired()) out.push_back(g);
    return out;
}

/// phi_Gamma: endpoint j (left to right) applies wedge factor xi_j, free
/// positions multiply; alternated over the wedge factors without 1/l!.
/// For l = 0 the aerial function multiplies as a plain coefficient.
inline PolyDiffOp line_graph_operator(const LineGraph& g, const PolyVector& gamma) {
    if (gamma.degree() != g.ell) throw std::invalid_argument("line_graph_operator: degree != ell");
    int d = gamma.dim();
    int m = g.positions();
    PolyDiffOp r(d, m);
    MultiIndex z = zero_index(d);
    if (g.ell == 0) {
        Polynomial f = gamma.component({});
        if (!f.is_zero()) r.add_term(SlotList(m, z), f);
        return r;
    }
    std::vector<int> T(g.ell, 0);
    while (true) {
        Polynomial entry = gamma.skew_entry(T);
        if (!entry.is_zero()) {
            SlotList slots(m, z);
            for (int j = 0; j < g.ell; ++j) slots[g.endpoints[j] - 1] = unit_index(d, T[j]);
            r.add_term(slots, entry);
        }
        int i = 0;
        while (i < g.ell) {
            T[i] += 1;
            if (T[i] < d) break;
            T[i] = 0;
            ++i;
        }
        if (i == g.ell) break;
    }
    return r;
}

/// k!/(l+2k)! sum of phi_Gamma over the paired graphs; equals hkr at k = 0.
inline PolyDiffOp tilde_hkr(const PolyVector& gamma, int k) {
    int ell = gamma.degree();
    int m = ell + 2 * k;
    PolyDiffOp acc(gamma.dim(), m);
    for (auto& g : enumerate_paired_line_graphs(ell, k))
        acc = acc + line_graph_operator(g, gamma);
    return (factorial(k) / factorial(m)) * acc;
}

/// Cyclic HKR map on one homogeneous term gamma tensor u^k.
inline PolyDiffOp cyclic_hkr(const PolyVector& gamma, int k, const VolumeForm& vol) {
    return sigma_projector(tilde_hkr(gamma, k), vol);
}

/// Cyclic HKR map termwise on an element of T_poly tensor C[u]; one
/// homogeneous operator per u-term (arity l + 2k).
inline std::vector<std::pair<int, PolyDiffOp>> cyclic_hkr(const UPolyElement& e,
                                                          const VolumeForm& vol) {
    std::vector<std::pair<int, PolyDiffOp>> out;
    for (auto& [k, pv] : e.terms()) out.emplace_back(k, cyclic_hkr(pv, k, vol));
    return out;
}

struct ShortenResult {
    std::vector<int> endpoints;  // of the shortened graph, on positions() slots
    int positions = 0;           // l + 2k - 1
    PolyDiffOp witness;          // hochschild_d(witness) = phi_Gamma
};

/// Lemma 2.4.1: shorten the first maximal run of free positions by one; the
/// witness carries the sign (-1)^{#endpoints left of that run} so that
/// d(witness) = phi_Gamma exactly.
inline ShortenResult shorten_graph(const LineGraph& g, const PolyVector& gamma) {
    if (g.k <= 0) throw std::invalid_argument("shorten_graph: k = 0, nothing to shorten");
    int m = g.positions();
    // first free position and its run
    int run_start = -1;
    for (int pos = 1; pos <= m; ++pos) {
        if (std::find(g.endpoints.begin(), g.endpoints.end(), pos) == g.endpoints.end()) {
            run_start = pos;
            break;
        }
    }
    int endpoints_left = 0;
    for (int e : g.endpoints)
        if (e < run_start) ++endpoints_left;
    ShortenResult res;
    res.positions = m - 1;
    for (int e : g.endpoints) res.endpoints.push_back(e < run_start ? e : e - 1);

    int d = gamma.dim();
    PolyDiffOp op(d, m - 1);
    MultiIndex z = zero_index(d);
    if (g.ell == 0) {
        Polynomial f = gamma.component({});
        if (!f.is_zero()) op.add_term(SlotList(m - 1, z), f);
    } else {
        std::vector<int> T(g.ell, 0);
        while (true) {
            Polynomial entry = gamma.skew_entry(T);
            if (!entry.is_zero()) {
                SlotList slots(m - 1, z);
                for (int j = 0; j < g.ell; ++j) slots[res.endpoints[j] - 1] = unit_index(d, T[j]);
                op.add_term(slots, entry);
            }
            int i = 0;
            while (i < g.ell) {
                T[i] += 1;
                if (T[i] < d) break;
                T[i] = 0;
                ++i;
            }
            if (i == g.ell) break;
        }
    }
    if (endpoints_left % 2 != 0) op = -op;
    res.witness = std::move(op);
    return res;
}

/// phi-bar of Eqs. 31-33: graphs Gamma(l-1, k+1), one marked slot (each free
/// position and the extra last slot) receiving the last wedge factor.
inline PolyDiffOp phi_bar(const PolyVector& gamma, int k) {
    int ell = gamma.degree();
    if (ell < 1) throw std::invalid_argument("phi_bar: degree 0");
    int d = gamma.dim();
    int m = ell + 2 * k + 1;  // positions of the underlying graphs
    int N = ell + 2 * k + 2;  // arity
    PolyDiffOp r(d, N);
    MultiIndex z = zero_index(d);
    for (auto& g : enumerate_paired_line_graphs(ell - 1, k + 1)) {
        std::vector<int> marks;
        for (int pos = 1; pos <= m; ++pos)
            if (std::find(g.endpoints.begin(), g.endpoints.end(), pos) == g.endpoints.end())
                marks.push_back(pos);
        marks.push_back(N);
        for (int j : marks) {
            std::vector<int> T(ell, 0);
            while (true) {
                Polynomial entry = gamma.skew_entry(T);
                if (!entry.is_zero()) {
                    SlotList slots(N, z);
                    for (int s = 0; s + 1 < ell; ++s) slots[g.endpoints[s] - 1] = unit_index(d, T[s]);
                    // marked slot gets the last factor; indices may stack
                    MultiIndex& mslot = slots[j - 1];
                    mslot[T[ell - 1]] += 1;
                    r.add_term(slots, entry);
                }
                int i = 0;
                while (i < ell) {
                    T[i] += 1;
                    if (T[i] < d) break;
                    T[i] = 0;
                    ++i;
                }
                if (i == ell) break;
            }
        }
    }
    return r;
}

/// Theorem 2.3 residual: cyclic_hkr(d_div(gamma u^k)) - d_Hoch(cyclic_hkr(gamma u^k)).
/// Must be the zero operator.
inline PolyDiffOp chain_map_residual(const PolyVector& gamma, int k, const VolumeForm& vol) {
    PolyVector dg = divergence(gamma, vol);
    int ell = gamma.degree();
    PolyDiffOp lhs = dg.is_zero() ? PolyDiffOp(gamma.dim(), ell + 2 * k + 1)
                                  : cyclic_hkr(dg, k + 1, vol);
    PolyDiffOp rhs = hochschild_d(cyclic_hkr(gamma, k, vol));
    return lhs - rhs;
}

/// theta_k = (d/dx_1 ^ ... ^ d/dx_d) tensor u^k, the top cocycle test input.
inline UPolyElement theta_element(int dim, int k) {
    return UPolyElement(k, PolyVector::top(dim));
}

}  // namespace cycform

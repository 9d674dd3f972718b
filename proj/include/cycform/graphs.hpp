#pragma once

#include <string>
#include <vector>

#include "cycform/polydiffop.hpp"

namespace cycform {

/// Kontsevich-type admissible graph with dashed pairs. Vertices: first type
/// 1..n (aerial), second type encoded -1..-m (on the line). Usual edges start
/// at first-type vertices; their order within a source defines the Star
/// labels. A dashed pair (v, j) is the edge pair (v, -j), (v, -(j+1)).
struct AdmissibleGraph {
    int n = 0;
    int m = 0;
    std::vector<std::pair<int, int>> usual_edges;   // (source 1..n, target 1..n or -1..-m)
    std::vector<std::pair<int, int>> dashed_pairs;  // (source 1..n, j with j+1 <= m)

    int star_size(int v) const {
        int s = 0;
        for (auto& [src, tgt] : usual_edges)
            if (src == v) ++s;
        return s;
    }
    int dashed_count(int v) const {
        int s = 0;
        for (auto& [src, j] : dashed_pairs)
            if (src == v) ++s;
        return s;
    }
    int total_dashed_pairs() const { return static_cast<int>(dashed_pairs.size()); }
    /// form degree = #usual + 2 #dashed; the weight needs this equal to 2n+m-2
    int form_degree() const { return static_cast<int>(usual_edges.size()) + 2 * total_dashed_pairs(); }
    int config_dimension() const { return 2 * n + m - 2; }

    bool valid() const {
        for (auto& [src, tgt] : usual_edges) {
            if (src < 1 || src > n) return false;
            if (tgt == src) return false;  // no loops
            if (tgt > n || tgt == 0 || tgt < -m) return false;
        }
        for (auto& [src, j] : dashed_pairs) {
            if (src < 1 || src > n) return false;
            if (j < 1 || j + 1 > m) return false;
        }
        return true;
    }

    /// Edges in the wedge-product order: usual edges grouped by source
    /// (appearance order inside a source), then dashed pairs (left, right)
    /// sorted by (source, j). Targets: >=1 aerial, <=-1 ground.
    std::vector<std::pair<int, int>> wedge_order_edges() const;

    std::string canonical_key() const;
};

/// All admissible graphs with n first-type and m second-type vertices, k
/// dashed pairs and 2n+m-2k-2 usual edges, labels included, lexicographic.
std::vector<AdmissibleGraph> enumerate_admissible(int n, int m, int k);

/// Eq. 36: operator of a graph evaluated on homogeneous inputs
/// eta_v = gamma_v tensor u^{k_v} (one per first-type vertex). Each vertex v
/// must satisfy degree(gamma_v) = #Star(v) and k_v = #dashed pairs at v.
PolyDiffOp graph_operator(const AdmissibleGraph& g,
                          const std::vector<std::pair<int, PolyVector>>& etas);

}  // namespace cycform

#include "cycform/graphs.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cycform {

std::vector<std::pair<int, int>> AdmissibleGraph::wedge_order_edges() const {
    std::vector<std::pair<int, int>> out;
    for (int v = 1; v <= n; ++v)
        for (auto& [src, tgt] : usual_edges)
            if (src == v) out.emplace_back(src, tgt);
    auto dp = dashed_pairs;
    std::sort(dp.begin(), dp.end());
    for (auto& [src, j] : dp) {
        out.emplace_back(src, -j);
        out.emplace_back(src, -(j + 1));
    }
    return out;
}

std::string AdmissibleGraph::canonical_key() const {
    std::ostringstream os;
    os << "G" << n << "," << m << ";";
    for (int v = 1; v <= n; ++v)
        for (auto& [src, tgt] : usual_edges)
            if (src == v) os << src << ">" << tgt << ";";
    auto dp = dashed_pairs;
    std::sort(dp.begin(), dp.end());
    for (auto& [src, j] : dp) os << "d" << src << ">" << j << ";";
    return os.str();
}

namespace {

// compositions of total into `parts` non-negative integers, lexicographic-ish
std::vector<std::vector<int>> compositions(int total, int parts) {
    std::vector<std::vector<int>> out;
    if (parts == 0) {
        if (total == 0) out.push_back({});
        return out;
    }
    std::vector<int> cur(parts, 0);
    cur[0] = total;
    while (true) {
        out.push_back(cur);
        int i = 0;
        while (i < parts - 1 && cur[i] == 0) ++i;
        if (i == parts - 1) break;
        cur[i + 1] += 1;
        int head = cur[i] - 1;
        cur[i] = 0;
        cur[0] = head;
    }
    return out;
}

}  // namespace

std::vector<AdmissibleGraph> enumerate_admissible(int n, int m, int k) {
    if (2 * n + m < 2) throw std::invalid_argument("enumerate_admissible: 2n+m must be >= 2");
    int E = 2 * n + m - 2 * k - 2;
    if (E < 0) throw std::invalid_argument("enumerate_admissible: negative usual edge count");
    // allowed targets of a source v, in order: aerial 1..n except v, then ground -1..-m
    auto targets_of = [&](int v) {
        std::vector<int> t;
        for (int u = 1; u <= n; ++u)
            if (u != v) t.push_back(u);
        for (int j = 1; j <= m; ++j) t.push_back(-j);
        return t;
    };

    std::vector<AdmissibleGraph> out;
    for (auto& star_sizes : compositions(E, n)) {
        // per-source ordered target tuples
        std::vector<std::vector<std::vector<int>>> choices(n);
        bool any_empty = false;
        for (int v = 1; v <= n; ++v) {
            auto tg = targets_of(v);
            int s = star_sizes[v - 1];
            std::vector<std::vector<int>> tuples;
            std::vector<int> idx(s, 0);
            if (s == 0) {
                tuples.push_back({});
            } else if (tg.empty()) {
                any_empty = true;
            } else {
                while (true) {
                    std::vector<int> t(s);
                    for (int a = 0; a < s; ++a) t[a] = tg[idx[a]];
                    tuples.push_back(t);
                    int a = s - 1;
                    while (a >= 0 && idx[a] == static_cast<int>(tg.size()) - 1) --a;
                    if (a < 0) break;
                    idx[a] += 1;
                    for (int b = a + 1; b < s; ++b) idx[b] = 0;
                }
            }
            choices[v - 1] = std::move(tuples);
        }
        if (any_empty) continue;
        for (auto& dashed_sizes : compositions(k, n)) {
            // per-source nondecreasing lists of pair positions 1..m-1 (repeats allowed)
            std::vector<std::vector<std::vector<int>>> dchoices(n);
            bool infeasible = false;
            for (int v = 1; v <= n; ++v) {
                int kv = dashed_sizes[v - 1];
                std::vector<std::vector<int>> lists;
                if (kv == 0) {
                    lists.push_back({});
                } else if (m < 2) {
                    infeasible = true;
                } else {
                    std::vector<int> cur(kv, 1);
                    while (true) {
                        lists.push_back(cur);
                        int a = kv - 1;
                        while (a >= 0 && cur[a] == m - 1) --a;
                        if (a < 0) break;
                        cur[a] += 1;
                        for (int b = a + 1; b < kv; ++b) cur[b] = cur[a];
                    }
                }
                dchoices[v - 1] = std::move(lists);
            }
            if (infeasible) continue;
            // cartesian product over sources
            std::vector<size_t> ci(n, 0), di(n, 0);
            while (true) {
                AdmissibleGraph g;
                g.n = n;
                g.m = m;
                for (int v = 1; v <= n; ++v) {
                    for (int t : choices[v - 1][ci[v - 1]]) g.usual_edges.emplace_back(v, t);
                    for (int j : dchoices[v - 1][di[v - 1]]) g.dashed_pairs.emplace_back(v, j);
                }
                out.push_back(std::move(g));
                // advance the mixed counter (usual tuples fastest)
                int v = n - 1;
                while (v >= 0) {
                    if (++ci[v] < choices[v].size()) break;
                    ci[v] = 0;
                    --v;
                }
                if (v >= 0) continue;
                v = n - 1;
                while (v >= 0) {
                    if (++di[v] < dchoices[v].size()) break;
                    di[v] = 0;
                    --v;
                }
                if (v < 0) break;
            }
        }
    }
    return out;
}

PolyDiffOp graph_operator(const AdmissibleGraph& g,
                          const std::vector<std::pair<int, PolyVector>>& etas) {
    if (static_cast<int>(etas.size()) != g.n)
        throw std::invalid_argument("graph_operator: need one eta per first-type vertex");
    int d = etas.empty() ? 0 : etas[0].second.dim();
    for (int v = 1; v <= g.n; ++v) {
        if (etas[v - 1].second.degree() != g.star_size(v))
            throw std::invalid_argument("graph_operator: degree != #Star at vertex");
        if (etas[v - 1].first != g.dashed_count(v))
            throw std::invalid_argument("graph_operator: u-power != dashed pair count at vertex");
        if (etas[v - 1].second.dim() != d)
            throw std::invalid_argument("graph_operator: dimension mismatch");
    }
    PolyDiffOp r(d, g.m);
    int E = static_cast<int>(g.usual_edges.size());
    // usual edges in label order per source define the tensor index slots
    std::vector<std::pair<int, int>> edges;  // (source, target), label order
    std::vector<std::vector<int>> star_edge_ids(g.n);
    for (int v = 1; v <= g.n; ++v)
        for (int e = 0; e < E; ++e)
            if (g.usual_edges[e].first == v) {
                star_edge_ids[v - 1].push_back(static_cast<int>(edges.size()));
                edges.push_back(g.usual_edges[e]);
            }

    std::vector<int> I(E, 0);
    MultiIndex z = zero_index(d);
    while (true) {
        // coefficient: product over aerial vertices of the derived tensor entries
        Polynomial coeff = Polynomial::constant(d, 1);
        bool zero = false;
        for (int v = 1; v <= g.n && !zero; ++v) {
            IndexTuple T;
            for (int eid : star_edge_ids[v - 1]) T.push_back(I[eid]);
            Polynomial entry = etas[v - 1].second.skew_entry(T);
            if (entry.is_zero()) {
                zero = true;
                break;
            }
            for (int e = 0; e < E; ++e)
                if (edges[e].second == v) entry = partial_derivative(entry, I[e]);
            if (entry.is_zero()) zero = true;
            else coeff = coeff * entry;
        }
        if (!zero) {
            SlotList slots(g.m, z);
            for (int e = 0; e < E; ++e)
                if (edges[e].second < 0) slots[-edges[e].second - 1][I[e]] += 1;
            r.add_term(slots, coeff);
        }
        if (E == 0) break;
        int i = 0;
        while (i < E) {
            I[i] += 1;
            if (I[i] < d) break;
            I[i] = 0;
            ++i;
        }
        if (i == E) break;
    }
    return r;
}

}  // namespace cycform

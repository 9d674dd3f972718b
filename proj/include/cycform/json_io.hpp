#pragma once

#include <json.hpp>

#include "cycform/quantize.hpp"

namespace cycform {

using nlohmann::json;

// --- polynomials: {"dim": d, "terms": [{"exps": [...], "coeff": "num/den"}]} ---

inline json to_json(const Polynomial& p) {
    json terms = json::array();
    for (auto& [m, c] : p.terms()) terms.push_back({{"exps", m}, {"coeff", rational_to_string(c)}});
    return {{"dim", p.dim()}, {"terms", terms}};
}

inline Polynomial polynomial_from_json(const json& j) {
    Polynomial p(j.at("dim").get<int>());
    for (auto& t : j.at("terms")) {
        MultiIndex m = t.at("exps").get<MultiIndex>();
        if (static_cast<int>(m.size()) != p.dim())
            throw std::invalid_argument("polynomial json: exps length != dim");
        p.add_term(m, rational_from_string(t.at("coeff").get<std::string>()));
    }
    return p;
}

// --- polyvectors: {"dim", "degree", "components": [{"indices", "poly"}]} ---

inline json to_json(const PolyVector& v) {
    json comps = json::array();
    for (auto& [I, p] : v.components()) comps.push_back({{"indices", I}, {"poly", to_json(p)}});
    return {{"dim", v.dim()}, {"degree", v.degree()}, {"components", comps}};
}

inline PolyVector polyvector_from_json(const json& j) {
    PolyVector v(j.at("dim").get<int>(), j.at("degree").get<int>());
    for (auto& c : j.at("components")) {
        IndexTuple I = c.at("indices").get<IndexTuple>();
        for (size_t i = 0; i + 1 < I.size(); ++i)
            if (I[i] >= I[i + 1]) throw std::invalid_argument("polyvector json: indices not increasing");
        v.add_component(I, polynomial_from_json(c.at("poly")));
    }
    return v;
}

// --- volume forms / u-elements ---

inline json to_json(const VolumeForm& vol) {
    return {{"dim", vol.dim}, {"log_density", to_json(vol.log_density)}};
}

inline VolumeForm volume_from_json(const json& j) {
    VolumeForm v;
    v.dim = j.at("dim").get<int>();
    v.log_density = polynomial_from_json(j.at("log_density"));
    return v;
}

inline json to_json(const UPolyElement& e) {
    json terms = json::array();
    for (auto& [k, pv] : e.terms()) terms.push_back({{"u", k}, {"pv", to_json(pv)}});
    return {{"dim", e.dim()}, {"u_terms", terms}};
}

inline UPolyElement uelement_from_json(const json& j) {
    UPolyElement e(j.at("dim").get<int>());
    for (auto& t : j.at("u_terms"))
        e.add_term(t.at("u").get<int>(), polyvector_from_json(t.at("pv")));
    return e;
}

// --- operators: {"dim", "arity", "terms": [{"coeff": <Polynomial>, "slots": [[...],...]}]} ---

inline json to_json(const PolyDiffOp& op) {
    json terms = json::array();
    for (auto& [slots, c] : op.terms()) terms.push_back({{"coeff", to_json(c)}, {"slots", slots}});
    return {{"dim", op.dim()}, {"arity", op.arity()}, {"terms", terms}};
}

inline PolyDiffOp operator_from_json(const json& j) {
    PolyDiffOp op(j.at("dim").get<int>(), j.at("arity").get<int>());
    for (auto& t : j.at("terms")) {
        SlotList slots = t.at("slots").get<SlotList>();
        op.add_term(slots, polynomial_from_json(t.at("coeff")));
    }
    return op;
}

// --- line graphs / admissible graphs ---

inline json to_json(const LineGraph& g) {
    return {{"ell", g.ell}, {"k", g.k}, {"endpoints", g.endpoints}};
}

inline json to_json(const AdmissibleGraph& g) {
    json usual = json::array(), dashed = json::array();
    for (auto& [s, t] : g.usual_edges) usual.push_back({s, t});
    for (auto& [s, j] : g.dashed_pairs) dashed.push_back({s, j});
    return {{"n", g.n}, {"m", g.m}, {"usual_edges", usual}, {"dashed_pairs", dashed}};
}

inline AdmissibleGraph graph_from_json(const json& j) {
    AdmissibleGraph g;
    g.n = j.at("n").get<int>();
    g.m = j.at("m").get<int>();
    for (auto& e : j.at("usual_edges")) g.usual_edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    for (auto& e : j.at("dashed_pairs")) g.dashed_pairs.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    if (!g.valid()) throw std::invalid_argument("admissible graph json: invalid graph");
    return g;
}

inline json to_json(const WeightEstimate& w) {
    return {{"value", w.value}, {"std_error", w.std_error}, {"samples", w.samples}, {"seed", w.seed}};
}

/// Resolved sign conventions, emitted in every report so convention drift is
/// observable across versions.
inline json conventions() {
    return {
        {"hochschild_d", "a1 psi(a2..) + sum (-1)^i psi(..a_i a_{i+1}..) + (-1)^{n+1} psi(..) a_{n+1}; equals [m,psi]"},
        {"gerstenhaber", "[a,b] = (-1)^{k1 k2} a o b - b o a with the insertion sum o"},
        {"schouten", "(-1)^{(p-1)(q-1)} sum_{r,s} (-1)^{r+s} [xi_r, eta_s] ^ rest (1-indexed)"},
        {"divergence", "(-1)^{p+1} x (Omega-conjugated de Rham, anchor iota_{e_I} dx = sgn(I,I^c) dx_{I^c})"},
        {"lemma_1_3_1", "div[a,b] = e1 [div a, b] + e2 [a, div b]; e1 = -1 iff (deg b even and deg a >= 2), e2 = -1 iff (deg b = 1 and deg a even)"},
        {"lemma_1_3_1_wedge", "[a,b] = (-1)^{(p-1)q} (div(a^b) - div(a)^b - (-1)^{i+1} a^div(b))"},
        {"eq29_tail", "term r carries +1 (r even) or (-1)^{k-1} (r odd)"},
        {"eq29_pairing", "pairing(d Sigma psi - Sigma d psi) = (-1)^k pairing(defect)"},
        {"homotopy_eq18", "d_K h - h d_K = (-1)^{k+1} Id on arity-k operators"},
        {"shorten_sign", "d(phi_Gtilde) = (-1)^{#endpoints left of the shortened run} phi_Gamma"},
        {"lemma_2_5_1", "int phibar = (-1)^l int sum_G phi_G(div gamma) f_last"},
        {"lemma_2_5_2", "int defect-cochain = (k+1) int phibar"},
        {"line_graph_support", "maps use graphs with even prefix and gaps (free vertices pair into adjacent dashed pairs); enumeration of Gamma(l,k) stays literal"},
        {"orientation", "slice coords (p pairs in vertex order, interior q ascending) x (-1)^{#interior q}; gauges q1=0,qm=1 / q1=0,|p1|=1 / p1=i"},
        {"angle_map", "phi(p,z) = arg((z-p)/(z-pbar))"},
        {"linf_n2", "d(C2(e1,e2)) + [C1 e1, C1 e2] + C1([e1,e2]) + C2(d_div e1, e2) + C2(e1, d_div e2) = 0"},
        {"hbar_normalization", "B1 = cyclic_hkr(gamma), B_n = (1/n!) C_n(gamma,..,gamma)"},
    };
}

}  // namespace cycform

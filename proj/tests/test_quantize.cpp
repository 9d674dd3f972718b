#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cycform/quantize.hpp"

using namespace cycform;

namespace {
PolyVector std_bivector() {
    PolyVector g(2, 2);
    g.add_component({0, 1}, Polynomial::constant(2, 1));
    return g;
}
}  // namespace

TEST_CASE("moyal series terms") {
    PolyVector g = std_bivector();
    CHECK(moyal_order(g, 0) == mult_op(2));
    CHECK(moyal_order(g, 1) == hkr(g));
    // second order: 1/8 gamma gamma d d f d d g
    PolyDiffOp b2 = moyal_order(g, 2);
    Polynomial f = random_polynomial(2, 3, 1), h = random_polynomial(2, 3, 2);
    Polynomial expect(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) {
                    Polynomial gij = g.skew_entry({i, j}), gkl = g.skew_entry({k, l});
                    if (gij.is_zero() || gkl.is_zero()) continue;
                    expect = expect +
                             gij.terms().begin()->second * gkl.terms().begin()->second *
                                 Rational(1, 8) *
                                 (derivative_multi(f, [&] {
                                      MultiIndex m(2, 0);
                                      m[i] += 1;
                                      m[k] += 1;
                                      return m;
                                  }()) *
                                  derivative_multi(h, [&] {
                                      MultiIndex m(2, 0);
                                      m[j] += 1;
                                      m[l] += 1;
                                      return m;
                                  }()));
                }
    CHECK(apply(b2, {f, h}) == expect);
    PolyVector bad(2, 2);
    bad.add_component({0, 1}, Polynomial::variable(2, 0));
    CHECK_THROWS_AS(moyal_order(bad, 1), std::invalid_argument);
}

TEST_CASE("moyal is associative, cyclic and traceless through order 2") {
    PolyVector g = std_bivector();
    VolumeForm vol = VolumeForm::standard(2);
    StarProduct s = moyal_star(g, 2);
    CHECK(associativity_residual(StarProduct::undeformed(2), 0).is_zero());
    for (int r = 0; r <= 2; ++r) CHECK(associativity_residual(s, r).is_zero());
    for (int r = 1; r <= 2; ++r) {
        CHECK(cyclicity_residual(s, r, vol).is_zero());
        CHECK(trace_residual(s, r, vol).is_zero());
        CHECK(specialize_last_slot(cyclicity_residual(s, r, vol)) == trace_residual(s, r, vol));
    }
    // order-1 cyclicity of the B1 built from the cyclic HKR map
    StarProduct s1{2, 1, {cyclic_hkr(g, 0, vol)}};
    CHECK(cyclicity_residual(s1, 1, vol).is_zero());
}

TEST_CASE("gauge transformations") {
    PolyVector g = std_bivector();
    StarProduct moyal = moyal_star(g, 2);
    GaugeTransform id{2, 2, {PolyDiffOp(2, 1), PolyDiffOp(2, 1)}};
    StarProduct same = gauge_transform(moyal, id);
    CHECK(same.corrections[0] == moyal.corrections[0]);
    CHECK(same.corrections[1] == moyal.corrections[1]);

    GaugeTransform t{2, 2,
                     {random_operator(2, 1, 2, 1, 31), random_operator(2, 1, 2, 1, 32)}};
    // formal inverse really inverts through the truncation order
    auto S = gauge_inverse(t);
    PolyDiffOp comp1 = compose_into_slot(t.corrections[0], 0, S[0]) + S[1];
    CHECK(comp1.is_zero());  // order-1 coefficient of T o T^{-1}
    StarProduct gauged = gauge_transform(moyal, t);
    for (int r = 1; r <= 2; ++r) CHECK(associativity_residual(gauged, r).is_zero());

    // gauge of the undeformed product shifts by a Hochschild coboundary
    StarProduct triv = StarProduct::undeformed(2);
    triv.order = 2;
    triv.corrections = {PolyDiffOp(2, 2), PolyDiffOp(2, 2)};
    StarProduct shifted = gauge_transform(triv, t);
    CHECK(shifted.corrections[0] == -hochschild_d(t.corrections[0]));
    for (int r = 1; r <= 2; ++r) CHECK(associativity_residual(shifted, r).is_zero());
}

TEST_CASE("mc_series structure") {
    PolyVector g = std_bivector();
    VolumeForm vol = VolumeForm::standard(2);
    auto s = mc_series(g, vol, 1, 0, 5);
    CHECK(s.b1 == cyclic_hkr(g, 0, vol));
    CHECK(s.b1 == hkr(g));  // constant divergence-free bivector: projector fixes hkr
    // N = 0: undeformed
    auto s0 = mc_series(g, vol, 0, 0, 5);
    CHECK(s0.b1.is_zero());
    // rejection
    PolyVector bad(2, 2);
    bad.add_component({0, 1}, Polynomial::variable(2, 0));
    CHECK_THROWS_AS(mc_series(bad, vol, 1, 0, 5), std::invalid_argument);
    // scaling: B1 linear
    auto s3 = mc_series(Rational(3) * g, vol, 1, 0, 5);
    CHECK(s3.b1 == Rational(3) * s.b1);
}

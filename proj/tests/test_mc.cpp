#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cycform/formality.hpp"

using namespace cycform;

TEST_CASE("harmonic angle: closed form and gradients") {
    // phi(i, 1) = arg((1-i)/(1+i)) = -pi/2
    auto g = harmonic_angle(0.0, 1.0, 1.0, 0.0);
    CHECK(std::abs(std::remainder(g.phi - (-M_PI / 2), 2 * M_PI)) < 1e-12);
    // vertical alignment gives angle 0 (mod 2pi)
    auto v = harmonic_angle(0.3, 1.0, 0.3, 0.0);
    CHECK(std::abs(std::remainder(v.phi, 2 * M_PI)) < 1e-12);
    // finite-difference check of all four derivatives
    SplitMix64 rng(12);
    for (int t = 0; t < 10; ++t) {
        double px = rng.uniform() * 2 - 1, py = rng.uniform() + 0.2;
        double zx = rng.uniform() * 2 - 1, zy = rng.uniform() + 0.2;
        double h = 1e-7;
        auto base = harmonic_angle(px, py, zx, zy);
        auto num = [&](double a, double b, double c, double d) {
            return std::remainder(harmonic_angle(px + a, py + b, zx + c, zy + d).phi - base.phi,
                                  2 * M_PI) / h;
        };
        CHECK(std::abs(num(h, 0, 0, 0) - base.dpx) < 1e-5);
        CHECK(std::abs(num(0, h, 0, 0) - base.dpy) < 1e-5);
        CHECK(std::abs(num(0, 0, h, 0) - base.dzx) < 1e-5);
        CHECK(std::abs(num(0, 0, 0, h) - base.dzy) < 1e-5);
    }
    CHECK_THROWS_AS(harmonic_angle(0, 1, 0, 1), std::invalid_argument);
}

TEST_CASE("the unique G_{1,1,0} weight is 1") {
    AdmissibleGraph g;
    g.n = 1;
    g.m = 1;
    g.usual_edges = {{1, -1}};
    auto w = weight_mc(g, 20000, 3);
    CHECK(std::abs(w.value - 1.0) < 1e-9);  // exact in the theta gauge
    CHECK(w.std_error < 1e-9);
}

TEST_CASE("wedge graph weight is 1/4, antisymmetric in the labels") {
    AdmissibleGraph g;
    g.n = 1;
    g.m = 2;
    g.usual_edges = {{1, -1}, {1, -2}};
    auto w = weight_mc(g, 200000, 4);
    CHECK(std::abs(w.value - 0.25) < 3 * w.std_error);
    AdmissibleGraph g2 = g;
    g2.usual_edges = {{1, -2}, {1, -1}};
    auto w2 = weight_mc(g2, 200000, 5);
    CHECK(std::abs(w2.value + 0.25) < 3 * w2.std_error);
}

TEST_CASE("weights are deterministic and seed/sample stable") {
    AdmissibleGraph g;
    g.n = 1;
    g.m = 2;
    g.usual_edges = {{1, -1}, {1, -2}};
    auto a = weight_mc(g, 50000, 11, 2);
    auto b = weight_mc(g, 50000, 11, 2);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
    auto c = weight_mc(g, 100000, 12, 2);
    CHECK(std::abs(a.value - c.value) <
          3 * std::sqrt(a.std_error * a.std_error + c.std_error * c.std_error));
    // cache returns the identical record
    auto d1 = weight_mc_cached(g, 30000, 13);
    auto d2 = weight_mc_cached(g, 30000, 13);
    CHECK(d1.value == d2.value);
}

TEST_CASE("overlapping dashed pair kills the weight exactly") {
    // usual edge and a dashed endpoint on the same ground vertex repeat a 1-form
    AdmissibleGraph g;
    g.n = 1;
    g.m = 3;
    g.usual_edges = {{1, -2}};
    g.dashed_pairs = {{1, 1}};  // edges to ground 1, 2: ground 2 repeats
    auto w = weight_mc(g, 20000, 6);
    CHECK(w.value == 0.0);
    CHECK(w.std_error == 0.0);
}

TEST_CASE("dashed pair weight reproduces the 1/2 of golden (iii)") {
    AdmissibleGraph g;
    g.n = 1;
    g.m = 2;
    g.dashed_pairs = {{1, 1}};
    auto w = weight_mc(g, 200000, 7);
    CHECK(std::abs(w.value - 0.5) < 3 * w.std_error);
}

TEST_CASE("form degree mismatch is rejected") {
    AdmissibleGraph g;
    g.n = 1;
    g.m = 2;
    g.usual_edges = {{1, -1}};
    CHECK_THROWS_AS(weight_mc(g, 1000, 1), std::invalid_argument);
}

TEST_CASE("taylor component matches tilde_hkr on the (1,0) and (0,1) sectors") {
    int d = 2;
    PolyVector xi = random_polyvector(d, 1, 1, 21);
    auto tc = taylor_component(1, {{0, xi}}, 1, 50000, 22);
    tc.add_exact(-tilde_hkr(xi, 0));
    CHECK(tc.max_sigma_ratio() <= 3.0);
    Polynomial f = random_polynomial(d, 1, 23);
    auto tc2 = taylor_component(1, {{1, PolyVector::function(f)}}, 2, 100000, 24);
    tc2.add_exact(-tilde_hkr(PolyVector::function(f), 1));
    CHECK(tc2.max_sigma_ratio() <= 3.0);
    // empty profile -> zero operator
    auto none = taylor_component(1, {{0, xi}}, 3, 1000, 25);
    CHECK(none.parts.empty());
}

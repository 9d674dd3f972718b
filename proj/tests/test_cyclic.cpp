#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cycform/suites.hpp"

using namespace cycform;

TEST_CASE("density normal form of multiplication") {
    int d = 2;
    VolumeForm vol = VolumeForm::standard(d);
    auto nf = density_normal_form(mult_op(d), vol);
    REQUIRE(nf.terms.size() == 1);
    CHECK(nf.terms.begin()->first == SlotList(3, zero_index(d)));
    CHECK(nf.terms.begin()->second == Polynomial::constant(d, 1));
}

TEST_CASE("cyclic shift basics") {
    int d = 2;
    for (bool poly_vol : {false, true}) {
        VolumeForm vol = poly_vol ? VolumeForm{d, random_polynomial(d, 2, 9)}
                                  : VolumeForm::standard(d);
        PolyDiffOp m = mult_op(d);
        CHECK(cyclic_shift(m, vol) == m);
        CHECK(is_cyclic(m, vol));
        // C(xi) = xi + div(xi) f
        PolyVector xi = random_polyvector(d, 1, 2, 10);
        PolyDiffOp want = hkr(xi);
        want.add_term({zero_index(d)}, divergence(xi, vol).component({}));
        CHECK(cyclic_shift(hkr(xi), vol) == want);
        // periodicity C^{arity+1} = id
        for (int ar = 1; ar <= 4; ++ar) {
            PolyDiffOp op = random_operator(d, ar, 2, 2, 20 + ar);
            PolyDiffOp cur = op;
            for (int r = 0; r <= ar; ++r) cur = cyclic_shift(cur, vol);
            CHECK(cur == op);
        }
        // arity-0 operators are fixed
        PolyDiffOp c0 = PolyDiffOp::constant(random_polynomial(d, 2, 30));
        CHECK(cyclic_shift(c0, vol) == c0);
    }
}

TEST_CASE("sigma and the projector") {
    int d = 2;
    VolumeForm vol = VolumeForm::standard(d);
    PolyDiffOp m = mult_op(d);
    CHECK(sigma(m, vol) == Rational(3) * m);
    CHECK(sigma_projector(m, vol) == m);
    for (int ar = 1; ar <= 3; ++ar) {
        PolyDiffOp op = random_operator(d, ar, 2, 2, 40 + ar);
        PolyDiffOp s = sigma(op, vol);
        CHECK(cyclic_shift(s, vol) == s);                          // C Sigma = Sigma
        CHECK(sigma(op - cyclic_shift(op, vol), vol).is_zero());   // Sigma (1-C) = 0
        PolyDiffOp p = sigma_projector(op, vol);
        CHECK(sigma_projector(p, vol) == p);
        CHECK(sigma(p, vol) == Rational(ar + 1) * p);  // fixed point: Sigma = (i+2) id on cyclic
    }
    // a non-symmetric operator is not cyclic
    PolyDiffOp asym(d, 2);
    asym.add_term({unit_index(d, 0), zero_index(d)}, Polynomial::constant(d, 1));
    CHECK(!is_cyclic(asym, vol));
}

TEST_CASE("cyclic operators close under d and the bracket") {
    int d = 2;
    VolumeForm vol{d, random_polynomial(d, 1, 50)};
    for (int t = 0; t < 5; ++t) {
        PolyDiffOp a = sigma_projector(random_operator(d, 2, 1, 1, 60 + t), vol);
        PolyDiffOp b = sigma_projector(random_operator(d, 1 + t % 2, 1, 1, 70 + t), vol);
        CHECK(is_cyclic(hochschild_d(a), vol));
        CHECK(is_cyclic(gerstenhaber(a, b), vol));
    }
}

TEST_CASE("bicomplex squares") {
    for (bool poly_vol : {false, true}) {
        int d = 2;
        VolumeForm vol = poly_vol ? VolumeForm{d, random_polynomial(d, 2, 80)}
                                  : VolumeForm::standard(d);
        CHECK(bicomplex_square_check(mult_op(d), vol).ok());
        for (int ar = 1; ar <= 3; ++ar) {
            PolyDiffOp op = random_operator(d, ar, 2, 2, 90 + ar);
            auto rep = bicomplex_square_check(op, vol);
            CHECK(rep.star1_ok);
            CHECK(rep.star2_ok);
        }
    }
}

TEST_CASE("sigma defect identity") {
    for (bool poly_vol : {false, true}) {
        int d = 2;
        VolumeForm vol = poly_vol ? VolumeForm{d, random_polynomial(d, 1, 101)}
                                  : VolumeForm::standard(d);
        CHECK(sigma_defect_identity_holds(mult_op(d), vol));
        PolyVector xi = random_polyvector(d, 1, 2, 102);
        CHECK(sigma_defect_identity_holds(hkr(xi), vol));
        for (int ar = 1; ar <= 3; ++ar)
            CHECK(sigma_defect_identity_holds(random_operator(d, ar, 1, 2, 110 + ar), vol));
    }
}

TEST_CASE("cyclic suite is green") {
    SuiteConfig cfg;
    cfg.suite = "cyclic";
    cfg.trials = 4;
    cfg.max_degree = 3;
    for (auto& r : run_suite(cfg)) {
        INFO(r.name);
        CHECK(r.ok);
    }
}

TEST_CASE("bicomplex suite is green") {
    SuiteConfig cfg;
    cfg.suite = "bicomplex";
    cfg.trials = 4;
    cfg.max_degree = 3;
    for (auto& r : run_suite(cfg)) {
        INFO(r.name);
        CHECK(r.ok);
    }
}

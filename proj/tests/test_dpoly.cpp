#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cycform/json_io.hpp"
#include "cycform/suites.hpp"

using namespace cycform;

TEST_CASE("apply and mult_op") {
    int d = 2;
    PolyDiffOp m = mult_op(d);
    Polynomial x = Polynomial::variable(d, 0), y = Polynomial::variable(d, 1);
    CHECK(apply(m, {x, y}) == x * y);
    PolyDiffOp ddx(d, 1);
    ddx.add_term({unit_index(d, 0)}, Polynomial::constant(d, 1));
    CHECK(apply(ddx, {x * x}) == Rational(2) * x);
    CHECK(apply(ddx, {Polynomial(d)}).is_zero());
    CHECK_THROWS_AS(apply(m, {x}), std::invalid_argument);
}

TEST_CASE("hochschild differential") {
    int d = 2;
    Polynomial x = Polynomial::variable(d, 0);
    // derivations are 1-cocycles
    PolyVector xi = random_polyvector(d, 1, 2, 17);
    CHECK(hochschild_d(hkr(xi)).is_zero());
    // d(a -> x a) = (a,b) -> x a b
    PolyDiffOp mx(d, 1);
    mx.add_term({zero_index(d)}, x);
    PolyDiffOp want(d, 2);
    want.add_term({zero_index(d), zero_index(d)}, x);
    CHECK(hochschild_d(mx) == want);
    // d^2 = 0
    for (int ar = 1; ar <= 3; ++ar) {
        PolyDiffOp op = random_operator(d, ar, 2, 2, 100 + ar);
        CHECK(hochschild_d(hochschild_d(op)).is_zero());
    }
}

TEST_CASE("gerstenhaber bracket") {
    int d = 2;
    PolyDiffOp m = mult_op(d);
    CHECK(gerstenhaber(m, m).is_zero());
    for (int ar = 1; ar <= 3; ++ar) {
        PolyDiffOp op = random_operator(d, ar, 2, 2, 200 + ar);
        CHECK(hochschild_d(op) == gerstenhaber(m, op));
    }
    // arity-1 operators bracket to the Lie bracket of vector fields
    PolyVector xi = random_polyvector(d, 1, 2, 201);
    PolyVector eta = random_polyvector(d, 1, 2, 202);
    CHECK(gerstenhaber(hkr(xi), hkr(eta)) == hkr(schouten_bracket(xi, eta)));
}

TEST_CASE("cup product") {
    int d = 2;
    PolyDiffOp id1(d, 1);
    id1.add_term({zero_index(d)}, Polynomial::constant(d, 1));
    CHECK(cup(id1, id1) == mult_op(d));
    PolyDiffOp a = random_operator(d, 1, 1, 1, 301);
    PolyDiffOp b = random_operator(d, 2, 1, 1, 302);
    PolyDiffOp c = random_operator(d, 1, 1, 1, 303);
    CHECK(cup(a, cup(b, c)) == cup(cup(a, b), c));
    // cup of two vector fields applies them slotwise
    PolyVector xi = random_polyvector(d, 1, 1, 304), eta = random_polyvector(d, 1, 1, 305);
    Polynomial f = random_polynomial(d, 2, 306), g = random_polynomial(d, 2, 307);
    CHECK(apply(cup(hkr(xi), hkr(eta)), {f, g}) ==
          apply(hkr(xi), {f}) * apply(hkr(eta), {g}));
}

TEST_CASE("hkr map") {
    int d = 2;
    PolyVector g(d, 2);
    g.add_component({0, 1}, Polynomial::constant(d, 1));
    PolyDiffOp op = hkr(g);
    Polynomial f = random_polynomial(d, 2, 400), h = random_polynomial(d, 2, 401);
    Polynomial want = Rational(1, 2) * (partial_derivative(f, 0) * partial_derivative(h, 1) -
                                        partial_derivative(f, 1) * partial_derivative(h, 0));
    CHECK(apply(op, {f, h}) == want);
    PolyVector xi = random_polyvector(d, 1, 2, 402);
    CHECK(hkr(xi).arity() == 1);
    Polynomial c = random_polynomial(d, 2, 403);
    CHECK(hkr(PolyVector::function(c)) == PolyDiffOp::constant(c));
}

TEST_CASE("K-complex differential and homotopy") {
    int d = 2;
    PolyDiffOp m = mult_op(d);
    PolyDiffOp id1(d, 1);
    id1.add_term({zero_index(d)}, Polynomial::constant(d, 1));
    CHECK(d_K(id1).is_zero());  // a psi(b) - psi(ab) = 0
    for (int ar = 1; ar <= 4; ++ar) {
        PolyDiffOp op = random_operator(d, ar, 2, 2, 500 + ar);
        CHECK(d_K(d_K(op)).is_zero());
        // d_K h - h d_K = (-1)^{arity+1} Id
        PolyDiffOp lhs = d_K(homotopy_h(op)) - homotopy_h(d_K(op));
        Rational s = (ar % 2 == 0) ? -1 : 1;
        CHECK(lhs == s * op);
    }
    CHECK(homotopy_h(m) == id1);
    PolyVector xi = random_polyvector(d, 1, 2, 510);
    CHECK(homotopy_h(hkr(xi)).is_zero());
    CHECK_THROWS_AS(homotopy_h(PolyDiffOp::constant(Polynomial::variable(d, 0))),
                    std::invalid_argument);
    // d_K(m)(a,b,c): a bc - (ab) c + ... matches the term-by-term expansion d_K m = a m(b,c) - m(ab,c) + m(a,bc)
    PolyDiffOp dkm = d_K(m);
    Polynomial a = random_polynomial(d, 1, 511), b = random_polynomial(d, 1, 512),
               c = random_polynomial(d, 1, 513);
    CHECK(apply(dkm, {a, b, c}) == a * (b * c) - (a * b) * c + a * (b * c));
}

TEST_CASE("operator json round trip") {
    PolyDiffOp op = random_operator(2, 2, 2, 2, 600);
    CHECK(operator_from_json(to_json(op)) == op);
}

TEST_CASE("hochschild suite is green") {
    SuiteConfig cfg;
    cfg.suite = "hochschild";
    cfg.trials = 6;
    cfg.dim = 2;
    for (auto& r : run_suite(cfg)) {
        INFO(r.name);
        CHECK(r.ok);
    }
}

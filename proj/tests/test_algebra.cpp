#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cycform/json_io.hpp"
#include "cycform/suites.hpp"

using namespace cycform;

TEST_CASE("polynomial arithmetic examples") {
    Polynomial x = Polynomial::variable(2, 0);
    Polynomial y = Polynomial::variable(2, 1);
    CHECK((x + (-x)).is_zero());
    Polynomial x2p1 = x * x + Polynomial::constant(2, 1);
    CHECK(x2p1 + x == x * x + x + Polynomial::constant(2, 1));
    CHECK(Rational(1, 2) * x + Rational(1, 3) * x == Rational(5, 6) * x);
    CHECK(x * y == y * x);
    CHECK((x + Polynomial::constant(2, 1)) * (x - Polynomial::constant(2, 1)) ==
          x * x - Polynomial::constant(2, 1));
    CHECK((x * Polynomial(2)).is_zero());
}

TEST_CASE("partial derivatives") {
    Polynomial x = Polynomial::variable(2, 0);
    Polynomial y = Polynomial::variable(2, 1);
    CHECK(partial_derivative(x * x, 0) == Rational(2) * x);
    CHECK(partial_derivative(x * x, 1).is_zero());
    // d/dx (x^3 y^2 / 6) = x^2 y^2 / 2
    Polynomial p = Rational(1, 6) * (x * x * x * y * y);
    CHECK(partial_derivative(p, 0) == Rational(1, 2) * (x * x * y * y));
    CHECK_THROWS_AS(partial_derivative(x, 5), std::out_of_range);
}

TEST_CASE("random polynomial contract") {
    CHECK(random_polynomial(1, 0, 42).total_degree() == 0);
    CHECK(random_polynomial(2, 3, 7) == random_polynomial(2, 3, 7));
    CHECK(random_polynomial(2, 3, 8) != random_polynomial(2, 3, 7));
    for (std::uint64_t s = 0; s < 20; ++s) CHECK(random_polynomial(2, 3, s).total_degree() <= 3);
}

TEST_CASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(Polynomial::variable(2, 0) + Polynomial::variable(3, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(Polynomial::variable(2, 0) * Polynomial::variable(3, 0),
                    std::invalid_argument);
}

TEST_CASE("rational string round trip") {
    Rational r(-22, 7);
    CHECK(rational_from_string(rational_to_string(r)) == r);
    CHECK(rational_from_string("5") == Rational(5));
    CHECK(rational_to_string(Rational(1, 2)) == "1/2");
}

TEST_CASE("polynomial json round trip") {
    Polynomial p = random_polynomial(3, 3, 99);
    CHECK(polynomial_from_json(to_json(p)) == p);
}

TEST_CASE("algebra suite is green") {
    SuiteConfig cfg;
    cfg.suite = "algebra";
    cfg.trials = 10;
    cfg.dim = 2;
    auto records = run_suite(cfg);
    for (auto& r : records) {
        INFO(r.name);
        CHECK(r.ok);
    }
}

TEST_CASE("algebra suite in dimension 3") {
    SuiteConfig cfg;
    cfg.suite = "algebra";
    cfg.trials = 4;
    cfg.dim = 3;
    cfg.max_poly_degree = 2;
    auto records = run_suite(cfg);
    for (auto& r : records) {
        INFO(r.name);
        CHECK(r.ok);
    }
}

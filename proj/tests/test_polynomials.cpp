#include "doctest.h"

#include "medians/gaussian.hpp"
#include "medians/poly.hpp"

using namespace medians;

namespace {

const std::vector<std::string> XY{"x", "y"};

RationalPoly X() { return RationalPoly::variable(XY, "x"); }
RationalPoly Y() { return RationalPoly::variable(XY, "y"); }
RationalPoly C(long v) { return RationalPoly::constant(XY, Rational(v)); }

} // namespace

TEST_CASE("construction, degrees, and term bookkeeping") {
    RationalPoly p = X() * X() * Y() - Rational(3) * Y() + C(7);
    CHECK(p.degree() == 3);
    CHECK(p.degree_in("x") == 2);
    CHECK(p.degree_in("y") == 1);
    CHECK(p.variables() == XY);
    CHECK(p.active_variables() == XY);
    CHECK((X() - X()).is_zero());
    CHECK(C(5).is_constant());
    CHECK(C(5).constant_value() == Rational(5));
    CHECK_FALSE(p.is_constant());
    CHECK_THROWS_AS(RationalPoly::variable(XY, "z"), std::invalid_argument);
    // zero coefficients never linger in the term map
    RationalPoly cancel = (X() + Y()) * (X() - Y()) - X() * X() + Y() * Y();
    CHECK(cancel.is_zero());
}

TEST_CASE("text form uses graded lex order, lowest degree first") {
    RationalPoly p = Y() * Y() - X() * X() * X() + X() - C(2);
    CHECK(to_string(p) == "-2 + x + y^2 - x^3");
    CHECK(to_string(RationalPoly(XY)) == "0");
    CHECK(to_string(-(X() * Y())) == "-x*y");
    CHECK(to_string(Rational(1, 2) * X()) == "1/2*x");
}

TEST_CASE("evaluation needs exactly the active variables") {
    RationalPoly p = X() * X() + Rational(2) * Y();
    std::map<std::string, Rational> full{{"x", Rational(3)}, {"y", Rational(1, 2)}};
    CHECK(p.eval(full) == Rational(10));
    // y never occurs here, so it may be omitted from the point
    RationalPoly only_x = X() * X() - C(1);
    CHECK(only_x.eval({{"x", Rational(3)}}) == Rational(8));
    CHECK_THROWS_AS(only_x.eval({{"y", Rational(0)}}), std::invalid_argument);
}

TEST_CASE("derivative and coefficient extraction") {
    RationalPoly p = X() * X() * Y() + Rational(3) * X() - C(4);
    CHECK(p.derivative("x") == Rational(2) * X() * Y() + C(3));
    CHECK(p.derivative("y") == X() * X());
    auto cy = p.coefficients_in("y"); // ascending in y
    REQUIRE(cy.size() == 2);
    CHECK(cy[0] == Rational(3) * X() - C(4));
    CHECK(cy[1] == X() * X());
}

TEST_CASE("substitution and radical square reduction") {
    RationalPoly p = X() * X() + X() * Y() + C(1);
    CHECK(p.substitute("x", Rational(2)) == Rational(2) * Y() + C(5));
    // treat y as sqrt(5): y^2 -> 5, odd powers keep one y
    RationalPoly q = Y() * Y() * Y() + Y() * Y() + Y() + C(1);
    CHECK(q.reduce_square("y", Rational(5)) == Rational(6) * Y() + C(6));
}

TEST_CASE("context embedding") {
    std::vector<std::string> xs{"x"};
    RationalPoly p = RationalPoly::variable(xs, "x") * RationalPoly::variable(xs, "x");
    RationalPoly lifted = p.in_context(XY);
    CHECK(lifted.variables() == XY);
    CHECK(lifted == X() * X());
    CHECK_THROWS_AS(p.in_context({"y"}), std::invalid_argument);
    // mixed-context arithmetic is rejected outright
    CHECK_THROWS_AS(p + X(), std::invalid_argument);
}

TEST_CASE("exact division") {
    RationalPoly a = (X() + Y()) * (X() - Y()) * (X() + C(1));
    CHECK(divide_exact(a, X() + Y()) == (X() - Y()) * (X() + C(1)));
    CHECK_THROWS_AS(divide_exact(a, RationalPoly(XY)), std::domain_error);
}

TEST_CASE("resultants follow the lc(Q)^deg(P) * prod P(roots of Q) convention") {
    std::vector<std::string> xs{"x"};
    RationalPoly x = RationalPoly::variable(xs, "x");
    auto c = [&](long v) { return RationalPoly::constant(xs, Rational(v)); };
    CHECK(resultant(x, x - c(1), "x").constant_value() == Rational(1));
    CHECK(resultant(x * x + c(1), x * x - c(2), "x").constant_value() == Rational(9));
    // common root kills the resultant
    CHECK(resultant((x - c(3)) * (x + c(1)), x - c(3), "x").is_zero());
    // bivariate: res_y of y - x^2 and y - 2x is 2x - x^2 up to sign
    RationalPoly f = Y() - X() * X();
    RationalPoly g = Y() - Rational(2) * X();
    RationalPoly r = resultant(f, g, "y");
    CHECK((r == Rational(2) * X() - X() * X() || r == X() * X() - Rational(2) * X()));
    CHECK_THROWS_AS(resultant(f, C(3), "y"), std::invalid_argument);
}

TEST_CASE("univariate gcd is monic") {
    std::vector<std::string> xs{"x"};
    RationalPoly x = RationalPoly::variable(xs, "x");
    auto c = [&](long v) { return RationalPoly::constant(xs, Rational(v)); };
    RationalPoly a = (x - c(1)) * (x - c(2)) * c(4);
    RationalPoly b = (x - c(1)) * (x + c(5)) * c(3);
    CHECK(gcd_univariate(a, b) == x - c(1));
    CHECK(gcd_univariate(x * x + c(1), x - c(7)).degree() == 0);
    CHECK(gcd_univariate(a, RationalPoly(xs)) == (x - c(1)) * (x - c(2)));
    CHECK_THROWS_AS(gcd_univariate(RationalPoly(xs), RationalPoly(xs)), std::domain_error);
}

TEST_CASE("squarefreeness and discriminants") {
    std::vector<std::string> xs{"x"};
    RationalPoly x = RationalPoly::variable(xs, "x");
    auto c = [&](long v) { return RationalPoly::constant(xs, Rational(v)); };
    CHECK(is_squarefree(x * x - c(2)));
    CHECK_FALSE(is_squarefree((x - c(1)) * (x - c(1))));
    // quadratic: b^2 - 4ac
    CHECK(discriminant_univariate(x * x + Rational(3) * x + c(1)) == Rational(5));
    CHECK(discriminant_univariate(Rational(2) * (x * x) + x + c(3)) == Rational(-23));
    // cubic x^3 + px + q: -4p^3 - 27q^2
    CHECK(discriminant_univariate(x * x * x - x) == Rational(4));
    CHECK(discriminant_univariate((x - c(2)) * (x - c(2)) * x).is_zero());
}

TEST_CASE("rational roots with multiplicity, largest first") {
    std::vector<std::string> xs{"x"};
    RationalPoly x = RationalPoly::variable(xs, "x");
    auto c = [&](long v) { return RationalPoly::constant(xs, Rational(v)); };
    RationalPoly p = (Rational(2) * x - c(1)) * (x + c(3)) * (x + c(3));
    auto roots = rational_roots(p);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == Rational(1, 2));
    CHECK(roots[1] == Rational(-3));
    CHECK(roots[2] == Rational(-3));
    CHECK(rational_roots(x * x + c(1)).empty());
}

TEST_CASE("polynomials over the gaussian rationals") {
    std::vector<std::string> ts{"t"};
    GaussianPoly t = GaussianPoly::variable(ts, "t");
    GaussianRational i(Rational(0), Rational(1));
    // t^2 + 1 = (t - i)(t + i)
    GaussianPoly prod = (t - GaussianPoly::constant(ts, i)) * (t + GaussianPoly::constant(ts, i));
    CHECK(prod == t * t + GaussianPoly::constant(ts, GaussianRational(1)));
    CHECK(prod.eval({{"t", i}}).is_zero());
    CHECK(gcd_univariate(prod, t - GaussianPoly::constant(ts, i)).degree() == 1);
    CHECK(to_string(t * t - GaussianPoly::constant(ts, i)) == "(-i) + t^2");
}

#include "doctest.h"

#include "medians/gaussian.hpp"
#include "medians/quad.hpp"
#include "medians/rational.hpp"

using namespace medians;

TEST_CASE("rationals stay in canonical form") {
    Rational q(6, -4);
    CHECK(q.num() == -3);
    CHECK(q.den() == 2);
    CHECK(Rational(0, 5) == Rational(0));
    CHECK(Rational(7, 7) == Rational(1));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational arithmetic and comparisons") {
    Rational a(1, 2), b(1, 3);
    CHECK(a + b == Rational(5, 6));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 6));
    CHECK(a / b == Rational(3, 2));
    CHECK(-a == Rational(-1, 2));
    CHECK(square(Rational(-3, 4)) == Rational(9, 16));
    CHECK(abs(Rational(-3, 4)) == Rational(3, 4));
    CHECK(a > b);
    CHECK(Rational(-1) < Rational(0));
    CHECK_THROWS_AS(a / Rational(0), std::domain_error);
    CHECK(Rational(2, 4).is_zero() == false);
    CHECK(Rational(4, 2).is_integer());
    CHECK(Rational(-5).sign() == -1);
}

TEST_CASE("height is max(|num|, den) in lowest terms") {
    CHECK(height(Rational(0)) == 1);
    CHECK(height(Rational(3, 7)) == 7);
    CHECK(height(Rational(-9, 2)) == 9);
    CHECK(height(Rational(10, 5)) == 2);
}

TEST_CASE("rational text round-trips") {
    CHECK(to_string(Rational(-3, 2)) == "-3/2");
    CHECK(to_string(Rational(5)) == "5");
    CHECK(to_string(Rational(0)) == "0");
    for (const char* s : {"0", "-7", "22/7", "-1/999", "123456789123456789/2"}) {
        Rational q = parse_rational(s);
        CHECK(to_string(q) == s);
    }
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("+3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::domain_error);
    CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("2/3/4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
}

TEST_CASE("rational square detection") {
    CHECK(is_rational_square(Rational(49, 4)) == Rational(7, 2));
    CHECK(is_rational_square(Rational(0)) == Rational(0));
    CHECK(is_rational_square(Rational(1)) == Rational(1));
    CHECK_FALSE(is_rational_square(Rational(2)).has_value());
    CHECK_FALSE(is_rational_square(Rational(-4)).has_value());
    CHECK_FALSE(is_rational_square(Rational(49, 5)).has_value());
    // squares of big rationals survive the round trip
    Rational big = square(parse_rational("987654321987654321/1000000007"));
    CHECK(is_rational_square(big) == parse_rational("987654321987654321/1000000007"));
}

TEST_CASE("squarefree decomposition n = k * m^2") {
    auto [k, m] = squarefree_part(Integer(12));
    CHECK(k == 3);
    CHECK(m == 2);
    auto [k2, m2] = squarefree_part(Integer(-18));
    CHECK(k2 == -2);
    CHECK(m2 == 3);
    auto [k3, m3] = squarefree_part(Integer(1));
    CHECK(k3 == 1);
    CHECK(m3 == 1);
    auto [k4, m4] = squarefree_part(Integer(360));
    CHECK(k4 == 10);
    CHECK(m4 == 6);
    CHECK_THROWS_AS(squarefree_part(Integer(0)), std::domain_error);
}

TEST_CASE("divisors and squarefree predicate") {
    std::vector<Integer> d = divisors(Integer(12));
    CHECK(d == std::vector<Integer>{1, 2, 3, 4, 6, 12});
    CHECK(divisors(Integer(-9)) == std::vector<Integer>{1, 3, 9});
    CHECK(is_squarefree_integer(Integer(30)));
    CHECK_FALSE(is_squarefree_integer(Integer(12)));
    CHECK(is_squarefree_integer(Integer(1)));
    auto f = factor_integer(Integer(360));
    CHECK(f == std::vector<std::pair<Integer, unsigned>>{{2, 3}, {3, 2}, {5, 1}});
}

TEST_CASE("gaussian rationals form a field") {
    GaussianRational i(Rational(0), Rational(1));
    CHECK(i * i == GaussianRational(-1));
    GaussianRational z(Rational(1, 2), Rational(-3, 4));
    CHECK(z.conjugate() == GaussianRational(Rational(1, 2), Rational(3, 4)));
    CHECK(z.norm() == Rational(13, 16));
    CHECK(z * z.conjugate() == GaussianRational(z.norm()));
    GaussianRational w(Rational(2), Rational(1));
    CHECK((z / w) * w == z);
    CHECK_THROWS_AS(z / GaussianRational(0), std::domain_error);
    CHECK(to_string(GaussianRational(Rational(1, 2), Rational(-3, 4))) == "1/2-3/4*i");
    CHECK(to_string(GaussianRational(0)) == "0");
    CHECK(to_string(i) == "i");
}

TEST_CASE("quadratic field elements normalize their radicand") {
    // b = 0 collapses to the rational subfield
    QuadElem plain(Rational(3, 2), Rational(0), Integer(5));
    CHECK(plain.field_k() == 1);
    // k = 1 folds the radical into the rational part
    QuadElem folded(Rational(1), Rational(2), Integer(1));
    CHECK(folded.rational_part() == Rational(3));
    CHECK(folded.radical_coeff() == Rational(0));
    CHECK_THROWS_AS(QuadElem(Rational(1), Rational(1), Integer(0)), std::invalid_argument);
    CHECK_THROWS_AS(QuadElem(Rational(1), Rational(1), Integer(12)), std::invalid_argument);
}

TEST_CASE("quadratic field arithmetic") {
    QuadElem a(Rational(1), Rational(2), Integer(5));   // 1 + 2 sqrt 5
    QuadElem b(Rational(-3), Rational(1), Integer(5));  // -3 + sqrt 5
    CHECK(a + b == QuadElem(Rational(-2), Rational(3), Integer(5)));
    CHECK(a * b == QuadElem(Rational(7), Rational(-5), Integer(5)));
    CHECK(a.conjugate() == QuadElem(Rational(1), Rational(-2), Integer(5)));
    CHECK(a.norm() == Rational(-19));
    CHECK((a / b) * b == a);
    CHECK(a * a.conjugate() == QuadElem(a.norm(), Rational(0), Integer(1)));
    // rationals embed into any Q(sqrt k)
    QuadElem two(Rational(2));
    CHECK(a + two == QuadElem(Rational(3), Rational(2), Integer(5)));
    // mixing genuinely different radicands is an error
    QuadElem c(Rational(0), Rational(1), Integer(3));
    CHECK_THROWS_AS(a + c, std::invalid_argument);
    CHECK_THROWS_AS(a / QuadElem(Rational(0)), std::domain_error);
    // negative radicand: Q(i) via k = -1
    QuadElem im(Rational(0), Rational(1), Integer(-1));
    CHECK(im * im == QuadElem(Rational(-1)));
}

TEST_CASE("quadratic field text round-trips") {
    QuadElem a(Rational(1, 4), Rational(-1, 3), Integer(-1));
    CHECK(to_string(a) == "1/4-1/3*sqrt(-1)");
    CHECK(parse_quad(to_string(a)) == a);
    CHECK(to_string(QuadElem(Rational(2))) == "2");
    CHECK(to_string(QuadElem(Rational(0), Rational(1), Integer(5))) == "sqrt(5)");
    CHECK(to_string(QuadElem(Rational(0), Rational(-1), Integer(5))) == "-sqrt(5)");
    for (const char* s : {"0", "-1/2", "sqrt(2)", "3+1/4*sqrt(5)", "-2/7-8*sqrt(-3)"}) {
        QuadElem q = parse_quad(s);
        CHECK(to_string(q) == s);
    }
    CHECK_THROWS_AS(parse_quad("sqrt(4)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_quad("1+"), std::invalid_argument);
    CHECK_THROWS_AS(parse_quad("sqrt(0)"), std::invalid_argument);
}

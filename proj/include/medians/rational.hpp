#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace medians {

using Integer = mpz_class;

/// Exact rational number, always kept in canonical form:
/// gcd(|num|, den) = 1, den >= 1, zero is 0/1.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}                      // NOLINT: implicit on purpose
    Rational(const Integer& n) : v_(n) {}            // NOLINT
    Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

    Rational(const Integer& num, const Integer& den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }

    Integer num() const { return v_.get_num(); }
    Integer den() const { return v_.get_den(); }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return mpq_sgn(v_.get_mpq_t()); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    const mpq_class& raw() const { return v_; }

private:
    explicit Rational(mpq_class v) : v_(std::move(v)) {}
    mpq_class v_;
};

inline Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }
inline Rational square(const Rational& q) { return q * q; }

/// Height of p/q in lowest terms: max(|p|, q). The search truncation measure.
inline Integer height(const Rational& q) {
    Integer n = ::abs(q.num());
    Integer d = q.den();
    return n > d ? n : d;
}

/// "p/q", with "/q" omitted when the denominator is 1. Locale-independent.
std::string to_string(const Rational& q);

/// Parses the to_string format (optionally signed, "p" or "p/q").
Rational parse_rational(const std::string& text);

/// Nonnegative square root if q is the square of a rational, empty otherwise.
/// Tests numerator and denominator separately by integer square root;
/// negative inputs short-circuit to empty.
std::optional<Rational> is_rational_square(const Rational& q);

/// Decomposes n = k * m^2 with k squarefree, sign(k) = sign(n), m >= 1.
/// Trial division up to `bound`, then a primality / perfect-power fallback;
/// throws if n = 0 or if the remaining cofactor cannot be certified squarefree.
std::pair<Integer, Integer> squarefree_part(const Integer& n, unsigned long bound = 1000000);

/// Full prime factorization (trial division + prime/prime-power fallback).
/// Throws when a composite cofactor beyond the trial bound cannot be split.
std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n,
                                                         unsigned long bound = 1000000);

/// All positive divisors of |n|, ascending.
std::vector<Integer> divisors(const Integer& n, unsigned long bound = 1000000);

bool is_squarefree_integer(const Integer& n, unsigned long bound = 1000000);

} // namespace medians

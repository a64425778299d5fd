#pragma once

#include <string>
#include <tuple>

#include "medians/rational.hpp"

namespace medians {

/// Element a + b*sqrt(k) of the real quadratic field Q(sqrt(k)),
/// k a squarefree nonzero integer. Canonical form: b = 0 implies k = 1,
/// and k = 1 folds the radical part into a (sqrt(1) = 1), so every
/// rational value has exactly one representation.
class QuadElem {
public:
    QuadElem() : a_(0), b_(0), k_(1) {}
    QuadElem(long n) : a_(n), b_(0), k_(1) {}           // NOLINT
    QuadElem(Rational a) : a_(std::move(a)), b_(0), k_(1) {} // NOLINT

    QuadElem(Rational a, Rational b, Integer k) : a_(std::move(a)), b_(std::move(b)), k_(std::move(k)) {
        if (k_ == 0) throw std::invalid_argument("QuadElem: k must be nonzero");
        if (!is_squarefree_integer(k_)) throw std::invalid_argument("QuadElem: k must be squarefree");
        normalize();
    }

    const Rational& rational_part() const { return a_; }
    const Rational& radical_coeff() const { return b_; }
    const Integer& field_k() const { return k_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_rational() const { return b_.is_zero(); }

    QuadElem conjugate() const { return raw(a_, -b_, k_); }
    /// a^2 - k*b^2; zero only for the zero element (k squarefree, so never a square).
    Rational norm() const { return a_ * a_ - Rational(k_) * b_ * b_; }

    QuadElem operator-() const { return raw(-a_, -b_, k_); }

    friend QuadElem operator+(const QuadElem& x, const QuadElem& y) {
        auto [a, b, k] = align(x, y);
        return raw(a.a_ + b.a_, a.b_ + b.b_, k);
    }
    friend QuadElem operator-(const QuadElem& x, const QuadElem& y) {
        auto [a, b, k] = align(x, y);
        return raw(a.a_ - b.a_, a.b_ - b.b_, k);
    }
    friend QuadElem operator*(const QuadElem& x, const QuadElem& y) {
        auto [a, b, k] = align(x, y);
        return raw(a.a_ * b.a_ + Rational(k) * a.b_ * b.b_, a.a_ * b.b_ + a.b_ * b.a_, k);
    }
    friend QuadElem operator/(const QuadElem& x, const QuadElem& y) {
        if (y.is_zero()) throw std::domain_error("QuadElem: division by zero");
        auto [a, b, k] = align(x, y);
        Rational n = b.norm();
        QuadElem num = raw(a.a_, a.b_, k) * b.conjugate();
        return raw(num.a_ / n, num.b_ / n, k);
    }

    QuadElem& operator+=(const QuadElem& o) { return *this = *this + o; }
    QuadElem& operator-=(const QuadElem& o) { return *this = *this - o; }
    QuadElem& operator*=(const QuadElem& o) { return *this = *this * o; }
    QuadElem& operator/=(const QuadElem& o) { return *this = *this / o; }

    friend bool operator==(const QuadElem& x, const QuadElem& y) {
        if (x.is_rational() && y.is_rational()) return x.a_ == y.a_;
        return x.k_ == y.k_ && x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const QuadElem& x, const QuadElem& y) { return !(x == y); }

private:
    // Construction bypassing the squarefree re-check; arithmetic preserves it.
    static QuadElem raw(Rational a, Rational b, Integer k) {
        QuadElem e;
        e.a_ = std::move(a);
        e.b_ = std::move(b);
        e.k_ = std::move(k);
        e.normalize();
        return e;
    }

    void normalize() {
        if (k_ == 1) {
            a_ += b_;
            b_ = 0;
        }
        if (b_.is_zero()) k_ = 1;
    }

    // Rational operands embed into the other operand's field; two genuinely
    // radical operands must share k.
    static std::tuple<QuadElem, QuadElem, Integer> align(const QuadElem& x, const QuadElem& y) {
        if (x.k_ == y.k_) return {x, y, x.k_};
        if (x.is_rational()) return {raw(x.a_, 0, y.k_), y, y.k_};
        if (y.is_rational()) return {x, raw(y.a_, 0, x.k_), x.k_};
        throw std::invalid_argument("QuadElem: mismatched radicands " + x.k_.get_str() + " vs " +
                                    y.k_.get_str());
    }

    Rational a_, b_;
    Integer k_;
};

/// "a+b*sqrt(k)" with zero parts elided; pure rationals print as "a".
std::string to_string(const QuadElem& x);

/// Parses "a+b*sqrt(k)" and the elided forms ("a", "b*sqrt(k)", "sqrt(k)", "-sqrt(k)").
QuadElem parse_quad(const std::string& text);

} // namespace medians

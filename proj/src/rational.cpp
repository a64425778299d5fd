#include "medians/rational.hpp"

#include <algorithm>

namespace medians {

std::string to_string(const Rational& q) {
    std::string s = q.num().get_str();
    if (q.den() != 1) {
        s += "/";
        s += q.den().get_str();
    }
    return s;
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(text));
        Integer num(text.substr(0, slash));
        Integer den(text.substr(slash + 1));
        return Rational(num, den);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("parse_rational: bad rational '" + text + "'");
    }
}

std::optional<Rational> is_rational_square(const Rational& q) {
    if (q.sign() < 0) return std::nullopt;
    if (q.is_zero()) return Rational(0);
    Integer n = q.num(), d = q.den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return std::nullopt;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Rational(rn, rd);
}

namespace {

// Largest e with r = s^e exact; returns (s, e), e = 1 when r is not a perfect power.
std::pair<Integer, unsigned> max_power_decompose(const Integer& r) {
    unsigned max_e = std::max<unsigned>(1, mpz_sizeinbase(r.get_mpz_t(), 2));
    for (unsigned e = max_e; e >= 2; --e) {
        Integer root;
        if (mpz_root(root.get_mpz_t(), r.get_mpz_t(), e) != 0) return {root, e};
    }
    return {r, 1};
}

bool probably_prime(const Integer& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

// Trial division by 2, 3, 5, 7, ... up to `bound`. Appends (p, e) factors and
// returns the unfactored cofactor (1 when the cofactor is certified prime).
Integer trial_divide(Integer a, unsigned long bound,
                     std::vector<std::pair<Integer, unsigned>>& out) {
    auto strip = [&](unsigned long p) {
        unsigned e = 0;
        while (mpz_divisible_ui_p(a.get_mpz_t(), p)) {
            mpz_divexact_ui(a.get_mpz_t(), a.get_mpz_t(), p);
            ++e;
        }
        if (e) out.emplace_back(Integer(static_cast<long>(p)), e);
    };
    strip(2);
    strip(3);
    bool exhausted = false; // no divisor <= sqrt(a) remains untried
    for (unsigned long p = 5;; p += 6) {
        if (Integer(static_cast<long>(p)) * static_cast<long>(p) > a) {
            exhausted = true;
            break;
        }
        if (p > bound) break;
        strip(p);
        if (p + 2 <= bound) strip(p + 2);
    }
    if (a == 1) return a;
    if (exhausted || probably_prime(a)) {
        out.emplace_back(a, 1);
        return Integer(1);
    }
    return a;
}

} // namespace

std::vector<std::pair<Integer, unsigned>> factor_integer(const Integer& n, unsigned long bound) {
    if (n == 0) throw std::domain_error("factor_integer: zero");
    std::vector<std::pair<Integer, unsigned>> out;
    Integer a = ::abs(n);
    if (a == 1) return out;
    Integer r = trial_divide(a, bound, out);
    if (r != 1) {
        auto [s, e] = max_power_decompose(r);
        if (!probably_prime(s))
            throw std::runtime_error("factor_integer: composite cofactor " + s.get_str() +
                                     " beyond trial bound");
        out.emplace_back(s, e);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<Integer, Integer> squarefree_part(const Integer& n, unsigned long bound) {
    if (n == 0) throw std::domain_error("zero has no squarefree part");
    Integer k = 1, m = 1;
    Integer a = ::abs(n);
    std::vector<std::pair<Integer, unsigned>> factors;
    Integer r = trial_divide(a, bound, factors);
    for (const auto& [p, e] : factors) {
        if (e % 2) k *= p;
        Integer ph;
        mpz_pow_ui(ph.get_mpz_t(), p.get_mpz_t(), e / 2);
        m *= ph;
    }
    if (r != 1) {
        // r has no prime factor <= bound. Peel off the maximal perfect power;
        // the base s is then certified squarefree when it is prime, or when it
        // is smaller than bound^3 (at most two distinct primes fit, and s = p^2
        // would have joined the perfect power).
        auto [s, e] = max_power_decompose(r);
        Integer b3 = Integer(static_cast<long>(bound));
        b3 = b3 * b3 * b3;
        if (!probably_prime(s) && s >= b3)
            throw std::runtime_error("squarefree_part: cofactor " + s.get_str() +
                                     " too large to certify squarefree");
        if (e % 2) k *= s;
        Integer sh;
        mpz_pow_ui(sh.get_mpz_t(), s.get_mpz_t(), e / 2);
        m *= sh;
    }
    if (n < 0) k = -k;
    return {k, m};
}

std::vector<Integer> divisors(const Integer& n, unsigned long bound) {
    if (n == 0) throw std::domain_error("divisors: zero");
    auto factors = factor_integer(n, bound);
    std::vector<Integer> out{Integer(1)};
    for (const auto& [p, e] : factors) {
        size_t sz = out.size();
        Integer pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < sz; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_squarefree_integer(const Integer& n, unsigned long bound) {
    if (n == 0) return false;
    return squarefree_part(n, bound).second == 1;
}

} // namespace medians

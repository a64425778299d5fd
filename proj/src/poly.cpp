#include "medians/poly.hpp"

namespace medians {

namespace {

// Horner evaluation of an ascending coefficient vector.
Rational eval_dense(const std::vector<Rational>& w, const Rational& r) {
    Rational acc(0);
    for (auto it = w.rbegin(); it != w.rend(); ++it) acc = acc * r + *it;
    return acc;
}

// Divides out a known root: returns q with w(x) = (x - r) * q(x).
std::vector<Rational> deflate(const std::vector<Rational>& w, const Rational& r) {
    std::vector<Rational> q(w.size() - 1);
    Rational carry(0);
    for (size_t i = w.size() - 1; i > 0; --i) {
        carry = w[i] + r * carry;
        q[i - 1] = carry;
    }
    return q;
}

} // namespace

std::vector<Rational> rational_roots(const Poly<Rational>& p) {
    if (p.is_zero()) throw std::domain_error("rational_roots: zero polynomial");
    std::string var = detail::univariate_var(p, "rational_roots");
    std::vector<Rational> coeffs = detail::dense_coeffs(p, var);

    std::vector<Rational> roots;
    if (coeffs.size() == 1) return roots; // nonzero constant

    // Primitive integer form: clear denominators, divide out the content.
    Integer scale(1);
    for (const auto& c : coeffs) scale = lcm(scale, c.den());
    std::vector<Integer> prim;
    prim.reserve(coeffs.size());
    for (const auto& c : coeffs) prim.push_back(c.num() * (scale / c.den()));
    Integer content(0);
    for (const auto& c : prim) content = gcd(content, c);
    for (auto& c : prim) c /= content;

    // x^t factor contributes t roots at zero.
    size_t t = 0;
    while (prim[t] == 0) {
        roots.emplace_back(0);
        ++t;
    }

    std::vector<Rational> work(prim.begin() + static_cast<long>(t), prim.end());
    if (work.size() > 1) {
        // Rational-root theorem: any root u/v has u | constant, v | leading.
        // The original endpoints stay valid bounds for every deflation.
        std::vector<Integer> us = divisors(prim[t]);
        std::vector<Integer> vs = divisors(prim.back());
        for (const Integer& u : us) {
            for (const Integer& v : vs) {
                if (gcd(u, v) != 1) continue;
                for (int sign : {1, -1}) {
                    Rational r(sign > 0 ? u : Integer(-u), v);
                    while (work.size() > 1 && eval_dense(work, r).is_zero()) {
                        roots.push_back(r);
                        work = deflate(work, r);
                    }
                }
            }
        }
    }

    std::sort(roots.begin(), roots.end(), [](const Rational& a, const Rational& b) { return b < a; });
    return roots;
}

} // namespace medians

#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "medians/gaussian.hpp"
#include "medians/rational.hpp"

namespace medians {

/// Monomial order used for storage and printing: lower total degree first,
/// ties broken so that variables earlier in the context sort first
/// (x^2 before x*y before y^2). This is a genuine monomial order, so the
/// largest stored term is a valid leading term for exact division.
struct GradedLexLess {
    bool operator()(const std::vector<unsigned>& a, const std::vector<unsigned>& b) const {
        unsigned da = std::accumulate(a.begin(), a.end(), 0u);
        unsigned db = std::accumulate(b.begin(), b.end(), 0u);
        if (da != db) return da < db;
        return a > b; // lexicographically larger exponent on early variables prints first
    }
};

/// Sparse multivariate polynomial over an exact field K (Rational or
/// GaussianRational). A Poly carries its ordered variable context; arithmetic
/// requires both operands to share the same context. Immutable in practice:
/// every operation returns a fresh value, so Polys are safe to share across
/// threads.
template <typename K>
class Poly {
public:
    using Exponents = std::vector<unsigned>;
    using TermMap = std::map<Exponents, K, GradedLexLess>;

    Poly() = default;
    explicit Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static Poly constant(std::vector<std::string> vars, const K& c) {
        Poly p(std::move(vars));
        if (!(c == K(0))) p.terms_[Exponents(p.vars_.size(), 0)] = c;
        return p;
    }
    static Poly variable(std::vector<std::string> vars, const std::string& name) {
        Poly p(std::move(vars));
        Exponents e(p.vars_.size(), 0);
        e[p.var_index(name)] = 1;
        p.terms_[e] = K(1);
        return p;
    }
    static Poly monomial(std::vector<std::string> vars, Exponents exps, const K& c) {
        Poly p(std::move(vars));
        if (exps.size() != p.vars_.size())
            throw std::invalid_argument("Poly: exponent vector does not match variable count");
        if (!(c == K(0))) p.terms_[std::move(exps)] = c;
        return p;
    }

    const std::vector<std::string>& variables() const { return vars_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && total_degree_of(terms_.begin()->first) == 0);
    }

    K constant_value() const {
        if (is_zero()) return K(0);
        if (!is_constant()) throw std::domain_error("Poly: not a constant polynomial");
        return terms_.begin()->second;
    }

    /// Total degree; -1 for the zero polynomial.
    int degree() const {
        if (terms_.empty()) return -1;
        return static_cast<int>(total_degree_of(terms_.rbegin()->first));
    }

    int degree_in(const std::string& name) const {
        size_t i = var_index(name);
        unsigned d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
        return terms_.empty() ? -1 : static_cast<int>(d);
    }

    /// Names of the variables that actually occur with positive exponent.
    std::vector<std::string> active_variables() const {
        std::vector<std::string> out;
        for (size_t i = 0; i < vars_.size(); ++i) {
            for (const auto& [e, c] : terms_) {
                if (e[i] > 0) {
                    out.push_back(vars_[i]);
                    break;
                }
            }
        }
        return out;
    }

    size_t var_index(const std::string& name) const {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end())
            throw std::invalid_argument("Poly: unknown variable '" + name + "'");
        return static_cast<size_t>(it - vars_.begin());
    }

    Poly operator-() const {
        Poly r(vars_);
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        a.check_context(b);
        Poly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        a.check_context(b);
        Poly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_context(b);
        Poly r(a.vars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(ea.size());
                for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    friend Poly operator*(const K& c, const Poly& p) {
        Poly r(p.vars_);
        if (c == K(0)) return r;
        for (const auto& [e, pc] : p.terms_) r.terms_[e] = c * pc;
        return r;
    }
    friend Poly operator*(const Poly& p, const K& c) { return c * p; }
    friend Poly operator+(const Poly& p, const K& c) {
        return p + constant(p.vars_, c);
    }
    friend Poly operator-(const Poly& p, const K& c) {
        return p - constant(p.vars_, c);
    }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly pow(unsigned n) const {
        Poly r = constant(vars_, K(1));
        for (unsigned i = 0; i < n; ++i) r *= *this;
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Exact value at a point covering every variable of the context.
    /// The point must cover every variable that actually occurs; unused
    /// context variables may be omitted.
    K eval(const std::map<std::string, K>& point) const {
        std::vector<K> vals(vars_.size(), K(0));
        std::vector<bool> have(vars_.size(), false);
        for (size_t i = 0; i < vars_.size(); ++i) {
            auto it = point.find(vars_[i]);
            if (it == point.end()) continue;
            vals[i] = it->second;
            have[i] = true;
        }
        K acc(0);
        for (const auto& [e, c] : terms_) {
            K t = c;
            for (size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (!have[i])
                    throw std::invalid_argument("Poly: evaluation point missing variable '" +
                                                vars_[i] + "'");
                for (unsigned j = 0; j < e[i]; ++j) t *= vals[i];
            }
            acc += t;
        }
        return acc;
    }

    /// Formal partial derivative with respect to one context variable.
    Poly derivative(const std::string& name) const {
        size_t i = var_index(name);
        Poly r(vars_);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exponents d = e;
            --d[i];
            r.add_term(d, c * K(static_cast<long>(e[i])));
        }
        return r;
    }

    /// Coefficients with respect to one variable, ascending degree; each entry
    /// is a polynomial in the remaining variables (same context). Empty for 0.
    std::vector<Poly> coefficients_in(const std::string& name) const {
        size_t i = var_index(name);
        int d = degree_in(name);
        if (is_zero()) return {};
        std::vector<Poly> out(static_cast<size_t>(d) + 1, Poly(vars_));
        for (const auto& [e, c] : terms_) {
            Exponents rest = e;
            unsigned k = rest[i];
            rest[i] = 0;
            out[k].add_term(rest, c);
        }
        return out;
    }

    /// Substitutes an exact value for one variable; the context is unchanged.
    Poly substitute(const std::string& name, const K& value) const {
        size_t i = var_index(name);
        Poly r(vars_);
        for (const auto& [e, c] : terms_) {
            K t = c;
            for (unsigned j = 0; j < e[i]; ++j) t *= value;
            Exponents rest = e;
            rest[i] = 0;
            r.add_term(rest, t);
        }
        return r;
    }

    /// Rewrites name^2 := value throughout (coefficient adjunction of a square
    /// root: the context variable stands for sqrt(value)).
    Poly reduce_square(const std::string& name, const K& value) const {
        size_t i = var_index(name);
        Poly r(vars_);
        for (const auto& [e, c] : terms_) {
            K t = c;
            for (unsigned j = 0; j < e[i] / 2; ++j) t *= value;
            Exponents rest = e;
            rest[i] = e[i] % 2;
            r.add_term(rest, t);
        }
        return r;
    }

    /// The same polynomial re-expressed in a wider (or reordered) variable
    /// context; every active variable must exist in the new context.
    Poly in_context(std::vector<std::string> vars) const {
        Poly out(std::move(vars));
        for (const auto& [e, c] : terms_) {
            Exponents ne(out.vars_.size(), 0);
            for (size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                ne[out.var_index(vars_[i])] = e[i];
            }
            out.add_term(ne, c);
        }
        return out;
    }

    /// Largest term under the storage order; the division algorithm's pivot.
    std::pair<Exponents, K> leading_term() const {
        if (terms_.empty()) throw std::domain_error("Poly: zero polynomial has no leading term");
        return *terms_.rbegin();
    }

    void add_term(const Exponents& e, const K& c) {
        if (c == K(0)) return;
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == K(0)) terms_.erase(it);
        }
    }

private:
    static unsigned total_degree_of(const Exponents& e) {
        return std::accumulate(e.begin(), e.end(), 0u);
    }

    void check_context(const Poly& o) const {
        if (vars_ != o.vars_)
            throw std::invalid_argument("Poly: operands live in different variable contexts");
    }

    std::vector<std::string> vars_;
    TermMap terms_;
};

using RationalPoly = Poly<Rational>;
using GaussianPoly = Poly<GaussianRational>;

namespace detail {

/// Splits a coefficient into (prints-as-negative, body text, needs-parens)
/// for polynomial rendering.
inline std::tuple<bool, std::string, bool> coeff_display(const Rational& c) {
    return {c.sign() < 0, to_string(abs(c)), false};
}
inline std::tuple<bool, std::string, bool> coeff_display(const GaussianRational& c) {
    if (c.is_real()) return coeff_display(c.re());
    return {false, to_string(c), true};
}

} // namespace detail

/// Fully expanded text form, terms sorted by ascending total degree with
/// earlier variables first inside a degree, e.g. "1 - x^2 + 6/5*x*y - y^2".
/// Deterministic across runs; the certificate wire format.
template <typename K>
std::string to_string(const Poly<K>& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        auto [neg, body, parens] = detail::coeff_display(c);
        std::string mono;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += p.variables()[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (first) {
            if (neg) out << "-";
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        if (mono.empty()) {
            out << (parens ? "(" + body + ")" : body);
        } else if (body == "1" && !parens) {
            out << mono;
        } else {
            out << (parens ? "(" + body + ")" : body) << "*" << mono;
        }
    }
    return out.str();
}

/// Exact quotient A / B; throws std::domain_error if B = 0 and
/// std::logic_error if the division is not exact. Used by the fraction-free
/// determinant, where divisibility is guaranteed.
template <typename K>
Poly<K> divide_exact(const Poly<K>& a, const Poly<K>& b) {
    if (b.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
    Poly<K> quot(a.variables());
    Poly<K> rem = a;
    auto [eb, cb] = b.leading_term();
    while (!rem.is_zero()) {
        auto [er, cr] = rem.leading_term();
        typename Poly<K>::Exponents q(er.size());
        for (size_t i = 0; i < er.size(); ++i) {
            if (er[i] < eb[i]) throw std::logic_error("Poly: inexact division");
            q[i] = er[i] - eb[i];
        }
        Poly<K> t = Poly<K>::monomial(a.variables(), q, cr / cb);
        quot += t;
        rem -= b * t;
    }
    return quot;
}

namespace detail {

/// Fraction-free (Bareiss) determinant of a square matrix of polynomials.
/// Intermediate entries stay polynomial because each division is by a prior
/// pivot that exactly divides.
template <typename K>
Poly<K> bareiss_determinant(std::vector<std::vector<Poly<K>>> m,
                            const std::vector<std::string>& vars) {
    size_t n = m.size();
    Poly<K> one = Poly<K>::constant(vars, K(1));
    if (n == 0) return one;
    Poly<K> prev = one;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t r = k + 1;
            while (r < n && m[r][k].is_zero()) ++r;
            if (r == n) return Poly<K>(vars); // singular
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j)
                m[i][j] = divide_exact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev);
            m[i][k] = Poly<K>(vars);
        }
        prev = m[k][k];
    }
    Poly<K> det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

/// Sylvester determinant in `var`, tolerating degree 0 in the second input
/// (res(P, c) = c^deg P). Convention: res(P, Q) = lc(Q)^deg(P) * prod of P
/// over the roots of Q, i.e. res(x, x-1) = +1.
template <typename K>
Poly<K> sylvester_resultant(const Poly<K>& p, const Poly<K>& q, const std::string& var) {
    const auto& vars = p.variables();
    if (p.is_zero() || q.is_zero()) return Poly<K>(vars);
    std::vector<Poly<K>> pc = p.coefficients_in(var); // ascending
    std::vector<Poly<K>> qc = q.coefficients_in(var);
    size_t m = pc.size() - 1, n = qc.size() - 1;
    size_t dim = m + n;
    if (dim == 0) return Poly<K>::constant(vars, K(1));
    std::vector<std::vector<Poly<K>>> mat(dim, std::vector<Poly<K>>(dim, Poly<K>(vars)));
    for (size_t r = 0; r < m; ++r)          // rows of Q's coefficients, descending
        for (size_t j = 0; j <= n; ++j) mat[r][r + j] = qc[n - j];
    for (size_t r = 0; r < n; ++r)          // rows of P's coefficients, descending
        for (size_t j = 0; j <= m; ++j) mat[m + r][r + j] = pc[m - j];
    return bareiss_determinant(std::move(mat), vars);
}

} // namespace detail

/// Resultant of P and Q with respect to `var`: the Sylvester determinant, a
/// polynomial in the remaining variables that vanishes exactly on the
/// projections of common roots. Both inputs must depend on `var`.
template <typename K>
Poly<K> resultant(const Poly<K>& p, const Poly<K>& q, const std::string& var) {
    if (p.variables() != q.variables())
        throw std::invalid_argument("resultant: operands live in different variable contexts");
    if (p.is_zero() || q.is_zero() || p.degree_in(var) < 1 || q.degree_in(var) < 1)
        throw std::invalid_argument("resultant: both inputs must depend on '" + var + "'");
    return detail::sylvester_resultant(p, q, var);
}

namespace detail {

/// The single active variable of a univariate polynomial.
template <typename K>
std::string univariate_var(const Poly<K>& p, const char* op) {
    auto active = p.active_variables();
    if (active.size() > 1)
        throw std::invalid_argument(std::string(op) + ": polynomial is not univariate");
    if (active.empty()) {
        if (p.variables().empty())
            throw std::invalid_argument(std::string(op) + ": polynomial has no variables");
        return p.variables().front(); // constant: any context variable will do
    }
    return active.front();
}

/// Dense ascending coefficient vector of a univariate polynomial.
template <typename K>
std::vector<K> dense_coeffs(const Poly<K>& p, const std::string& var) {
    std::vector<K> out;
    for (const auto& c : p.coefficients_in(var)) out.push_back(c.constant_value());
    return out;
}

template <typename K>
void trim_zeros(std::vector<K>& v) {
    while (!v.empty() && v.back() == K(0)) v.pop_back();
}

/// Remainder of dense univariate division over a field.
template <typename K>
std::vector<K> dense_mod(std::vector<K> a, const std::vector<K>& b) {
    while (a.size() >= b.size()) {
        K f = a.back() / b.back();
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= f * b[i];
        a.pop_back();
        trim_zeros(a);
        if (a.empty()) break;
    }
    return a;
}

} // namespace detail

/// Monic gcd of two univariate polynomials over the coefficient field.
template <typename K>
Poly<K> gcd_univariate(const Poly<K>& p, const Poly<K>& q) {
    if (p.variables() != q.variables())
        throw std::invalid_argument("gcd: operands live in different variable contexts");
    if (p.is_zero() && q.is_zero())
        throw std::domain_error("gcd: both polynomials are zero");
    std::string var = p.is_zero() ? detail::univariate_var(q, "gcd")
                                  : detail::univariate_var(p, "gcd");
    if (!q.is_zero()) {
        std::string vq = detail::univariate_var(q, "gcd");
        if (!p.is_zero() && !q.is_constant() && !p.is_constant() && var != vq)
            throw std::invalid_argument("gcd: operands involve different variables");
        if (p.is_zero() || p.is_constant()) var = vq;
    }
    std::vector<K> a = detail::dense_coeffs(p, var);
    std::vector<K> b = detail::dense_coeffs(q, var);
    while (!b.empty()) {
        auto r = detail::dense_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    Poly<K> g(p.variables());
    if (a.empty()) return g;
    K lead = a.back();
    size_t vi = g.var_index(var);
    for (size_t i = 0; i < a.size(); ++i) {
        typename Poly<K>::Exponents e(p.variables().size(), 0);
        e[vi] = static_cast<unsigned>(i);
        g.add_term(e, a[i] / lead);
    }
    return g;
}

/// True iff gcd(P, P') is constant: P has no repeated roots over any
/// extension field.
template <typename K>
bool is_squarefree(const Poly<K>& p) {
    std::string var = detail::univariate_var(p, "is_squarefree");
    if (p.degree() < 1)
        throw std::invalid_argument("is_squarefree: degree must be at least 1");
    return gcd_univariate(p, p.derivative(var)).degree() == 0;
}

/// Discriminant of a univariate polynomial:
/// (-1)^(d(d-1)/2) * res(P, P') / lc(P). Zero iff P has a repeated root.
template <typename K>
K discriminant_univariate(const Poly<K>& p) {
    std::string var = detail::univariate_var(p, "discriminant");
    int d = p.degree_in(var);
    if (d < 1) throw std::invalid_argument("discriminant: degree must be at least 1");
    K res = detail::sylvester_resultant(p, p.derivative(var), var).constant_value();
    K lead = p.coefficients_in(var).back().constant_value();
    K disc = res / lead;
    return (static_cast<unsigned>(d) * (d - 1) / 2) % 2 == 1 ? -disc : disc;
}

/// All rational roots, with multiplicity, largest first. Rational-root
/// theorem on the primitive integer form, with deflation for multiplicity.
std::vector<Rational> rational_roots(const Poly<Rational>& p);

} // namespace medians

#include "medians/gaussian.hpp"
#include "medians/quad.hpp"

namespace medians {

namespace {

// Appends "+term" or "-term" to a sum under construction.
void append_signed(std::string& out, const Rational& coeff, const std::string& symbol) {
    Rational c = coeff;
    if (out.empty()) {
        if (c.sign() < 0) {
            out += "-";
            c = -c;
        }
    } else {
        out += c.sign() < 0 ? "-" : "+";
        if (c.sign() < 0) c = -c;
    }
    if (symbol.empty()) {
        out += to_string(c);
    } else if (c == Rational(1)) {
        out += symbol;
    } else {
        out += to_string(c) + "*" + symbol;
    }
}

} // namespace

std::string to_string(const GaussianRational& z) {
    if (z.is_zero()) return "0";
    std::string out;
    if (!z.re().is_zero()) append_signed(out, z.re(), "");
    if (!z.im().is_zero()) append_signed(out, z.im(), "i");
    return out;
}

std::string to_string(const QuadElem& x) {
    if (x.is_zero()) return "0";
    std::string out;
    if (!x.rational_part().is_zero()) append_signed(out, x.rational_part(), "");
    if (!x.radical_coeff().is_zero())
        append_signed(out, x.radical_coeff(), "sqrt(" + x.field_k().get_str() + ")");
    return out;
}

QuadElem parse_quad(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_quad: empty string");
    // Split into signed terms at top level (no parens nesting beyond sqrt()).
    Rational a(0), b(0);
    Integer k(1);
    bool saw_radical = false;
    size_t i = 0;
    while (i < text.size()) {
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
        }
        size_t start = i;
        int depth = 0;
        while (i < text.size() && (depth > 0 || (text[i] != '+' && text[i] != '-'))) {
            if (text[i] == '(') ++depth;
            if (text[i] == ')') --depth;
            ++i;
        }
        std::string term = text.substr(start, i - start);
        if (term.empty()) throw std::invalid_argument("parse_quad: bad term in '" + text + "'");
        auto sq = term.find("sqrt(");
        if (sq == std::string::npos) {
            a += Rational(sign) * parse_rational(term);
            continue;
        }
        if (term.back() != ')')
            throw std::invalid_argument("parse_quad: unterminated sqrt in '" + text + "'");
        Integer kk(term.substr(sq + 5, term.size() - sq - 6));
        std::string coeff = term.substr(0, sq);
        if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
        Rational c = coeff.empty() ? Rational(1) : parse_rational(coeff);
        if (saw_radical && kk != k)
            throw std::invalid_argument("parse_quad: mixed radicands in '" + text + "'");
        saw_radical = true;
        k = kk;
        b += Rational(sign) * c;
    }
    return QuadElem(a, b, saw_radical ? k : Integer(1));
}

} // namespace medians

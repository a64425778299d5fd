#include "medians/triangle.hpp"

#include <utility>

namespace medians {

TriangleSides::TriangleSides(Rational a_, Rational b_, Rational c_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)) {
    if (a.sign() <= 0 || b.sign() <= 0 || c.sign() <= 0)
        throw std::domain_error("TriangleSides: sides must be positive");
    if (a + b < c || b + c < a || c + a < b)
        throw std::domain_error("TriangleSides: triangle inequality violated");
}

bool TriangleSides::is_degenerate() const { return a + b == c || b + c == a || c + a == b; }

MedianTriple medians_squared_from_sides(const TriangleSides& s) {
    auto med = [](const Rational& own, const Rational& p, const Rational& q) {
        return (Rational(2) * square(p) + Rational(2) * square(q) - square(own)) / Rational(4);
    };
    return {med(s.a, s.b, s.c), med(s.b, s.c, s.a), med(s.c, s.a, s.b)};
}

Rational area_squared_from_sides(const TriangleSides& s) {
    Rational a2 = square(s.a), b2 = square(s.b), c2 = square(s.c);
    return (Rational(2) * (a2 * b2 + b2 * c2 + c2 * a2) - a2 * a2 - b2 * b2 - c2 * c2) /
           Rational(16);
}

std::string to_string(TriangleDefect d) {
    switch (d) {
        case TriangleDefect::none: return "none";
        case TriangleDefect::m1: return "m1";
        case TriangleDefect::m2: return "m2";
        case TriangleDefect::m3: return "m3";
        case TriangleDefect::area: return "area";
    }
    return "?";
}

PerfectVerdict is_perfect_triangle(const TriangleSides& s) {
    MedianTriple m = medians_squared_from_sides(s);
    if (!is_rational_square(m.m1_sq)) return {false, TriangleDefect::m1};
    if (!is_rational_square(m.m2_sq)) return {false, TriangleDefect::m2};
    if (!is_rational_square(m.m3_sq)) return {false, TriangleDefect::m3};
    if (!is_rational_square(area_squared_from_sides(s))) return {false, TriangleDefect::area};
    return {true, TriangleDefect::none};
}

QuadPoint::QuadPoint(Rational x_, Rational y_coeff_, Integer k_)
    : x(std::move(x_)), y_coeff(std::move(y_coeff_)), k(std::move(k_)) {
    if (y_coeff.is_zero()) k = 1; // the ordinate is 0 regardless of the radicand
    if (k < 1) throw std::invalid_argument("QuadPoint: k must be positive (real plane point)");
    if (!is_squarefree_integer(k)) throw std::invalid_argument("QuadPoint: k must be squarefree");
}

std::string to_string(const QuadPoint& p) {
    return "(" + to_string(p.x) + ", " + to_string(QuadElem(Rational(0), p.y_coeff, p.k)) + ")";
}

namespace {

// The one radicand shared by all genuinely irrational ordinates; 1 when all
// ordinates are rational. Throws on a mix of distinct radicands.
Integer shared_k(const QuadPoint& p1, const QuadPoint& p2, const QuadPoint& p3) {
    Integer k(0); // unset; points with a zero ordinate are field-agnostic
    for (const QuadPoint* p : {&p1, &p2, &p3}) {
        if (p->y_coeff.is_zero()) continue;
        if (k == 0) {
            k = p->k;
        } else if (k != p->k) {
            throw std::domain_error("QuadPoint: mismatched radicands " + k.get_str() + " vs " +
                                    p->k.get_str());
        }
    }
    return k == 0 ? Integer(1) : k;
}

} // namespace

bool are_collinear(const QuadPoint& p1, const QuadPoint& p2, const QuadPoint& p3) {
    shared_k(p1, p2, p3); // reject mixed fields
    // Cross product of (p2-p1, p3-p1); the sqrt(k) factors out of ordinates.
    Rational cross = (p2.x - p1.x) * (p3.y_coeff - p1.y_coeff) -
                     (p2.y_coeff - p1.y_coeff) * (p3.x - p1.x);
    return cross.is_zero();
}

PointMedians medians_squared_from_points(const QuadPoint& p1, const QuadPoint& p2,
                                         const QuadPoint& p3) {
    Rational k(shared_k(p1, p2, p3));
    // Median from `v` to the midpoint of `e1 e2`; ordinates are pure
    // multiples of sqrt(k), so the squared length is rational.
    auto med = [&](const QuadPoint& e1, const QuadPoint& e2, const QuadPoint& v) {
        Rational dx = (Rational(2) * v.x - e1.x - e2.x) / Rational(2);
        Rational dc = (Rational(2) * v.y_coeff - e1.y_coeff - e2.y_coeff) / Rational(2);
        return square(dx) + k * square(dc);
    };
    MedianTriple m{med(p1, p2, p3), med(p2, p3, p1), med(p3, p1, p2)};
    return {m, are_collinear(p1, p2, p3)};
}

bool is_rational_median_triple(const QuadPoint& p1, const QuadPoint& p2, const QuadPoint& p3) {
    PointMedians pm = medians_squared_from_points(p1, p2, p3);
    if (pm.collinear) return false;
    return is_rational_square(pm.medians.m1_sq).has_value() &&
           is_rational_square(pm.medians.m2_sq).has_value() &&
           is_rational_square(pm.medians.m3_sq).has_value();
}

namespace {

// Complex number over a real quadratic field; just enough for the
// normalizing similarity z -> (z - z0) / (z1 - z0).
struct FieldComplex {
    QuadElem re, im;

    FieldComplex operator-(const FieldComplex& o) const { return {re - o.re, im - o.im}; }

    FieldComplex operator/(const FieldComplex& o) const {
        // (a+bi)/(c+di) = (a+bi)(c-di)/(c^2+d^2); the denominator is nonzero
        // for o != 0 because the field is real.
        QuadElem n = o.re * o.re + o.im * o.im;
        QuadElem r = re * o.re + im * o.im;
        QuadElem i = im * o.re - re * o.im;
        return {r / n, i / n};
    }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

} // namespace

MedianSet normalize_median_set(const std::vector<std::pair<QuadElem, QuadElem>>& raw) {
    if (raw.size() < 2)
        throw std::invalid_argument("normalize_median_set: need at least two points");
    for (const auto& [x, y] : raw) {
        if (x.field_k() < 0 || y.field_k() < 0)
            throw std::invalid_argument("normalize_median_set: coordinates must be real");
    }
    FieldComplex z0{raw[0].first, raw[0].second};
    FieldComplex d = FieldComplex{raw[1].first, raw[1].second} - z0;
    if (d.is_zero())
        throw std::invalid_argument("normalize_median_set: first two points coincide");

    std::vector<std::pair<Rational, QuadElem>> images; // (rational x, ordinate)
    for (size_t j = 0; j < raw.size(); ++j) {
        FieldComplex w = (FieldComplex{raw[j].first, raw[j].second} - z0) / d;
        if (!w.re.is_rational())
            throw MedianSetFormError("normalize_median_set: image abscissa of point " +
                                         std::to_string(j) + " is irrational: " + to_string(w.re),
                                     j);
        images.emplace_back(w.re.rational_part(), w.im);
    }

    // Every nonzero ordinate must be a pure multiple of one sqrt(k).
    Integer k(0); // unset
    for (size_t j = 0; j < images.size(); ++j) {
        const QuadElem& v = images[j].second;
        if (v.is_zero()) continue;
        Integer kj;
        if (v.is_rational()) {
            kj = 1;
        } else if (v.rational_part().is_zero()) {
            kj = v.field_k();
        } else {
            throw MedianSetFormError("normalize_median_set: image ordinate of point " +
                                         std::to_string(j) +
                                         " mixes rational and radical parts: " + to_string(v),
                                     j);
        }
        if (k == 0) {
            k = kj;
        } else if (k != kj) {
            throw MedianSetFormError("normalize_median_set: point " + std::to_string(j) +
                                         " needs radicand " + kj.get_str() +
                                         " but the set uses " + k.get_str(),
                                     j);
        }
    }
    if (k == 0) k = 1;

    MedianSet out;
    out.k = k;
    out.normalized = true;
    for (const auto& [x, v] : images) {
        Rational coeff = v.is_rational() ? v.rational_part() : v.radical_coeff();
        out.points.emplace_back(x, coeff, coeff.is_zero() ? Integer(1) : k);
    }
    return out;
}

MedianSet normalize_median_set(const std::vector<QuadPoint>& raw) {
    std::vector<std::pair<QuadElem, QuadElem>> lifted;
    lifted.reserve(raw.size());
    for (const auto& p : raw)
        lifted.emplace_back(QuadElem(p.x), QuadElem(Rational(0), p.y_coeff, p.k));
    return normalize_median_set(lifted);
}

Rational third_vertex_x_from_medians(const Rational& r1, const Rational& r2) {
    return (square(r1) - Rational(4) * square(r2)) / Rational(3) + Rational(5, 4);
}

MedianSetVerdict verify_median_set(const MedianSet& s) {
    if (s.points.size() < 3)
        throw std::invalid_argument("verify_median_set: need at least three points");
    for (size_t i = 0; i < s.points.size(); ++i) {
        for (size_t j = i + 1; j < s.points.size(); ++j) {
            for (size_t l = j + 1; l < s.points.size(); ++l) {
                PointMedians pm = medians_squared_from_points(s.points[i], s.points[j],
                                                              s.points[l]);
                if (pm.collinear) continue;
                if (!is_rational_square(pm.medians.m1_sq) ||
                    !is_rational_square(pm.medians.m2_sq) ||
                    !is_rational_square(pm.medians.m3_sq))
                    return {false, {{i, j, l}}};
            }
        }
    }
    return {true, std::nullopt};
}

} // namespace medians

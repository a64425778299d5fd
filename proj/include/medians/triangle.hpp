#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "medians/quad.hpp"
#include "medians/rational.hpp"

namespace medians {

/// Positive rational side lengths satisfying the (non-strict) triangle
/// inequality. The degenerate boundary a + b = c is representable so that
/// collapse behaviour (zero area) stays testable; is_degenerate() reports it.
struct TriangleSides {
    Rational a, b, c;

    TriangleSides(Rational a_, Rational b_, Rational c_);

    bool is_degenerate() const;
};

/// Squared median lengths; m_i bisects side i (m1 is drawn to side a).
struct MedianTriple {
    Rational m1_sq, m2_sq, m3_sq;
};

/// m_i^2 = (2 * other^2 + 2 * other^2 - own^2) / 4, exactly.
MedianTriple medians_squared_from_sides(const TriangleSides& s);

/// Heron in side-only form: (2a^2b^2 + 2b^2c^2 + 2c^2a^2 - a^4 - b^4 - c^4)/16.
Rational area_squared_from_sides(const TriangleSides& s);

/// First quantity, in the order m1, m2, m3, area, whose square fails to be a
/// rational square; `none` means the triangle is perfect.
enum class TriangleDefect { none, m1, m2, m3, area };

struct PerfectVerdict {
    bool perfect;
    TriangleDefect first_failure;
};

std::string to_string(TriangleDefect d);

/// Perfect iff all three medians and the area are rational.
PerfectVerdict is_perfect_triangle(const TriangleSides& s);

/// Plane point (x, y_coeff * sqrt(k)) with k squarefree and positive;
/// rational points use k = 1. The shape every member of a normalized
/// rational median set must take.
struct QuadPoint {
    Rational x;
    Rational y_coeff;
    Integer k;

    QuadPoint(Rational x_, Rational y_coeff_, Integer k_);

    friend bool operator==(const QuadPoint& p, const QuadPoint& q) {
        return p.x == q.x && p.y_coeff == q.y_coeff &&
               (p.k == q.k || p.y_coeff.is_zero());
    }
    friend bool operator!=(const QuadPoint& p, const QuadPoint& q) { return !(p == q); }
};

std::string to_string(const QuadPoint& p);

/// Exact collinearity test via the cross product of difference vectors.
bool are_collinear(const QuadPoint& p1, const QuadPoint& p2, const QuadPoint& p3);

/// Squared medians of the triangle on three such points. Because ordinates
/// are pure multiples of one sqrt(k), every squared median lands in Q.
/// m1 bisects the segment p1p2 (and is drawn from p3), cyclically.
struct PointMedians {
    MedianTriple medians;
    bool collinear;
};

PointMedians medians_squared_from_points(const QuadPoint& p1, const QuadPoint& p2,
                                         const QuadPoint& p3);

/// True iff the points are non-collinear and all three squared medians are
/// squares of rationals.
bool is_rational_median_triple(const QuadPoint& p1, const QuadPoint& p2,
                               const QuadPoint& p3);

/// A set of plane points sharing one radicand, with the first two pinned to
/// (0,0) and (1,0) once normalized.
struct MedianSet {
    std::vector<QuadPoint> points;
    Integer k;
    bool normalized = false;
};

/// Raised when a similarity image fails to have the form (rational,
/// rational * sqrt(k)) for a single common k; `index` is the offending point.
struct MedianSetFormError : std::domain_error {
    MedianSetFormError(std::string what, size_t index_)
        : std::domain_error(std::move(what)), index(index_) {}
    size_t index;
};

/// Applies the plane similarity sending raw[0] to (0,0) and raw[1] to (1,0)
/// (complex z -> (z - z0)/(z1 - z0)) and checks that every image is of the
/// form (r1, r2 * sqrt(k)) for one common squarefree k. Input coordinates
/// must lie in a single real quadratic field.
MedianSet normalize_median_set(const std::vector<std::pair<QuadElem, QuadElem>>& raw);

/// Convenience overload for points already of QuadPoint shape.
MedianSet normalize_median_set(const std::vector<QuadPoint>& raw);

/// Recovers the abscissa of the third vertex of a normalized triple from the
/// median r1 (vertex to midpoint of (0,0)(1,0)) and the median r2 (from
/// (1,0)): subtracting the two circle equations
///   (x - 1/2)^2 + y^2 = r1^2,   (x/2 - 1)^2 + (y/2)^2 = r2^2
/// leaves 3x - 15/4 = r1^2 - 4 r2^2.
Rational third_vertex_x_from_medians(const Rational& r1, const Rational& r2);

/// Valid iff every non-collinear triple is a rational median triple;
/// collinear triples are skipped. `failing` holds the first bad triple
/// (indices in lexicographic order) when invalid.
struct MedianSetVerdict {
    bool valid;
    std::optional<std::array<size_t, 3>> failing;
};

MedianSetVerdict verify_median_set(const MedianSet& s);

} // namespace medians

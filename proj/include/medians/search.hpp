#pragma once

#include <string>
#include <utility>
#include <vector>

#include "medians/poly.hpp"
#include "medians/rational.hpp"
#include "medians/triangle.hpp"

namespace medians {

/// Candidates are reduced fractions p/q with |p| <= H and 1 <= q <= H.
struct HeightBound {
    long H;
    explicit HeightBound(long h) : H(h) {
        if (h < 1) throw std::invalid_argument("HeightBound: H must be >= 1");
    }
};

/// All candidates for a bound, in the canonical sweep order: numerator
/// ascending from -H to H, denominator ascending.
std::vector<Rational> rationals_of_height(const HeightBound& b);
long count_rationals_of_height(long H);

/// Witnesses use a one-line text encoding per target (exact "p/q" numbers):
///   sextic / line-case:  "<x> <z>"
///   perfect:             "<a> <b>"           (third side is 1)
///   median-set:          "<x>,<y>;<x>,<y>;..." (y is the sqrt(k) coefficient)
struct SearchResult {
    std::string target;
    long height = 0;
    long scanned = 0;
    bool exhaustive = false;
    std::vector<std::string> witnesses; // sorted, deduplicated-by-construction
};

/// Execution knobs. Work is split into units of `unit_size` candidates over
/// the outer enumeration; workers claim units via a shared cursor and the
/// collector merges per-unit results in unit order, so the outcome does not
/// depend on the worker count. `single_threaded` switches to the naive
/// reference loop (no units, no checkpointing). `max_units` stops the engine
/// after that many fresh units (testing hook for interrupt/resume);
/// the result is then marked exhaustive = false and, when a checkpoint path
/// is set, the partial state has been saved.
struct EngineOptions {
    int workers = 1;
    bool single_threaded = false;
    long unit_size = 4096;
    std::string checkpoint_path;
    long max_units = -1;
};

/// All rational points (x, z) with z^2 = rhs(x) and height(x) <= H.
/// rhs must be univariate and squarefree of degree 4..6.
SearchResult search_even_sextic_points(const RationalPoly& rhs, const HeightBound& bound,
                                       const EngineOptions& opts = EngineOptions());

/// Same search over the genus-two model attached to a line configuration
/// (off-line point (a, b), on-line abscissae c1, c2, c3).
SearchResult search_line_case_points(const Rational& a, const Rational& b, const Rational& c1,
                                     const Rational& c2, const Rational& c3,
                                     const HeightBound& bound,
                                     const EngineOptions& opts = EngineOptions());

/// All (lambda, alpha) = ((m^2-n^2)/(m^2+n^2), 2mn/(m^2+n^2)) with
/// 0 < n < m <= H, gcd(m, n) = 1, m + n odd.
std::vector<std::pair<Rational, Rational>> enumerate_rational_angles(const HeightBound& bound);

/// Rational points of 1 - x^2 - y^2 + 2*lambda*x*y = 0 with x, y > 0, found
/// by sweeping chords of rational slope (height <= H) through (1, 0).
std::vector<std::pair<Rational, Rational>> ellipse_points(const Rational& lambda,
                                                          const HeightBound& bound);

/// Perfect triangles with included-angle cosine lambda: each ellipse point
/// (a, b) gives sides (a, b, 1) by the law of cosines; witnesses are the
/// pairs whose median and area squares are all rational squares.
SearchResult search_perfect_at_angle(const Rational& lambda, const Rational& alpha,
                                     const HeightBound& bound,
                                     const EngineOptions& opts = EngineOptions());

/// All (r1, r2*sqrt(k)) with heights <= H, r2 != 0, forming a rational
/// median triple with the base points (0,0) and (1,0).
std::vector<QuadPoint> candidate_third_points(const Integer& k, const HeightBound& bound);

/// n-subsets of candidate_third_points(k, H) + base points, containing both
/// base points, in which every non-collinear triple is a rational median
/// triple. scanned counts candidate pairs tested in the pool phase plus
/// subsets examined.
SearchResult search_median_sets(const Integer& k, const HeightBound& bound, int n,
                                const EngineOptions& opts = EngineOptions());

/// Naive single-loop references (no units, no threads, no checkpoints);
/// must agree with the engine exactly, witnesses and counts alike.
SearchResult oracle_sextic_points(const RationalPoly& rhs, const HeightBound& bound);
SearchResult oracle_line_case_points(const Rational& a, const Rational& b, const Rational& c1,
                                     const Rational& c2, const Rational& c3,
                                     const HeightBound& bound);
SearchResult oracle_perfect_at_angle(const Rational& lambda, const Rational& alpha,
                                     const HeightBound& bound);
SearchResult oracle_median_sets(const Integer& k, const HeightBound& bound, int n);

} // namespace medians

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "medians/poly.hpp"
#include "medians/quad.hpp"
#include "medians/rational.hpp"
#include "medians/triangle.hpp"

namespace medians {

/// A curve presented as a polynomial system in named variables, with the
/// rational parameters that were bound while building it.
struct CurveSystem {
    std::vector<RationalPoly> equations;
    std::vector<std::string> variables;
    std::map<std::string, Rational> params;
    int ambient_dim = 0;
};

/// How a genus statement was obtained, and how strong it is.
enum class GenusMethod { plane_formula, reducible_formula, riemann_hurwitz, fiber_product_lemma, hyperelliptic };

struct GenusReport {
    std::optional<long> arithmetic_genus;
    std::optional<long> geometric_genus_lower;
    std::optional<long> geometric_genus_exact;
    GenusMethod method = GenusMethod::plane_formula;

    /// An empty report (no genus fields set) signals that the method did not
    /// apply to the given inputs.
    bool conclusive() const {
        return arithmetic_genus || geometric_genus_lower || geometric_genus_exact;
    }
};

std::string to_string(GenusMethod m);

/// One ramification candidate of a degree-2 projection, recorded by the
/// squares of its coordinates (the level at which distinctness and
/// branch-locus comparisons are decidable without nested radicals).
struct BranchPoint {
    QuadElem x_sq, y_sq;
    int sign;        // +1 / -1: which square root of x_sq the point uses
    bool simple;     // multiplicity-one intersection
    bool transverse; // meets the defining conic transversely
};

struct BranchPointSet {
    std::vector<BranchPoint> points;
    Rational discriminant; // of the x^2-quadratic; nonzero iff all simple
};

/// The plane sextic z^2 = (4x^2+1)(x^2+1)(x^2+4) parametrizing rational-
/// median triangles at a right angle; variables (x, z).
CurveSystem build_right_angle_curve();

/// The right-hand side f(x) of a system whose first equation is z^2 - f(x).
RationalPoly hyperelliptic_rhs(const CurveSystem& c);

/// The curve systems attached to a fixed angle with cosine lambda and sine
/// alpha: the ellipse X0: G = 1 - x^2 - y^2 + 2*lambda*x*y, the three median
/// double covers X1, X2, X3, the fiber product X12, and the full system
/// Xalpha with the area coordinate w = x*y*alpha/2.
struct Case2Systems {
    CurveSystem X0, X1, X2, X3, X12, Xalpha;
};

Case2Systems build_case2_systems(const Rational& lambda, const Rational& alpha);

/// Genus-two model for median sets clustering on a line: with an off-line
/// point (a, b) and on-line abscissae c1, c2, c3,
///   y^2 = prod_i [(x - (a+c_i)/2)^2 + b^2/4].
CurveSystem build_line_case_curve(const Rational& a, const Rational& b, const Rational& c1,
                                  const Rational& c2, const Rational& c3);

/// The median double covers over an arbitrary plane curve F(x, y) = 0 through
/// two base points p1, p2: z_i^2 equals the squared median drawn to/from the
/// base points (z1 from (x,y) to the midpoint of p1 p2; z2 from p1; z3 from
/// p2). Base points with irrational ordinates b_i = beta_i*sqrt(k) are
/// handled by adjoining a variable s with s^2 = k and writing b_i = beta_i*s,
/// so every system stays defined over Q.
struct Theorem2Systems {
    CurveSystem C1, C2, C3, C12, C123;
};

Theorem2Systems build_theorem2_systems(const RationalPoly& F, const QuadPoint& p1,
                                       const QuadPoint& p2);

/// Arithmetic genus of a smooth plane curve of degree d: d(d-3)/2 + 1,
/// i.e. (d-1)(d-2)/2.
long plane_arithmetic_genus(long d);

/// Arithmetic genus of a reducible curve from component genera and the
/// symmetric pairwise intersection matrix (diagonal ignored):
/// sum p_a(D_k) + sum_{i<j} D_i.D_j - (m-1).
long reducible_arithmetic_genus(const std::vector<long>& component_genera,
                                const std::vector<std::vector<long>>& pairwise_intersections);

/// Smallest g with 2g - 2 >= deg*(2*g_base - 2) + sum(e_p - 1), clamped at 0.
long rh_genus_lower_bound(long deg, long g_base, const std::vector<long>& ram_indices);

/// Genus of y^2 = f(x) with f squarefree of degree >= 3: floor((deg f - 1)/2).
long hyperelliptic_genus(long deg_f, bool squarefree);

/// Genus of the fiber product of two degree-2 covers of a base curve, by the
/// genus table for smooth fiber products: (0,0) -> arithmetic 1, (1,0) ->
/// arithmetic 3, (1,1) -> genus 5. A true `birational_or_common_branch` flag
/// makes the lemma inapplicable; the returned report is then empty.
GenusReport fiber_product_genus(int g1, int g2, bool birational_or_common_branch);

/// The four ramification candidates of the projection (x,y,t1) -> (x,y):
/// x^2 = (lambda +- sqrt(lambda^2-1)) / (4*lambda) and y^2 the conjugate
/// value, exact over the real-or-imaginary quadratic extension.
BranchPointSet x1_branch_points(const Rational& lambda);

/// Eliminates the circle 2x^2 + 2y^2 = 1 against the ellipse: x^2 satisfies
/// t^2 - t/2 + 1/(16 lambda^2) = 0, whose discriminant (lambda^2-1)/(4
/// lambda^2) decides whether the four intersection points are distinct.
struct CircleEllipseReport {
    bool distinct;
    Rational discriminant;
};

CircleEllipseReport circle_ellipse_distinct(const Rational& lambda);

/// Intersections of F = 0 with the two slope +-i lines through `midpoint`,
/// over Q(i). transverse_count counts simple roots across both lines;
/// `tangent` reports any repeated root (also set when the repetition comes
/// from a singular point); `through_singular` reports a root at which both
/// partials vanish. Degree drop against deg F is an intersection at infinity
/// in the isotropic direction, counted per line.
struct IsotropicReport {
    int transverse_count = 0;
    bool tangent = false;
    bool through_singular = false;
    int at_infinity_plus = 0;  // line y = q + i(x - p)
    int at_infinity_minus = 0; // line y = q - i(x - p)
};

IsotropicReport isotropic_transversality(const RationalPoly& F,
                                         const std::pair<Rational, Rational>& midpoint);

/// Rank of the Jacobian of the system at a point on the variety; rank
/// #variables - 1 certifies a smooth curve point.
long jacobian_rank_at(const CurveSystem& system, const std::map<std::string, Rational>& point);

/// Number of plane points that pins down a curve of degree d: d(d+3)/2.
long definition_field_threshold(long d);

} // namespace medians

#include "medians/curves.hpp"

#include <algorithm>

namespace medians {

namespace {

using P = RationalPoly;
using GP = GaussianPoly;
using VS = std::vector<std::string>;

P var(const VS& vs, const std::string& n) { return P::variable(vs, n); }
P con(const VS& vs, const Rational& c) { return P::constant(vs, c); }

/// G(x, y) = 1 - x^2 - y^2 + 2*lambda*x*y in the given context.
P ellipse_poly(const VS& vs, const Rational& lambda) {
    P x = var(vs, "x"), y = var(vs, "y");
    return con(vs, 1) - x * x - y * y + (Rational(2) * lambda) * (x * y);
}

/// 4 t^2 - 2x^2 - 2y^2 + 1 = 0 and its two siblings, indexed like medians.
P median_cover_eq(const VS& vs, int i, const std::string& tname) {
    P x = var(vs, "x"), y = var(vs, "y"), t = var(vs, tname);
    P four_t2 = Rational(4) * (t * t);
    switch (i) {
        case 1: return four_t2 - Rational(2) * (x * x) - Rational(2) * (y * y) + con(vs, 1);
        case 2: return four_t2 - Rational(2) * (x * x) - con(vs, 2) + y * y;
        case 3: return four_t2 - Rational(2) * (y * y) - con(vs, 2) + x * x;
    }
    throw std::logic_error("median_cover_eq: bad index");
}

Poly<GaussianRational> to_gaussian(const P& p) {
    GP out(p.variables());
    for (const auto& [e, c] : p.terms()) out.add_term(e, GaussianRational(c));
    return out;
}

} // namespace

std::string to_string(GenusMethod m) {
    switch (m) {
        case GenusMethod::plane_formula: return "plane_formula";
        case GenusMethod::reducible_formula: return "reducible_formula";
        case GenusMethod::riemann_hurwitz: return "riemann_hurwitz";
        case GenusMethod::fiber_product_lemma: return "fiber_product_lemma";
        case GenusMethod::hyperelliptic: return "hyperelliptic";
    }
    return "?";
}

CurveSystem build_right_angle_curve() {
    VS vs = {"x", "z"};
    P x = var(vs, "x"), z = var(vs, "z");
    P rhs = (Rational(4) * (x * x) + con(vs, 1)) * (x * x + con(vs, 1)) * (x * x + con(vs, 4));
    CurveSystem c;
    c.variables = vs;
    c.equations = {z * z - rhs};
    c.ambient_dim = 2;
    return c;
}

RationalPoly hyperelliptic_rhs(const CurveSystem& c) {
    if (c.equations.empty() || c.variables.empty())
        throw std::invalid_argument("hyperelliptic_rhs: empty system");
    const P& eq = c.equations.front();
    const std::string& v = c.variables.back();
    auto cs = eq.coefficients_in(v);
    if (cs.size() != 3 || !cs[1].is_zero() || cs[2] != con(c.variables, 1))
        throw std::invalid_argument("hyperelliptic_rhs: first equation is not " + v + "^2 - f");
    return -cs[0];
}

Case2Systems build_case2_systems(const Rational& lambda, const Rational& alpha) {
    if (lambda.is_zero() || lambda == Rational(1) || lambda == Rational(-1))
        throw std::invalid_argument("build_case2_systems: lambda must avoid {0, 1, -1}");
    if (alpha.sign() <= 0)
        throw std::invalid_argument("build_case2_systems: alpha must be positive");
    if (square(lambda) + square(alpha) != Rational(1))
        throw std::invalid_argument("build_case2_systems: need lambda^2 + alpha^2 = 1");

    std::map<std::string, Rational> params{{"lambda", lambda}, {"alpha", alpha}};
    auto make = [&](const VS& vs, std::vector<P> eqs) {
        CurveSystem c;
        c.variables = vs;
        c.equations = std::move(eqs);
        c.params = params;
        c.ambient_dim = static_cast<int>(vs.size());
        return c;
    };

    Case2Systems out;
    {
        VS vs = {"x", "y"};
        out.X0 = make(vs, {ellipse_poly(vs, lambda)});
    }
    {
        VS vs = {"x", "y", "t1"};
        out.X1 = make(vs, {ellipse_poly(vs, lambda), median_cover_eq(vs, 1, "t1")});
    }
    {
        VS vs = {"x", "y", "t2"};
        out.X2 = make(vs, {ellipse_poly(vs, lambda), median_cover_eq(vs, 2, "t2")});
    }
    {
        VS vs = {"x", "y", "t3"};
        out.X3 = make(vs, {ellipse_poly(vs, lambda), median_cover_eq(vs, 3, "t3")});
    }
    {
        VS vs = {"x", "y", "t1", "t2"};
        out.X12 = make(vs, {ellipse_poly(vs, lambda), median_cover_eq(vs, 1, "t1"),
                            median_cover_eq(vs, 2, "t2")});
    }
    {
        VS vs = {"x", "y", "t1", "t2", "t3", "w"};
        P w = var(vs, "w"), x = var(vs, "x"), y = var(vs, "y");
        out.Xalpha = make(vs, {ellipse_poly(vs, lambda), median_cover_eq(vs, 1, "t1"),
                               median_cover_eq(vs, 2, "t2"), median_cover_eq(vs, 3, "t3"),
                               w - (alpha / Rational(2)) * (x * y)});
    }
    return out;
}

CurveSystem build_line_case_curve(const Rational& a, const Rational& b, const Rational& c1,
                                  const Rational& c2, const Rational& c3) {
    if (b.is_zero())
        throw std::invalid_argument("build_line_case_curve: off-line ordinate b must be nonzero");
    Rational m1 = (a + c1) / Rational(2), m2 = (a + c2) / Rational(2), m3 = (a + c3) / Rational(2);
    if (m1 == m2 || m2 == m3 || m1 == m3)
        throw std::domain_error("build_line_case_curve: roots not distinct");

    VS vs = {"x", "y"};
    P x = var(vs, "x"), y = var(vs, "y");
    Rational quarter_b2 = square(b) / Rational(4);
    auto factor = [&](const Rational& m) {
        P d = x - con(vs, m);
        return d * d + con(vs, quarter_b2);
    };
    CurveSystem c;
    c.variables = vs;
    c.equations = {y * y - factor(m1) * factor(m2) * factor(m3)};
    c.params = {{"a", a}, {"b", b}, {"c1", c1}, {"c2", c2}, {"c3", c3}};
    c.ambient_dim = 2;
    return c;
}

Theorem2Systems build_theorem2_systems(const RationalPoly& F, const QuadPoint& p1,
                                       const QuadPoint& p2) {
    if (p1 == p2) throw std::invalid_argument("build_theorem2_systems: base points coincide");
    for (const auto& v : F.active_variables())
        if (v != "x" && v != "y")
            throw std::invalid_argument("build_theorem2_systems: F must be a polynomial in x, y");

    Integer k(1);
    for (const QuadPoint* p : {&p1, &p2}) {
        if (p->y_coeff.is_zero()) continue;
        if (k == 1 || k == p->k) k = p->k;
        else throw std::invalid_argument("build_theorem2_systems: base points in different fields");
    }
    bool radical = (k != 1);

    // In the radical case the ordinates are beta_i * s with s^2 = k adjoined.
    auto contexts = [&](std::initializer_list<const char*> zs) {
        VS vs = {"x", "y"};
        for (const char* z : zs) vs.push_back(z);
        if (radical) vs.push_back("s");
        return vs;
    };

    const Rational &a1 = p1.x, &a2 = p2.x, &be1 = p1.y_coeff, &be2 = p2.y_coeff;

    // z^2 minus the squared median through the base points; index 1 is the
    // median from (x, y) to the midpoint of p1 p2, 2 is drawn from p1, and 3
    // from p2 (the symmetric analogue of 2).
    auto median_sq_eq = [&](const VS& vs, int i, const std::string& zname) {
        P x = var(vs, "x"), y = var(vs, "y"), z = var(vs, zname);
        auto bp = [&](const Rational& beta) { return radical ? beta * var(vs, "s") : con(vs, beta); };
        P hx(vs), hy(vs);
        Rational half(1, 2);
        switch (i) {
            case 1:
                hx = half * (Rational(2) * x - con(vs, a1) - con(vs, a2));
                hy = half * (Rational(2) * y - bp(be1) - bp(be2));
                break;
            case 2:
                hx = half * (x + con(vs, a2) - con(vs, Rational(2) * a1));
                hy = half * (y + bp(be2) - Rational(2) * bp(be1));
                break;
            case 3:
                hx = half * (x + con(vs, a1) - con(vs, Rational(2) * a2));
                hy = half * (y + bp(be1) - Rational(2) * bp(be2));
                break;
        }
        P eq = z * z - hx * hx - hy * hy;
        return radical ? eq.reduce_square("s", Rational(k)) : eq;
    };

    std::map<std::string, Rational> params{
        {"a1", a1}, {"b1", be1}, {"a2", a2}, {"b2", be2}, {"k", Rational(k)}};

    auto make = [&](const VS& vs, std::vector<int> zidx) {
        CurveSystem c;
        c.variables = vs;
        c.equations.push_back(F.in_context(vs));
        for (int i : zidx)
            c.equations.push_back(median_sq_eq(vs, i, "z" + std::to_string(i)));
        if (radical) {
            P s = var(vs, "s");
            c.equations.push_back(s * s - con(vs, Rational(k)));
        }
        c.params = params;
        c.ambient_dim = static_cast<int>(vs.size());
        return c;
    };

    Theorem2Systems out;
    out.C1 = make(contexts({"z1"}), {1});
    out.C2 = make(contexts({"z2"}), {2});
    out.C3 = make(contexts({"z3"}), {3});
    out.C12 = make(contexts({"z1", "z2"}), {1, 2});
    out.C123 = make(contexts({"z1", "z2", "z3"}), {1, 2, 3});
    return out;
}

long plane_arithmetic_genus(long d) {
    if (d < 1) throw std::invalid_argument("plane_arithmetic_genus: degree must be >= 1");
    return d * (d - 3) / 2 + 1;
}

long reducible_arithmetic_genus(const std::vector<long>& component_genera,
                                const std::vector<std::vector<long>>& pairwise_intersections) {
    size_t m = component_genera.size();
    if (m < 1) throw std::invalid_argument("reducible_arithmetic_genus: need a component");
    if (pairwise_intersections.size() != m)
        throw std::invalid_argument("reducible_arithmetic_genus: dimension mismatch");
    for (const auto& row : pairwise_intersections)
        if (row.size() != m)
            throw std::invalid_argument("reducible_arithmetic_genus: dimension mismatch");
    long total = 0;
    for (long g : component_genera) total += g;
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = i + 1; j < m; ++j) {
            if (pairwise_intersections[i][j] != pairwise_intersections[j][i])
                throw std::invalid_argument("reducible_arithmetic_genus: matrix not symmetric");
            total += pairwise_intersections[i][j];
        }
    }
    return total - (static_cast<long>(m) - 1);
}

long rh_genus_lower_bound(long deg, long g_base, const std::vector<long>& ram_indices) {
    if (deg < 1) throw std::invalid_argument("rh_genus_lower_bound: degree must be >= 1");
    if (g_base < 0) throw std::invalid_argument("rh_genus_lower_bound: base genus must be >= 0");
    long bound = deg * (2 * g_base - 2);
    for (long e : ram_indices) {
        if (e < 2)
            throw std::invalid_argument("rh_genus_lower_bound: ramification index must be >= 2");
        bound += e - 1;
    }
    // Smallest g with 2g - 2 >= bound; genus is never negative.
    long need = bound + 2;
    return need <= 0 ? 0 : (need + 1) / 2;
}

long hyperelliptic_genus(long deg_f, bool squarefree) {
    if (!squarefree) throw std::domain_error("hyperelliptic_genus: model not hyperelliptic-smooth");
    if (deg_f < 3) throw std::invalid_argument("hyperelliptic_genus: degree must be >= 3");
    return (deg_f - 1) / 2;
}

GenusReport fiber_product_genus(int g1, int g2, bool birational_or_common_branch) {
    if ((g1 != 0 && g1 != 1) || (g2 != 0 && g2 != 1))
        throw std::invalid_argument("fiber_product_genus: component genera must be 0 or 1");
    GenusReport r;
    r.method = GenusMethod::fiber_product_lemma;
    if (birational_or_common_branch) return r; // inapplicable: empty report
    int lo = std::min(g1, g2), hi = std::max(g1, g2);
    if (lo == 0 && hi == 0) {
        r.arithmetic_genus = 1;
        r.geometric_genus_lower = 0; // a nodal model can drop to 0
    } else if (lo == 0 && hi == 1) {
        r.arithmetic_genus = 3;
    } else {
        r.arithmetic_genus = 5;
        r.geometric_genus_exact = 5;
    }
    return r;
}

BranchPointSet x1_branch_points(const Rational& lambda) {
    if (lambda.is_zero() || lambda == Rational(1) || lambda == Rational(-1))
        throw std::invalid_argument("x1_branch_points: lambda must avoid {0, 1, -1}");

    // sqrt(lambda^2 - 1) = (m/q) * sqrt(kk) with kk squarefree.
    Rational dd = square(lambda) - Rational(1);
    auto [kk, m] = squarefree_part(dd.num() * dd.den());
    Rational coeff(m, dd.den());

    Rational quarter(1, 4);
    Rational radial = coeff / (Rational(4) * lambda);
    QuadElem xs_plus(quarter, radial, kk);
    QuadElem xs_minus(quarter, -radial, kk);

    BranchPointSet out;
    out.discriminant = dd / (Rational(4) * square(lambda));
    bool simple = !out.discriminant.is_zero();
    // y^2 = 1/(4*lambda*(lambda +- sqrt(...))) is the conjugate value, since
    // the two roots multiply to 1/(16 lambda^2) and sum to 1/2.
    out.points = {{xs_plus, xs_minus, +1, simple, simple},
                  {xs_plus, xs_minus, -1, simple, simple},
                  {xs_minus, xs_plus, +1, simple, simple},
                  {xs_minus, xs_plus, -1, simple, simple}};
    return out;
}

CircleEllipseReport circle_ellipse_distinct(const Rational& lambda) {
    if (lambda.is_zero() || lambda == Rational(1) || lambda == Rational(-1))
        throw std::invalid_argument("circle_ellipse_distinct: lambda must avoid {0, 1, -1}");
    // On 2x^2 + 2y^2 = 1 the ellipse equation forces xy = -1/(4 lambda), so
    // x^2 and y^2 are the roots of t^2 - t/2 + 1/(16 lambda^2).
    VS vs = {"t"};
    P t = var(vs, "t");
    P quad = t * t - Rational(1, 2) * t + con(vs, Rational(1) / (Rational(16) * square(lambda)));
    Rational disc = discriminant_univariate(quad);
    return {!disc.is_zero(), disc};
}

IsotropicReport isotropic_transversality(const RationalPoly& F,
                                         const std::pair<Rational, Rational>& midpoint) {
    if (F.is_constant()) throw std::invalid_argument("isotropic_transversality: F is constant");
    for (const auto& v : F.active_variables())
        if (v != "x" && v != "y")
            throw std::invalid_argument("isotropic_transversality: F must be a plane curve in x, y");
    int d = F.degree();

    GP FG = to_gaussian(F);
    GP Fx = FG.derivative("x"), Fy = FG.derivative("y");
    GaussianRational i_unit(Rational(0), Rational(1));
    VS tv = {"t"};
    GP t = GP::variable(tv, "t");

    IsotropicReport rep;
    for (int sgn : {+1, -1}) {
        // x = p + t, y = q +- i t.
        std::map<std::string, GP> sub{
            {"x", GP::constant(tv, GaussianRational(midpoint.first)) + t},
            {"y", GP::constant(tv, GaussianRational(midpoint.second)) +
                      (sgn > 0 ? i_unit : -i_unit) * t}};
        auto restrict_to_line = [&](const GP& g) {
            GP acc(tv);
            for (const auto& [e, c] : g.terms()) {
                size_t xi = g.var_index("x"), yi = g.var_index("y");
                GP term = GP::constant(tv, c) * sub.at("x").pow(e[xi]) * sub.at("y").pow(e[yi]);
                acc += term;
            }
            return acc;
        };

        GP f = restrict_to_line(FG);
        if (f.is_zero())
            throw std::domain_error("isotropic_transversality: an isotropic line lies on F");
        int df = f.degree();
        (sgn > 0 ? rep.at_infinity_plus : rep.at_infinity_minus) = d - df;
        if (df < 1) continue; // constant: the line misses F in the affine chart

        GP fp = f.derivative("t");
        GP rep_part = gcd_univariate(f, fp); // carries every repeated root
        int simple = (df - rep_part.degree());
        if (rep_part.degree() >= 1) {
            rep.tangent = true;
            simple -= rep_part.degree() - gcd_univariate(rep_part, rep_part.derivative("t")).degree();
        }
        rep.transverse_count += simple;

        GP sing = gcd_univariate(gcd_univariate(f, restrict_to_line(Fx)), restrict_to_line(Fy));
        if (sing.degree() >= 1) rep.through_singular = true;
    }
    return rep;
}

long jacobian_rank_at(const CurveSystem& system, const std::map<std::string, Rational>& point) {
    for (const auto& eq : system.equations)
        if (!eq.eval(point).is_zero())
            throw std::invalid_argument("jacobian_rank_at: point is off the variety");

    std::vector<std::vector<Rational>> m;
    for (const auto& eq : system.equations) {
        std::vector<Rational> row;
        row.reserve(system.variables.size());
        for (const auto& v : system.variables) row.push_back(eq.derivative(v).eval(point));
        m.push_back(std::move(row));
    }

    // Exact Gaussian elimination.
    size_t rank = 0, rows = m.size(), cols = system.variables.size();
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t pivot = rank;
        while (pivot < rows && m[pivot][c].is_zero()) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        for (size_t r = rank + 1; r < rows; ++r) {
            if (m[r][c].is_zero()) continue;
            Rational f = m[r][c] / m[rank][c];
            for (size_t cc = c; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
        }
        ++rank;
    }
    return static_cast<long>(rank);
}

long definition_field_threshold(long d) {
    if (d < 1) throw std::invalid_argument("definition_field_threshold: degree must be >= 1");
    return d * (d + 3) / 2;
}

} // namespace medians

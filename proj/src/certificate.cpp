#include "medians/certificate.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "medians/curves.hpp"
#include "medians/triangle.hpp"
#include "medians/version.hpp"

namespace medians {

namespace {

bool fail(std::string* diag, const std::string& msg) {
    if (diag) *diag = msg;
    return false;
}

const Json& need(const Json& obj, const char* key, const std::string& loc) {
    auto it = obj.find(key);
    if (it == obj.end()) throw CertificateError("missing field '" + std::string(key) + "'", loc);
    return *it;
}

std::string need_string(const Json& obj, const char* key, const std::string& loc) {
    const Json& v = need(obj, key, loc);
    if (!v.is_string())
        throw CertificateError("field '" + std::string(key) + "' must be a string", loc);
    return v.get<std::string>();
}

Rational need_rational(const Json& obj, const char* key, const std::string& loc) {
    std::string s = need_string(obj, key, loc);
    try {
        return parse_rational(s);
    } catch (const std::exception& e) {
        throw CertificateError("field '" + std::string(key) + "': " + e.what(), loc);
    }
}

long need_long(const Json& obj, const char* key, const std::string& loc) {
    Rational r = need_rational(obj, key, loc);
    if (!r.is_integer()) throw CertificateError("field '" + std::string(key) + "' must be an integer", loc);
    Integer n = r.num();
    if (!n.fits_slong_p())
        throw CertificateError("field '" + std::string(key) + "' out of range", loc);
    return n.get_si();
}

std::string str(const Rational& r) { return to_string(r); }
std::string str(long v) { return std::to_string(v); }

/// (4x^2+1)(x^2+1)(x^2+4), rebuilt with plain polynomial arithmetic so that
/// witness re-verification does not lean on the curve constructors.
RationalPoly right_angle_rhs_poly() {
    std::vector<std::string> vs{"x"};
    RationalPoly x = RationalPoly::variable(vs, "x");
    auto c = [&](long v) { return RationalPoly::constant(vs, Rational(v)); };
    return (Rational(4) * (x * x) + c(1)) * (x * x + c(1)) * (x * x + c(4));
}

RationalPoly line_case_rhs_poly(const Rational& a, const Rational& b, const Rational& c1,
                                const Rational& c2, const Rational& c3) {
    std::vector<std::string> vs{"x"};
    RationalPoly x = RationalPoly::variable(vs, "x");
    Rational quarter_b2 = square(b) / Rational(4);
    auto factor = [&](const Rational& ci) {
        RationalPoly d = x - RationalPoly::constant(vs, (a + ci) / Rational(2));
        return d * d + RationalPoly::constant(vs, quarter_b2);
    };
    return factor(c1) * factor(c2) * factor(c3);
}

std::pair<Rational, Rational> parse_pair_witness(const std::string& w, const std::string& loc) {
    size_t sp = w.find(' ');
    if (sp == std::string::npos || w.find(' ', sp + 1) != std::string::npos)
        throw CertificateError("witness must be two space-separated values: '" + w + "'", loc);
    try {
        return {parse_rational(w.substr(0, sp)), parse_rational(w.substr(sp + 1))};
    } catch (const std::exception& e) {
        throw CertificateError(std::string("bad witness number: ") + e.what(), loc);
    }
}

std::vector<QuadPoint> parse_median_witness(const std::string& w, const Integer& k,
                                            const std::string& loc) {
    std::vector<QuadPoint> pts;
    std::istringstream in(w);
    std::string part;
    while (std::getline(in, part, ';')) {
        size_t comma = part.find(',');
        if (comma == std::string::npos)
            throw CertificateError("bad point '" + part + "' in witness", loc);
        try {
            Rational x = parse_rational(part.substr(0, comma));
            Rational y = parse_rational(part.substr(comma + 1));
            pts.emplace_back(x, y, y.is_zero() ? Integer(1) : k);
        } catch (const CertificateError&) {
            throw;
        } catch (const std::exception& e) {
            throw CertificateError(std::string("bad point in witness: ") + e.what(), loc);
        }
    }
    return pts;
}

std::vector<std::string> witness_list(const Certificate& c) {
    const Json& ws = need(c.result, "witnesses", "$.result");
    if (!ws.is_array()) throw CertificateError("witnesses must be an array", "$.result.witnesses");
    std::vector<std::string> out;
    for (const auto& w : ws) {
        if (!w.is_string())
            throw CertificateError("witnesses must be strings", "$.result.witnesses");
        out.push_back(w.get<std::string>());
    }
    return out;
}

bool verify_even_curve_cert(const Certificate& c, const RationalPoly& rhs, long H,
                            std::string* diag) {
    std::vector<std::string> ws = witness_list(c);
    if (!std::is_sorted(ws.begin(), ws.end())) return fail(diag, "witness list is not sorted");
    if (std::adjacent_find(ws.begin(), ws.end()) != ws.end())
        return fail(diag, "witness list has duplicates");
    const std::string& var = rhs.variables().front();
    for (const auto& w : ws) {
        auto [x, z] = parse_pair_witness(w, "$.result.witnesses");
        if (height(x) > H) return fail(diag, "witness '" + w + "' exceeds the height bound");
        Rational value = rhs.eval({{var, x}});
        if (square(z) != value)
            return fail(diag, "witness '" + w + "' is not on the curve");
    }
    if (!c.scanned || !c.exhaustive) return fail(diag, "search certificate lacks scanned/exhaustive");
    if (*c.exhaustive && *c.scanned != count_rationals_of_height(H))
        return fail(diag, "scanned count does not match the candidate count for the bound");
    return true;
}

bool verify_perfect_cert(const Certificate& c, long H, std::string* diag) {
    Rational lambda = need_rational(c.params, "lambda", "$.params");
    Rational alpha = need_rational(c.params, "alpha", "$.params");
    if (square(lambda) + square(alpha) != Rational(1) || alpha.sign() <= 0 || lambda.is_zero())
        return fail(diag, "lambda/alpha are not a valid rational angle");
    std::vector<std::string> ws = witness_list(c);
    if (!std::is_sorted(ws.begin(), ws.end())) return fail(diag, "witness list is not sorted");
    for (const auto& w : ws) {
        auto [a, b] = parse_pair_witness(w, "$.result.witnesses");
        if (a.sign() <= 0 || b.sign() <= 0) return fail(diag, "witness '" + w + "' not positive");
        if (square(a) + square(b) - Rational(2) * lambda * a * b != Rational(1))
            return fail(diag, "witness '" + w + "' has wrong included angle");
        if (a == Rational(1)) return fail(diag, "witness '" + w + "' unreachable by slope sweep");
        Rational t = b / (a - Rational(1));
        if (height(t) > H) return fail(diag, "witness '" + w + "' exceeds the slope height bound");
        if (!is_perfect_triangle(TriangleSides(a, b, Rational(1))).perfect)
            return fail(diag, "witness '" + w + "' is not a perfect triangle");
    }
    if (!c.scanned || !c.exhaustive) return fail(diag, "search certificate lacks scanned/exhaustive");
    if (*c.exhaustive && *c.scanned != count_rationals_of_height(H))
        return fail(diag, "scanned count does not match the candidate count for the bound");
    return true;
}

bool verify_median_set_cert(const Certificate& c, long H, std::string* diag) {
    long k_raw = need_long(c.params, "k", "$.params");
    long n = need_long(c.params, "n", "$.params");
    if (k_raw < 1 || n < 4) return fail(diag, "invalid k or n");
    Integer k(k_raw);
    std::vector<std::string> ws = witness_list(c);
    if (!std::is_sorted(ws.begin(), ws.end())) return fail(diag, "witness list is not sorted");
    for (const auto& w : ws) {
        std::vector<QuadPoint> pts = parse_median_witness(w, k, "$.result.witnesses");
        if (static_cast<long>(pts.size()) != n)
            return fail(diag, "witness '" + w + "' has the wrong number of points");
        if (pts[0] != QuadPoint(Rational(0), Rational(0), Integer(1)) ||
            pts[1] != QuadPoint(Rational(1), Rational(0), Integer(1)))
            return fail(diag, "witness '" + w + "' does not start with the base points");
        for (const auto& p : pts)
            if (height(p.x) > H || height(p.y_coeff) > H)
                return fail(diag, "witness '" + w + "' exceeds the height bound");
        MedianSet set{pts, k, true};
        MedianSetVerdict verdict = verify_median_set(set);
        if (!verdict.valid) return fail(diag, "witness '" + w + "' fails the median-set check");
    }
    if (!c.scanned || !c.exhaustive) return fail(diag, "search certificate lacks scanned/exhaustive");
    if (*c.exhaustive) {
        long P;
        try {
            P = static_cast<long>(candidate_third_points(k, HeightBound(H)).size());
        } catch (const std::exception& e) {
            return fail(diag, std::string("cannot rebuild the candidate pool: ") + e.what());
        }
        if (need_long(c.result, "pool_size", "$.result") != P)
            return fail(diag, "pool size does not match a recount");
        long R = count_rationals_of_height(H);
        Integer expected = Integer(R) * Integer(R - 1);
        Integer subsets;
        mpz_bin_uiui(subsets.get_mpz_t(), static_cast<unsigned long>(P),
                     static_cast<unsigned long>(n - 2));
        expected += subsets;
        if (Integer(*c.scanned) != expected)
            return fail(diag, "scanned count does not match pool pairs plus subsets");
    }
    return true;
}

bool verify_search_cert(const Certificate& c, std::string* diag) {
    std::string target = need_string(c.params, "target", "$.params");
    long H = need_long(c.params, "height", "$.params");
    if (H < 1) return fail(diag, "height bound must be positive");
    if (target == "sextic")
        return verify_even_curve_cert(c, right_angle_rhs_poly(), H, diag);
    if (target == "line-case") {
        Rational a = need_rational(c.params, "a", "$.params");
        Rational b = need_rational(c.params, "b", "$.params");
        Rational c1 = need_rational(c.params, "c1", "$.params");
        Rational c2 = need_rational(c.params, "c2", "$.params");
        Rational c3 = need_rational(c.params, "c3", "$.params");
        return verify_even_curve_cert(c, line_case_rhs_poly(a, b, c1, c2, c3), H, diag);
    }
    if (target == "perfect") return verify_perfect_cert(c, H, diag);
    if (target == "median-set") return verify_median_set_cert(c, H, diag);
    throw CertificateError("unknown search target '" + target + "'", "$.params.target");
}

Json json_modulo_version(const Certificate& c) {
    Json j = certificate_to_json(c);
    j.erase("tool_version");
    return j;
}

} // namespace

Json certificate_to_json(const Certificate& c) {
    Json j = Json::object();
    j["schema_version"] = c.schema_version;
    j["command"] = c.command;
    j["params"] = c.params;
    j["result"] = c.result;
    if (c.scanned) j["scanned"] = *c.scanned;
    if (c.exhaustive) j["exhaustive"] = *c.exhaustive;
    j["assumptions"] = c.assumptions;
    j["tool_version"] = c.tool_version;
    return j;
}

Certificate certificate_from_json(const Json& j) {
    if (!j.is_object()) throw CertificateError("certificate must be a JSON object", "$");
    Certificate c;
    const Json& sv = need(j, "schema_version", "$");
    if (!sv.is_number_integer()) throw CertificateError("schema_version must be an integer", "$");
    c.schema_version = sv.get<int>();
    if (c.schema_version != 1) throw CertificateError("unsupported schema_version", "$");
    c.command = need_string(j, "command", "$");
    c.params = need(j, "params", "$");
    if (!c.params.is_object()) throw CertificateError("params must be an object", "$.params");
    c.result = need(j, "result", "$");
    if (!c.result.is_object()) throw CertificateError("result must be an object", "$.result");
    if (j.contains("scanned")) {
        if (!j["scanned"].is_number_integer())
            throw CertificateError("scanned must be an integer", "$.scanned");
        c.scanned = j["scanned"].get<long>();
    }
    if (j.contains("exhaustive")) {
        if (!j["exhaustive"].is_boolean())
            throw CertificateError("exhaustive must be a boolean", "$.exhaustive");
        c.exhaustive = j["exhaustive"].get<bool>();
    }
    const Json& as = need(j, "assumptions", "$");
    if (!as.is_array()) throw CertificateError("assumptions must be an array", "$.assumptions");
    for (const auto& a : as) {
        if (!a.is_string()) throw CertificateError("assumptions must be strings", "$.assumptions");
        c.assumptions.push_back(a.get<std::string>());
    }
    c.tool_version = need_string(j, "tool_version", "$");
    return c;
}

std::string serialize_certificate(const Certificate& c) {
    return certificate_to_json(c).dump(2) + "\n";
}

Certificate parse_certificate_text(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw CertificateError("parse error: invalid JSON", "$");
    return certificate_from_json(j);
}

Certificate load_certificate(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CertificateError("parse error: cannot read file", path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_certificate_text(buf.str());
}

void save_certificate(const std::string& path, const Certificate& c) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write certificate " + tmp);
        out << serialize_certificate(c);
        if (!out.flush()) throw std::runtime_error("short write to " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

Certificate make_search_certificate(const SearchResult& r, const Json& extra_params,
                                    const Json& extra_result) {
    if (!r.exhaustive)
        throw std::logic_error("make_search_certificate: search did not run to completion");
    Certificate c;
    c.command = "search";
    c.params["target"] = r.target;
    c.params["height"] = str(r.height);
    for (const auto& [key, value] : extra_params.items()) c.params[key] = value;
    c.result["witnesses"] = r.witnesses;
    for (const auto& [key, value] : extra_result.items()) c.result[key] = value;
    c.scanned = r.scanned;
    c.exhaustive = r.exhaustive;
    c.tool_version = kToolVersion;
    return c;
}

Certificate make_verify_claims_certificate(const std::vector<Rational>& lambdas) {
    Certificate c;
    c.command = "verify-claims";
    Json llist = Json::array();
    for (const auto& l : lambdas) llist.push_back(str(l));
    c.params["lambdas"] = llist;

    Json per = Json::array();
    for (const auto& lambda : lambdas) {
        if (lambda.is_zero())
            throw std::invalid_argument("verify-claims: lambda must be nonzero");
        auto alpha = is_rational_square(Rational(1) - square(lambda));
        if (!alpha || alpha->is_zero())
            throw std::invalid_argument("verify-claims: lambda needs a rational companion sine");

        Json entry = Json::object();
        entry["lambda"] = str(lambda);
        entry["alpha"] = str(*alpha);

        CircleEllipseReport ce = circle_ellipse_distinct(lambda);
        entry["circle_ellipse_discriminant"] = str(ce.discriminant);
        entry["intersections_distinct"] = ce.distinct;

        BranchPointSet bp = x1_branch_points(lambda);
        Json squares = Json::array();
        squares.push_back(to_string(bp.points[0].x_sq));
        squares.push_back(to_string(bp.points[2].x_sq));
        entry["branch_x_squares"] = squares;
        entry["branch_points"] = str(static_cast<long>(bp.points.size()));
        bool distinct4 = bp.points[0].x_sq != bp.points[2].x_sq;
        entry["branch_points_distinct"] = distinct4;

        // Branch loci of the two median double covers, compared at the x^2
        // level: x^2 solves t^2 - t/2 + 1/(16 l^2) under the first cover and
        // (8 l^2 - 9) t^2 + (8 l^2 - 6) t - 1 under the second; a constant
        // gcd means no common branch point even over an algebraic closure.
        std::vector<std::string> vs{"t"};
        RationalPoly t = RationalPoly::variable(vs, "t");
        Rational l2 = square(lambda);
        RationalPoly q1 = t * t - Rational(1, 2) * t +
                          RationalPoly::constant(vs, Rational(1) / (Rational(16) * l2));
        RationalPoly q2 = (Rational(8) * l2 - Rational(9)) * (t * t) +
                          (Rational(8) * l2 - Rational(6)) * t -
                          RationalPoly::constant(vs, Rational(1));
        bool disjoint = gcd_univariate(q1, q2).degree() == 0;
        entry["cover_branch_loci_disjoint"] = disjoint;

        long rh = rh_genus_lower_bound(2, 0, {2, 2, 2, 2});
        entry["x1_genus_lower_bound"] = str(rh);
        GenusReport fp = fiber_product_genus(1, 1, !disjoint);
        entry["fiber_product_genus"] =
            fp.geometric_genus_exact ? str(*fp.geometric_genus_exact) : std::string("inapplicable");
        per.push_back(entry);
    }
    c.result["per_lambda"] = per;

    Json hyp = Json::object();
    CurveSystem sextic = build_right_angle_curve();
    RationalPoly rhs = hyperelliptic_rhs(sextic);
    hyp["degree"] = str(static_cast<long>(rhs.degree()));
    hyp["rhs_squarefree"] = is_squarefree(rhs);
    hyp["genus"] = str(hyperelliptic_genus(rhs.degree(), is_squarefree(rhs)));
    c.result["right_angle_curve"] = hyp;

    Json fiber = Json::object();
    fiber["genus_0_0"] = str(*fiber_product_genus(0, 0, false).arithmetic_genus);
    fiber["genus_1_0"] = str(*fiber_product_genus(1, 0, false).arithmetic_genus);
    fiber["genus_1_1"] = str(*fiber_product_genus(1, 1, false).arithmetic_genus);
    c.result["fiber_product_table"] = fiber;

    Json red = Json::object();
    long disjoint_pair = reducible_arithmetic_genus({1, 0}, {{0, 0}, {0, 0}});
    red["elliptic_plus_disjoint_line"] = str(disjoint_pair);
    red["arithmetic_genus_of_cover"] = str(1L);
    red["contradiction"] = (disjoint_pair != 1);
    c.result["reducibility_check"] = red;

    c.assumptions = {"smooth-fiber-product: the paired double covers are treated as smooth "
                     "genus-1 curves; disjointness of their branch loci is checked above"};
    c.tool_version = kToolVersion;
    return c;
}

Certificate make_normalize_certificate(const std::vector<std::pair<QuadElem, QuadElem>>& raw) {
    Certificate c;
    c.command = "normalize";
    Json pts = Json::array();
    for (const auto& [x, y] : raw) {
        Json p = Json::array();
        p.push_back(to_string(x));
        p.push_back(to_string(y));
        pts.push_back(p);
    }
    c.params["points"] = pts;

    MedianSet set = normalize_median_set(raw);
    c.result["k"] = set.k.get_str();
    Json normalized = Json::array();
    for (const auto& p : set.points) {
        Json q = Json::array();
        q.push_back(str(p.x));
        q.push_back(str(p.y_coeff));
        normalized.push_back(q);
    }
    c.result["points"] = normalized;
    MedianSetVerdict verdict = verify_median_set(set);
    c.result["median_set_valid"] = verdict.valid;
    c.tool_version = kToolVersion;
    return c;
}

bool verify_certificate(const Certificate& c, std::string* diagnostic) {
    if (c.schema_version != 1) throw CertificateError("unsupported schema_version", "$");
    if (c.command == "search") return verify_search_cert(c, diagnostic);
    if (c.command == "verify-claims") {
        const Json& llist = need(c.params, "lambdas", "$.params");
        if (!llist.is_array()) throw CertificateError("lambdas must be an array", "$.params.lambdas");
        std::vector<Rational> lambdas;
        for (const auto& l : llist) {
            if (!l.is_string()) throw CertificateError("lambdas must be strings", "$.params.lambdas");
            try {
                lambdas.push_back(parse_rational(l.get<std::string>()));
            } catch (const std::exception& e) {
                throw CertificateError(std::string("bad lambda: ") + e.what(), "$.params.lambdas");
            }
        }
        Certificate expected;
        try {
            expected = make_verify_claims_certificate(lambdas);
        } catch (const std::exception& e) {
            return fail(diagnostic, std::string("claims cannot be recomputed: ") + e.what());
        }
        if (json_modulo_version(expected) != json_modulo_version(c))
            return fail(diagnostic, "recomputed claims differ from the certificate");
        return true;
    }
    if (c.command == "normalize") {
        const Json& pts = need(c.params, "points", "$.params");
        if (!pts.is_array()) throw CertificateError("points must be an array", "$.params.points");
        std::vector<std::pair<QuadElem, QuadElem>> raw;
        for (const auto& p : pts) {
            if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
                throw CertificateError("each point must be a pair of strings", "$.params.points");
            try {
                raw.emplace_back(parse_quad(p[0].get<std::string>()),
                                 parse_quad(p[1].get<std::string>()));
            } catch (const std::exception& e) {
                throw CertificateError(std::string("bad point: ") + e.what(), "$.params.points");
            }
        }
        Certificate expected;
        try {
            expected = make_normalize_certificate(raw);
        } catch (const std::exception& e) {
            return fail(diagnostic, std::string("normalization cannot be recomputed: ") + e.what());
        }
        if (json_modulo_version(expected) != json_modulo_version(c))
            return fail(diagnostic, "recomputed normalization differs from the certificate");
        return true;
    }
    throw CertificateError("unknown command '" + c.command + "'", "$.command");
}

} // namespace medians

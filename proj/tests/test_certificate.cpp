#include "doctest.h"

#include <filesystem>

#include "medians/certificate.hpp"
#include "medians/curves.hpp"
#include "medians/search.hpp"
#include "medians/version.hpp"

using namespace medians;

namespace {

Certificate sextic_certificate(long H) {
    RationalPoly rhs = hyperelliptic_rhs(build_right_angle_curve());
    SearchResult r = search_even_sextic_points(rhs, HeightBound(H));
    return make_search_certificate(r, Json::object());
}

} // namespace

TEST_CASE("search certificates re-verify from scratch") {
    Certificate c = sextic_certificate(30);
    CHECK(c.command == "search");
    CHECK(c.params["target"] == "sextic");
    CHECK(c.params["height"] == "30");
    CHECK(c.scanned == count_rationals_of_height(30));
    CHECK(c.exhaustive == true);
    CHECK(c.tool_version == kToolVersion);
    std::string diag;
    CHECK(verify_certificate(c, &diag));

    SUBCASE("forged witnesses fail with a diagnostic") {
        Certificate bad = c;
        bad.result["witnesses"][1] = "0 3";
        CHECK_FALSE(verify_certificate(bad, &diag));
        CHECK(diag == "witness '0 3' is not on the curve");
    }
    SUBCASE("mangled scan counts fail") {
        Certificate bad = c;
        bad.scanned = *bad.scanned - 1;
        CHECK_FALSE(verify_certificate(bad, &diag));
    }
    SUBCASE("witness order is part of the contract") {
        Certificate bad = c;
        Json ws = Json::array();
        ws.push_back("0 2");
        ws.push_back("0 -2");
        bad.result["witnesses"] = ws;
        CHECK_FALSE(verify_certificate(bad, &diag));
        CHECK(diag == "witness list is not sorted");
    }
    SUBCASE("witnesses above the height bound fail") {
        Certificate bad = c;
        bad.result["witnesses"][0] = "0 -31"; // wrong and out of bounds
        CHECK_FALSE(verify_certificate(bad, &diag));
    }
    SUBCASE("structural damage throws rather than returning false") {
        Certificate bad = c;
        bad.params.erase("height");
        CHECK_THROWS_AS(verify_certificate(bad), CertificateError);
        Certificate odd = c;
        odd.params["target"] = "nonsense";
        CHECK_THROWS_AS(verify_certificate(odd), CertificateError);
    }
}

TEST_CASE("serialized certificates are byte-deterministic and reparsable") {
    Certificate c = sextic_certificate(20);
    std::string text = serialize_certificate(c);
    CHECK(serialize_certificate(sextic_certificate(20)) == text);
    Certificate back = parse_certificate_text(text);
    CHECK(serialize_certificate(back) == text);
    CHECK(verify_certificate(back));
    // fixed top-level field order
    CHECK(text.find("\"schema_version\"") < text.find("\"command\""));
    CHECK(text.find("\"command\"") < text.find("\"params\""));
    CHECK(text.find("\"params\"") < text.find("\"result\""));
    CHECK(text.find("\"result\"") < text.find("\"scanned\""));
    CHECK(text.find("\"scanned\"") < text.find("\"exhaustive\""));
    CHECK(text.find("\"exhaustive\"") < text.find("\"assumptions\""));
    CHECK(text.find("\"assumptions\"") < text.find("\"tool_version\""));
    // mathematical payload values ride as exact strings; no floating point
    // anywhere before the (dotted) tool version
    CHECK(text.find("\"height\": \"20\"") != std::string::npos);
    CHECK(text.find('.') > text.find("\"tool_version\""));
}

TEST_CASE("certificate files round-trip through disk") {
    Certificate c = sextic_certificate(10);
    std::string path =
        (std::filesystem::temp_directory_path() / "medians-test-cert.json").string();
    save_certificate(path, c);
    Certificate back = load_certificate(path);
    CHECK(serialize_certificate(back) == serialize_certificate(c));
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_certificate(path), CertificateError);
}

TEST_CASE("malformed certificate text is a parse error") {
    CHECK_THROWS_AS(parse_certificate_text("{ nope"), CertificateError);
    CHECK_THROWS_AS(parse_certificate_text("[]"), CertificateError);
    CHECK_THROWS_AS(parse_certificate_text("{\"schema_version\": 2}"), CertificateError);
    // scanned must be an integer, not a string
    Json j = certificate_to_json(sextic_certificate(5));
    j["scanned"] = "42";
    CHECK_THROWS_AS(certificate_from_json(j), CertificateError);
    try {
        parse_certificate_text("{\"schema_version\": 1}");
        FAIL("expected CertificateError");
    } catch (const CertificateError& e) {
        CHECK(std::string(e.what()).find("command") != std::string::npos);
    }
}

TEST_CASE("perfect-triangle certificates carry their angle") {
    Rational lam(3, 5), alp(4, 5);
    SearchResult r = search_perfect_at_angle(lam, alp, HeightBound(40));
    Json extra = Json::object();
    extra["lambda"] = to_string(lam);
    extra["alpha"] = to_string(alp);
    Certificate c = make_search_certificate(r, extra);
    std::string diag;
    CHECK(verify_certificate(c, &diag));
    CHECK(c.result["witnesses"].empty());

    Certificate bad = c;
    Json ws = Json::array();
    ws.push_back("3/5 4/5"); // positive but not on the lambda-ellipse
    bad.result["witnesses"] = ws;
    CHECK_FALSE(verify_certificate(bad, &diag));
    CHECK(diag == "witness '3/5 4/5' has wrong included angle");

    Certificate wrong_angle = c;
    wrong_angle.params["alpha"] = "3/5";
    CHECK_FALSE(verify_certificate(wrong_angle, &diag));
}

TEST_CASE("median-set certificates recount the pool") {
    Integer k(1);
    HeightBound bound(4);
    SearchResult r = search_median_sets(k, bound, 4);
    long pool = static_cast<long>(candidate_third_points(k, bound).size());
    Json extra = Json::object();
    extra["k"] = "1";
    extra["n"] = "4";
    Json xres = Json::object();
    xres["pool_size"] = std::to_string(pool);
    Certificate c = make_search_certificate(r, extra, xres);
    std::string diag;
    CHECK(verify_certificate(c, &diag));

    Certificate bad = c;
    bad.result["pool_size"] = std::to_string(pool + 1);
    CHECK_FALSE(verify_certificate(bad, &diag));
    CHECK(diag == "pool size does not match a recount");
}

TEST_CASE("claim certificates recompute to the same bytes") {
    Certificate c = make_verify_claims_certificate({Rational(3, 5), Rational(5, 13)});
    std::string diag;
    CHECK(verify_certificate(c, &diag));
    CHECK(c.result["per_lambda"].size() == 2);
    const auto& first = c.result["per_lambda"][0];
    CHECK(first["alpha"] == "4/5");
    CHECK(first["circle_ellipse_discriminant"] == "-4/9");
    CHECK(first["branch_x_squares"][0] == "1/4+1/3*sqrt(-1)");
    CHECK(first["x1_genus_lower_bound"] == "1");
    CHECK(first["fiber_product_genus"] == "5");
    CHECK(c.result["right_angle_curve"]["genus"] == "2");
    CHECK(c.result["fiber_product_table"]["genus_1_1"] == "5");
    CHECK(c.result["reducibility_check"]["contradiction"] == true);
    CHECK(serialize_certificate(make_verify_claims_certificate({Rational(3, 5), Rational(5, 13)})) ==
          serialize_certificate(c));

    SUBCASE("tampered claims fail") {
        Certificate bad = c;
        bad.result["right_angle_curve"]["genus"] = "3";
        CHECK_FALSE(verify_certificate(bad, &diag));
    }
    SUBCASE("angles without a rational sine are rejected at build time") {
        CHECK_THROWS_AS(make_verify_claims_certificate({Rational(1, 2)}), std::invalid_argument);
        CHECK_THROWS_AS(make_verify_claims_certificate({Rational(1)}), std::invalid_argument);
        // inside a certificate they surface as a verification failure
        Certificate bad = c;
        bad.params["lambdas"] = Json::array({"1/2"});
        CHECK_FALSE(verify_certificate(bad, &diag));
    }
}

TEST_CASE("normalization certificates replay the similarity") {
    QuadElem zero{Rational(0)}, two{Rational(2)}, one{Rational(1)}, four{Rational(4)};
    std::vector<std::pair<QuadElem, QuadElem>> raw{{zero, zero}, {two, zero}, {one, four}};
    Certificate c = make_normalize_certificate(raw);
    CHECK(c.result["k"] == "1");
    CHECK(c.result["points"][2][0] == "1/2");
    CHECK(c.result["points"][2][1] == "2");
    CHECK(c.result["median_set_valid"] == true);
    std::string diag;
    CHECK(verify_certificate(c, &diag));

    Certificate bad = c;
    bad.result["k"] = "2";
    CHECK_FALSE(verify_certificate(bad, &diag));
}

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "medians/certificate.hpp"
#include "medians/checkpoint.hpp"
#include "medians/curves.hpp"
#include "medians/search.hpp"
#include "medians/triangle.hpp"
#include "medians/version.hpp"

namespace {

using namespace medians;

/// Flags shared by every `search` target.
struct SearchFlags {
    long height = 0;
    int workers = 1;
    bool single_threaded = false;
    long unit_size = 4096;
    long max_units = -1;
    std::string checkpoint;
    std::string out;
};

void add_search_flags(CLI::App* cmd, SearchFlags& f) {
    cmd->add_option("--height", f.height, "Height bound H (candidates p/q with |p|,q <= H)")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd->add_option("--workers", f.workers, "Worker thread count")
        ->default_val(1)
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--single-threaded", f.single_threaded,
                  "Run the plain reference loop instead of the work-unit engine");
    cmd->add_option("--unit-size", f.unit_size, "Candidates per work unit")
        ->default_val(4096)
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-units", f.max_units,
                    "Stop after this many new units (testing hook; search resumes later)");
    cmd->add_option("--checkpoint", f.checkpoint, "Checkpoint file to resume from and update");
    cmd->add_option("--out", f.out, "Write the certificate here instead of stdout");
}

EngineOptions engine_options(const SearchFlags& f) {
    EngineOptions o;
    o.workers = f.workers;
    o.single_threaded = f.single_threaded;
    o.unit_size = f.unit_size;
    o.checkpoint_path = f.checkpoint;
    o.max_units = f.max_units;
    return o;
}

void emit(const Certificate& c, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << serialize_certificate(c);
    } else {
        save_certificate(out_path, c);
        std::cout << "certificate written to " << out_path << "\n";
    }
}

/// Shared tail of every search target: interrupted runs leave only the
/// checkpoint behind; completed runs become certificates.
bool finish_search(const SearchResult& r, const Json& extra_params, const Json& extra_result,
                   const std::string& out_path) {
    if (!r.exhaustive) {
        std::cout << "search interrupted after scanning " << r.scanned
                  << " candidates; checkpoint saved, rerun the same command to resume\n";
        return false;
    }
    emit(make_search_certificate(r, extra_params, extra_result), out_path);
    return true;
}

/// True iff every recorded claim in a verify-claims certificate holds.
bool claims_all_hold(const Certificate& c) {
    for (const auto& e : c.result["per_lambda"]) {
        if (e["intersections_distinct"] != true) return false;
        if (e["branch_points_distinct"] != true) return false;
        if (e["cover_branch_loci_disjoint"] != true) return false;
        if (e["x1_genus_lower_bound"] != "1") return false;
        if (e["fiber_product_genus"] != "5") return false;
    }
    const auto& hyp = c.result["right_angle_curve"];
    if (hyp["genus"] != "2" || hyp["rhs_squarefree"] != true) return false;
    const auto& fib = c.result["fiber_product_table"];
    if (fib["genus_0_0"] != "1" || fib["genus_1_0"] != "3" || fib["genus_1_1"] != "5") return false;
    return c.result["reducibility_check"]["contradiction"] == true;
}

Rational parse_rational_flag(const std::string& text, const char* flag) {
    try {
        return parse_rational(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string(flag) + ": " + e.what());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact searches and verifications for rational-median triangle problems"};
    app.set_version_flag("--version", kToolVersion);
    app.set_config("--config", "", "Read flag defaults from a key=value file");
    app.require_subcommand(1);

    int exit_code = 0;

    // verify-claims
    std::vector<std::string> lambda_args;
    std::string claims_out;
    auto* claims = app.add_subcommand(
        "verify-claims", "Check the discriminant, branch-point, and genus claims per angle");
    claims->add_option("--lambda", lambda_args, "Cosine of the angle, as p/q (repeatable)")
        ->required();
    claims->add_option("--out", claims_out, "Write the certificate here instead of stdout");
    claims->callback([&]() {
        std::vector<Rational> lambdas;
        for (const auto& s : lambda_args) lambdas.push_back(parse_rational_flag(s, "--lambda"));
        Certificate c = make_verify_claims_certificate(lambdas);
        emit(c, claims_out);
        if (!claims_all_hold(c)) {
            std::cerr << "one or more claims failed; see the certificate\n";
            exit_code = 1;
        }
    });

    // search
    auto* search = app.add_subcommand("search", "Enumerate rational points up to a height bound");
    search->require_subcommand(1);

    SearchFlags sextic_flags;
    auto* sextic = search->add_subcommand(
        "sextic", "Rational points on z^2 = (4x^2+1)(x^2+1)(x^2+4)");
    add_search_flags(sextic, sextic_flags);
    sextic->callback([&]() {
        RationalPoly rhs = hyperelliptic_rhs(build_right_angle_curve());
        SearchResult r =
            search_even_sextic_points(rhs, HeightBound(sextic_flags.height),
                                      engine_options(sextic_flags));
        finish_search(r, Json::object(), Json::object(), sextic_flags.out);
    });

    SearchFlags line_flags;
    std::string line_a = "0", line_b = "2", line_c1 = "0", line_c2 = "1", line_c3 = "2";
    auto* line = search->add_subcommand(
        "line-case", "Rational points on the three-distances curve of a point off a line");
    line->add_option("--a", line_a, "x-coordinate of the base point");
    line->add_option("--b", line_b, "y-coordinate of the base point (nonzero)");
    line->add_option("--c1", line_c1, "First marked point on the line");
    line->add_option("--c2", line_c2, "Second marked point on the line");
    line->add_option("--c3", line_c3, "Third marked point on the line");
    add_search_flags(line, line_flags);
    line->callback([&]() {
        Rational a = parse_rational_flag(line_a, "--a");
        Rational b = parse_rational_flag(line_b, "--b");
        Rational c1 = parse_rational_flag(line_c1, "--c1");
        Rational c2 = parse_rational_flag(line_c2, "--c2");
        Rational c3 = parse_rational_flag(line_c3, "--c3");
        SearchResult r = search_line_case_points(a, b, c1, c2, c3, HeightBound(line_flags.height),
                                                 engine_options(line_flags));
        Json extra = Json::object();
        extra["a"] = to_string(a);
        extra["b"] = to_string(b);
        extra["c1"] = to_string(c1);
        extra["c2"] = to_string(c2);
        extra["c3"] = to_string(c3);
        finish_search(r, extra, Json::object(), line_flags.out);
    });

    SearchFlags perfect_flags;
    std::string perfect_lambda;
    auto* perfect = search->add_subcommand(
        "perfect", "Perfect triangles with a fixed rational angle and unit third side");
    perfect->add_option("--lambda", perfect_lambda, "Cosine of the fixed angle, as p/q")
        ->required();
    add_search_flags(perfect, perfect_flags);
    perfect->callback([&]() {
        Rational lambda = parse_rational_flag(perfect_lambda, "--lambda");
        auto alpha = is_rational_square(Rational(1) - square(lambda));
        if (!alpha || alpha->is_zero())
            throw std::invalid_argument(
                "--lambda: need 0 < lambda^2 < 1 with 1 - lambda^2 a rational square");
        SearchResult r = search_perfect_at_angle(lambda, *alpha, HeightBound(perfect_flags.height),
                                                 engine_options(perfect_flags));
        Json extra = Json::object();
        extra["lambda"] = to_string(lambda);
        extra["alpha"] = to_string(*alpha);
        finish_search(r, extra, Json::object(), perfect_flags.out);
    });

    SearchFlags median_flags;
    long median_k = 1;
    long median_n = 4;
    auto* median = search->add_subcommand(
        "median-set", "Sets of n points with pairwise rational medians over Q(sqrt(k))");
    median->add_option("--k", median_k, "Squarefree radicand for the ordinates")
        ->default_val(1);
    median->add_option("--size", median_n, "Number of points per set")
        ->default_val(4)
        ->check(CLI::Range(4L, 64L));
    add_search_flags(median, median_flags);
    median->callback([&]() {
        Integer k(median_k);
        HeightBound bound(median_flags.height);
        SearchResult r = search_median_sets(k, bound, median_n, engine_options(median_flags));
        Json extra = Json::object();
        extra["k"] = std::to_string(median_k);
        extra["n"] = std::to_string(median_n);
        Json xres = Json::object();
        if (r.exhaustive)
            xres["pool_size"] = std::to_string(candidate_third_points(k, bound).size());
        finish_search(r, extra, xres, median_flags.out);
    });

    // check
    std::string check_path;
    auto* check = app.add_subcommand("check", "Re-verify a certificate from scratch");
    check->add_option("path", check_path, "Certificate file")->required();
    check->callback([&]() {
        Certificate c = load_certificate(check_path);
        std::string diag;
        if (verify_certificate(c, &diag)) {
            std::cout << "certificate verified\n";
        } else {
            std::cerr << "verification failed: " << diag << "\n";
            exit_code = 1;
        }
    });

    // normalize
    std::vector<std::string> point_args;
    std::string normalize_out;
    auto* normalize = app.add_subcommand(
        "normalize", "Move a point set to the base pair (0,0), (1,0) by a similarity");
    normalize->add_option("points", point_args,
                          "Points as x,y with entries like 1/2 or 3+1/4*sqrt(5)")
        ->required()
        ->expected(3, -1);
    normalize->add_option("--out", normalize_out, "Write the certificate here instead of stdout");
    normalize->callback([&]() {
        std::vector<std::pair<QuadElem, QuadElem>> raw;
        for (const auto& s : point_args) {
            size_t comma = s.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("points: expected x,y in '" + s + "'");
            raw.emplace_back(parse_quad(s.substr(0, comma)), parse_quad(s.substr(comma + 1)));
        }
        emit(make_normalize_certificate(raw), normalize_out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const CheckpointError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const CertificateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "medians/quad.hpp"
#include "medians/search.hpp"

namespace medians {

using Json = nlohmann::ordered_json;

/// Malformed certificate: structurally unreadable, as opposed to readable
/// but failing re-verification.
struct CertificateError : std::runtime_error {
    std::string location;
    CertificateError(const std::string& what, std::string location_)
        : std::runtime_error(what + " (at " + location_ + ")"), location(std::move(location_)) {}
};

/// Machine-checkable record of a command run. All mathematical values inside
/// params/result are exact decimal or "p/q" strings, never floats. Field
/// order is fixed, so serialization is byte-deterministic apart from
/// tool_version.
struct Certificate {
    int schema_version = 1;
    std::string command;
    Json params = Json::object();
    Json result = Json::object();
    std::optional<long> scanned;
    std::optional<bool> exhaustive;
    std::vector<std::string> assumptions;
    std::string tool_version;
};

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

std::string serialize_certificate(const Certificate& c);
Certificate parse_certificate_text(const std::string& text);

Certificate load_certificate(const std::string& path);
void save_certificate(const std::string& path, const Certificate& c);

/// Wraps a finished (exhaustive or interrupted-but-final) search result;
/// extra_params appends target-specific bindings after target and height,
/// extra_result appends payload entries after the witness list.
Certificate make_search_certificate(const SearchResult& r, const Json& extra_params,
                                    const Json& extra_result = Json::object());

/// Runs the full claim suite: per angle, the circle/ellipse discriminant,
/// the four branch points, disjointness of the two median-cover branch loci,
/// and the genus bounds; plus the angle-independent genus checks.
Certificate make_verify_claims_certificate(const std::vector<Rational>& lambdas);

/// Records a similarity normalization of a point set to base points
/// (0,0), (1,0) with ordinates written as coefficients of sqrt(k).
Certificate make_normalize_certificate(const std::vector<std::pair<QuadElem, QuadElem>>& raw);

/// Re-checks a certificate from scratch: every witness is pushed back
/// through its defining predicate and the scanned counts are recomputed
/// where a closed form exists. Structural problems throw CertificateError;
/// a false return means the content failed re-verification (diagnostic
/// explains where).
bool verify_certificate(const Certificate& c, std::string* diagnostic = nullptr);

} // namespace medians

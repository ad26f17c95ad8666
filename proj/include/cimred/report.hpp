#pragma once

// JSON document formats, the deterministic verification harness behind the
// CLI subcommands, and report emission (human text + JSON mirror).

#include <optional>
#include <string>

#include "cimred/exactmat.hpp"
#include "cimred/quiver.hpp"

namespace cimred {

struct QuiverDocument {
    std::string schema_version = "1";
    std::string label; // empty = absent
    std::optional<IntMat> matrix;
    std::optional<QuiverFamilyParams> family;
};

QuiverDocument parse_document(const std::string& json_text);
std::string document_to_json(const QuiverDocument& doc);

// Builds (and validates) the exchange matrix a document describes.
ExchangeMatrix document_matrix(const QuiverDocument& doc);

QuiverDocument example_document(const std::string& family_name, long long r, long long s,
                                long long t, long long p);

struct RunConfig {
    uint64_t seed = 42;
    int trials = 100;
    double tol = 1e-8;
    int max_period = 12;
    Rational scale = Rational(1);
    std::optional<RatMat> post_transform;
};

void validate_config(const RunConfig& config);

// Exit codes: 0 ok / pass, 2 malformed input (raised as exceptions before a
// report exists), 3 full-rank notice, 4 post-transform rejected, 5 failed
// verification.
struct Report {
    std::string text;
    std::string json;
    int exit_code = 0;
};

Report cmd_period(const QuiverDocument& doc, const RunConfig& config);
Report cmd_reduce(const QuiverDocument& doc, const RunConfig& config);
Report cmd_verify(const QuiverDocument& doc, const RunConfig& config);
Report cmd_orbit(const QuiverDocument& doc, const RunConfig& config, const ClusterPoint& u0,
                 int steps);

// Rational post-transform matrix from a JSON array of arrays ("p/q" strings
// or integers).
RatMat parse_rational_matrix(const std::string& json_text);

} // namespace cimred

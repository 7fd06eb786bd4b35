#pragma once

#include <string>

#include <json.hpp>

#include "betaforge/geometry.hpp"

namespace betaforge {

using Json = nlohmann::ordered_json;

enum class OutputFormat { json, csv, table };

/// How beta entered the computation, for the `params` block of every record.
struct BetaSpecInfo {
    std::string spec;        // as given on the command line
    double value = 0.0;
    double error_bound = 0.0; // 0 for exact rational / symbolic values
};

/// The uniform envelope every CLI command emits: flat `payload` tables render
/// to CSV, everything renders to JSON and aligned text.
struct OutputRecord {
    std::string command;
    int m = 0;
    BetaSpecInfo beta;
    Json payload;            // command-specific; tabular data under "rows"
    std::string provenance;  // "exact" or "certified"
    double provenance_error = 0.0;

    Json to_json() const;
    static OutputRecord from_json(const Json& j);

    std::string render(OutputFormat format) const;
};

/// Interval diagram in the style of the map/interval figures: the graphs of
/// the maps T_{beta,i} over I_{beta,m} with digit, choice, switch and
/// fixed-digit intervals marked along the axis. Fixed 1000x1000 viewBox,
/// byte-deterministic for fixed inputs, SVG 1.1 with no external references.
std::string render_interval_diagram(const ExpansionParams& params);

} // namespace betaforge

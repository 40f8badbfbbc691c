// report.hpp: tabular results and their CSV / JSON serialization

#pragma once

#include "tricycle/config.hpp"

#include <json.hpp>

#include <string>
#include <variant>
#include <vector>

namespace tricycle {

// An empty cell marks an absent value (e.g. no energy-balanced tau_h).
using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Report {
    std::string subcommand;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    // Named scalars (extrema, flags) written after the rows.
    std::vector<std::pair<std::string, Cell>> summary;
    // Extra meta entries (grids, counts).
    nlohmann::ordered_json grids = nlohmann::ordered_json::object();
    // Failed grid points; non-empty lists go to the diagnostics file.
    std::vector<std::string> diagnostics;
};

inline constexpr const char* kToolVersion = "0.1.0";

// Full-precision scientific notation, round-trips through strtod.
std::string format_number(double v);

// CSV: header, rows, then one "# name = value" line per summary entry.
// JSON: {"meta": {...}, "rows": [...], "summary": {...}}.
std::string emit_report(const Report& report, const RunConfig& cfg, OutputFormat format);

// Writes text to path through a temporary file and rename. Throws std::runtime_error.
void write_atomic(const std::string& path, const std::string& text);

} // namespace tricycle

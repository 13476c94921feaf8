#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

#include "sigmox/error_grid.hpp"

namespace sigmox {

/// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double v);

/// Summary statistics of an error grid, as written to the JSON summary.
struct GridSummary {
    double max_rel_error = 0.0;
    double mean_rel_error = 0.0;
    double max_abs_error = 0.0;
    std::map<std::string, double> argmax_cell;  // coordinates of the max rel error
};

GridSummary summarize(const ErrorGrid& grid);
GridSummary summarize(const SimErrorGrid& grid);

/// CSV with header mu,sigma,approx,oracle,oracle_stderr,rel_error, one row
/// per cell (mu-major), LF line endings, round-trip float formatting.
void write_error_grid_csv(const std::string& path, const ErrorGrid& grid);

/// Re-reads a grid CSV written by write_error_grid_csv.
ErrorGrid read_error_grid_csv(const std::string& path);

/// CSV with header rho,sigma,mu2,mu3,approx,oracle,oracle_stderr,rel_error.
/// The simulation grid has four coordinates, so it carries four coordinate
/// columns instead of the scalar grid's two.
void write_sim_error_grid_csv(const std::string& path, const SimErrorGrid& grid);

/// Deterministic run description embedded in summaries: command, flat
/// parameter map, seed, library version. The wall-clock timestamp lives only
/// in the sidecar manifest so data outputs stay byte-identical across runs.
nlohmann::ordered_json run_description(const std::string& command,
                                       const nlohmann::ordered_json& parameters,
                                       std::uint64_t seed);

/// Summary JSON for an error-map run (schema_version 1).
nlohmann::ordered_json summary_json(const std::string& command,
                                    const nlohmann::ordered_json& parameters,
                                    std::uint64_t seed, const GridSummary& summary);

/// Writes `<path>`: the run description plus an ISO-8601 timestamp.
void write_manifest(const std::string& path, const std::string& command,
                    const nlohmann::ordered_json& parameters, std::uint64_t seed);

/// Writes text to a file exactly (LF endings, no trailing edits).
void write_text_file(const std::string& path, const std::string& text);

/// Replaces the extension of `path` (or appends if none).
std::string with_extension(const std::string& path, const std::string& ext);

}  // namespace sigmox

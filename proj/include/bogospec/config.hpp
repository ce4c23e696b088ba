#pragma once

#include "bogospec/eigensolver.hpp"
#include "bogospec/model.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bogospec {

/// Parameters shared by all subcommands. Each command reads the subset it
/// needs; resolved_entries() lists that subset with defaults filled in.
struct RunConfig {
    std::string command;
    std::string vhat = "gaussian:0.1:5";
    std::vector<std::pair<double, double>> table_samples; // set when vhat is a JSON table
    double L = 2.0 * kPi;
    int dim = 1;
    double window = 3.0;
    double kappa = 1.0;
    std::vector<int> N;           // empty: command default
    double mode_radius = 2.0;
    std::optional<int> max_excited; // empty: min(N, 8)
    std::vector<IntVec> sectors;  // empty: 0 and the unit vectors (and -e_1)
    int count = 3;
    double tol = 1e-10;
    std::uint64_t seed = 20240601;
    std::string out;
    std::string format = "csv";
    double pairing_scale = 1.0;   // mutation hook for tests; not echoed when 1

    LatticeSpec lattice() const;
    Potential potential() const;
    std::vector<int> particle_numbers() const;
    std::vector<IntVec> sector_list() const;
    EigenOptions eigen_options(std::size_t count_override = 0) const;
    /// Throws ConfigError naming the offending key.
    void validate() const;
    std::vector<std::pair<std::string, std::string>> resolved_entries() const;
};

/// Parses "gaussian:<amplitude>:<width>", "zero_mode:<amplitude>", "none" or
/// "table:<p>/<v>,<p>/<v>,...". Throws ConfigError.
Potential parse_vhat(const std::string& spec, int dim);

/// Parses "0;1;-1" (d = 1) or "0:0;1:0" (d = 2): ':' separates
/// components, ';' separates vectors. Throws ConfigError.
std::vector<IntVec> parse_sectors(const std::string& text, int dim);

/// Applies a JSON object of config keys on top of `cfg`. Unknown keys and
/// wrongly typed values throw ConfigError naming the key.
void apply_json_config(RunConfig& cfg, const std::string& json_text);

/// "# bogospec <version>" followed by one "# key = value" line per resolved
/// entry.
void write_header(std::ostream& os, const RunConfig& cfg);

std::string version_string();

} // namespace bogospec

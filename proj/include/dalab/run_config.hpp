#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dalab/lattice.hpp"

namespace dalab {

struct RunConfig {
  LatticeSpec lattice;
  std::uint64_t seed = 42;
  std::map<std::string, double> tolerances;  // check name -> override
  std::vector<std::string> suites;           // empty runs every suite
  std::filesystem::path out_dir = ".";
};

/// Reads `key = value` lines; `#` starts a comment. Keys: n_space,
/// box_length, mass, dt, n_time, seed, out, suites (comma list) and
/// tolerance.<check>. Throws ValidationError naming the key.
void load_config(RunConfig& config, std::istream& in, std::string_view source = "config");
void load_config_file(RunConfig& config, const std::filesystem::path& path);

/// Parses `<check>=<value>`.
std::pair<std::string, double> parse_tolerance_override(std::string_view text);

/// Lattice invariants, known suite and check names, positive tolerances.
void validate(const RunConfig& config);

}  // namespace dalab

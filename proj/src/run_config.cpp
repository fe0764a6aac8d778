#include "dalab/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "dalab/errors.hpp"
#include "dalab/verification.hpp"

namespace dalab {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty())
    throw ValidationError(std::string(key), "cannot parse '" + std::string(text) + "'");
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) throw ValidationError(std::string(key), "must be finite");
  }
  return value;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

void apply(RunConfig& config, std::string_view key, std::string_view value) {
  constexpr std::string_view kTolerancePrefix = "tolerance.";
  if (key == "n_space") {
    config.lattice.spatial_points = parse_number<int>(key, value);
  } else if (key == "box_length") {
    config.lattice.box_length = parse_number<double>(key, value);
  } else if (key == "mass") {
    config.lattice.mass = parse_number<double>(key, value);
  } else if (key == "dt") {
    config.lattice.time_step = parse_number<double>(key, value);
  } else if (key == "n_time") {
    config.lattice.time_points = parse_number<int>(key, value);
  } else if (key == "seed") {
    config.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "out") {
    config.out_dir = std::string(value);
  } else if (key == "suites") {
    config.suites = split_list(value);
  } else if (key.substr(0, kTolerancePrefix.size()) == kTolerancePrefix) {
    const auto name = key.substr(kTolerancePrefix.size());
    config.tolerances[std::string(name)] = parse_number<double>(key, value);
  } else {
    throw ValidationError(std::string(key), "unknown configuration key");
  }
}

}  // namespace

void load_config(RunConfig& config, std::istream& in, std::string_view source) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos)
      view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos)
      throw ValidationError(std::string(source) + ":" + std::to_string(line_no),
                            "expected key = value");
    apply(config, trim(view.substr(0, eq)), trim(view.substr(eq + 1)));
  }
}

void load_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config", "cannot open " + path.string());
  load_config(config, in, path.string());
}

std::pair<std::string, double> parse_tolerance_override(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos)
    throw ValidationError("tolerance", "expected <check>=<value>, got '" + std::string(text) + "'");
  const auto name = trim(text.substr(0, eq));
  return {std::string(name), parse_number<double>("tolerance", trim(text.substr(eq + 1)))};
}

void validate(const RunConfig& config) {
  validate(config.lattice);
  const auto names = verification::check_names();
  for (const auto& [name, value] : config.tolerances) {
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw ValidationError("tolerance", "unknown check '" + name + "'");
    if (!(value >= 0.0)) throw ValidationError("tolerance", name + " must be nonnegative");
  }
  const auto suites = verification::suite_names();
  for (const auto& s : config.suites)
    if (std::find(suites.begin(), suites.end(), s) == suites.end())
      throw ValidationError("suites", "unknown suite '" + s + "'");
}

}  // namespace dalab

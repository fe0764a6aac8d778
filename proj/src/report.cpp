#include "dalab/report.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace dalab::report {

namespace {

json pair(complex z) { return json::array({z.real(), z.imag()}); }

}  // namespace

std::string report_schema_version() { return "1"; }

std::string format_number(double value) {
  std::array<char, 32> buffer{};
  const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return ec == std::errc{} ? std::string(buffer.data(), ptr) : std::string("nan");
}

json lattice_json(const LatticeSpec& spec) {
  return {{"n_space", spec.spatial_points},
          {"box_length", spec.box_length},
          {"mass", spec.mass},
          {"dt", spec.time_step},
          {"n_time", spec.time_points}};
}

json config_json(const RunConfig& config) {
  json tolerances = json::object();
  for (const auto& [name, value] : config.tolerances) tolerances[name] = value;
  return {{"lattice", lattice_json(config.lattice)},
          {"seed", config.seed},
          {"suites", config.suites},
          {"tolerances", tolerances}};
}

json check_json(const verification::CheckResult& r) {
  json j = {{"name", r.name},
            {"suite", r.suite},
            {"paper_ref", r.formula},
            {"max_residual", r.max_residual},
            {"tolerance", r.tolerance},
            {"bound", verification::to_string(r.bound)},
            {"pass", r.pass}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json verify_report(const RunConfig& config,
                   const std::vector<verification::CheckResult>& results) {
  json checks = json::array();
  for (const auto& r : results) checks.push_back(check_json(r));
  return {{"schema_version", report_schema_version()},
          {"command", "verify"},
          {"config", config_json(config)},
          {"checks", checks},
          {"pass", verification::all_pass(results)}};
}

void write_kernel_csv(std::ostream& out, std::span<const KernelSample> samples) {
  out << "kind,t,x,re,im\n";
  for (const auto& s : samples)
    out << to_string(s.kind) << ',' << format_number(s.t) << ',' << format_number(s.x) << ','
        << format_number(s.value.real()) << ',' << format_number(s.value.imag()) << '\n';
}

json kernel_json(std::span<const KernelSample> samples) {
  json rows = json::array();
  for (const auto& s : samples)
    rows.push_back({{"kind", to_string(s.kind)},
                    {"t", s.t},
                    {"x", s.x},
                    {"re", s.value.real()},
                    {"im", s.value.imag()}});
  return {{"schema_version", report_schema_version()}, {"samples", rows}};
}

json residual_json(const std::string& check, std::size_t n_points, double max_residual,
                   const LatticeSpec& lattice) {
  return {{"schema_version", report_schema_version()},
          {"check", check},
          {"n_points", n_points},
          {"max_residual", max_residual},
          {"lattice", lattice_json(lattice)}};
}

json vev_json(const SpacetimePoint& x, const SpacetimePoint& y, complex vev, complex i_feynman) {
  return {{"schema_version", report_schema_version()},
          {"x", json::array({x.t(), x.x()})},
          {"y", json::array({y.t(), y.x()})},
          {"vev", pair(vev)},
          {"i_feynman", pair(i_feynman)},
          {"abs_diff", std::abs(vev - i_feynman)}};
}

void write_spectrum_csv(std::ostream& out, const absorber::EmissionSpectrum& spectrum) {
  out << "k,omega,energy\n";
  for (const auto& m : spectrum.modes)
    out << format_number(m.momentum) << ',' << format_number(m.frequency) << ','
        << format_number(m.energy) << '\n';
}

json spectrum_summary(const absorber::EmissionSpectrum& spectrum, double tolerance) {
  return {{"schema_version", report_schema_version()},
          {"total", spectrum.total},
          {"n_modes", spectrum.modes.size()},
          {"light_tight", spectrum.total <= tolerance},
          {"tolerance", tolerance}};
}

json dirac_json(const dirac::DiracSpinorSolution& s) {
  json spinor = json::array();
  for (int i = 0; i < 4; ++i) spinor.push_back(pair(s.spinor(i)));
  const auto j = dirac::probability_current(s);
  return {{"index", s.index},
          {"p", s.momentum},
          {"m", s.mass},
          {"E", s.energy},
          {"spinor", spinor},
          {"current", j}};
}

std::string check_line(const verification::CheckResult& r) {
  char buffer[160];
  std::snprintf(buffer, sizeof buffer, "%-4s %2d  %-22s residual %-12.3e %-8s %.1e",
                r.pass ? "PASS" : "FAIL", r.suite, r.name.c_str(), r.max_residual,
                std::string(verification::to_string(r.bound)).c_str(), r.tolerance);
  std::string line = buffer;
  if (!r.note.empty()) line += "  (" + r.note + ")";
  return line;
}

}  // namespace dalab::report

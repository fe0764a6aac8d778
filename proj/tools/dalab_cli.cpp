// dalab: batch front end for the identity suites and data dumps.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 invalid input.

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dalab/absorber.hpp"
#include "dalab/dirac.hpp"
#include "dalab/errors.hpp"
#include "dalab/fock.hpp"
#include "dalab/propagators.hpp"
#include "dalab/report.hpp"
#include "dalab/run_config.hpp"
#include "dalab/verification.hpp"

namespace fs = std::filesystem;
using namespace dalab;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;

struct Overrides {
  std::optional<int> n_space;
  std::optional<double> box_length;
  std::optional<double> mass;
  std::optional<double> dt;
  std::optional<int> n_time;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> tolerances;
  std::vector<std::string> suites;
  std::optional<std::string> out;
  std::optional<std::string> config;
};

RunConfig resolve(const Overrides& o) {
  RunConfig config;
  if (o.config) load_config_file(config, *o.config);
  if (o.n_space) config.lattice.spatial_points = *o.n_space;
  if (o.box_length) config.lattice.box_length = *o.box_length;
  if (o.mass) config.lattice.mass = *o.mass;
  if (o.dt) config.lattice.time_step = *o.dt;
  if (o.n_time) config.lattice.time_points = *o.n_time;
  if (o.seed) config.seed = *o.seed;
  if (o.out) config.out_dir = *o.out;
  if (!o.suites.empty()) config.suites = o.suites;
  for (const auto& t : o.tolerances) {
    auto [name, value] = parse_tolerance_override(t);
    config.tolerances[name] = value;
  }
  validate(config);
  return config;
}

void write_json(const fs::path& path, const report::json& doc) {
  std::ofstream out(path);
  if (!out) throw ValidationError("out", "cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

std::vector<double> split_numbers(const std::string& text, char separator,
                                  const std::string& field) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, separator)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError(field, "cannot parse '" + item + "'");
    }
  }
  return out;
}

double tolerance_for(const RunConfig& config, const std::string& check, double fallback) {
  const auto it = config.tolerances.find(check);
  return it == config.tolerances.end() ? fallback : it->second;
}

int run_verify(const RunConfig& config) {
  const auto results = verification::run_selected(config);
  for (const auto& r : results) std::cout << report::check_line(r) << '\n';
  const bool pass = verification::all_pass(results);
  write_json(config.out_dir / "verify.json", report::verify_report(config, results));
  std::cout << (pass ? "all checks passed" : "some checks FAILED") << '\n';
  return pass ? 0 : kExitFail;
}

int run_kernel(const RunConfig& config, const std::string& kind_name, const std::string& t_range,
               double x, const std::string& format) {
  const auto kind = parse_kernel_kind(kind_name);
  if (!kind) throw ValidationError("kind", "unknown kernel '" + kind_name + "'");
  const auto parts = split_numbers(t_range, ':', "t-range");
  if (parts.size() != 3 || parts[2] < 1 || parts[2] != std::floor(parts[2]))
    throw ValidationError("t-range", "expected start:stop:count with count >= 1");
  const int count = static_cast<int>(parts[2]);
  std::vector<double> times;
  for (int i = 0; i < count; ++i)
    times.push_back(count == 1 ? parts[0]
                               : parts[0] + (parts[1] - parts[0]) * i / (count - 1));

  const Lattice lattice(config.lattice);
  std::vector<KernelSample> samples;
  try {
    samples = sample_kernel(lattice, *kind, times, x);
  } catch (const std::domain_error& e) {
    throw ValidationError("t-range", e.what());
  }
  const fs::path path = config.out_dir / ("kernel_" + kind_name + "." + format);
  if (format == "csv") {
    std::ofstream out(path);
    if (!out) throw ValidationError("out", "cannot write " + path.string());
    report::write_kernel_csv(out, samples);
  } else {
    write_json(path, report::kernel_json(samples));
  }
  std::cout << "wrote " << samples.size() << " samples to " << path.string() << '\n';
  return 0;
}

int run_fock_vev(const RunConfig& config, const std::string& x_text, const std::string& y_text) {
  const auto xs = split_numbers(x_text, ',', "x");
  const auto ys = split_numbers(y_text, ',', "y");
  if (xs.size() != 2) throw ValidationError("x", "expected t,x");
  if (ys.size() != 2) throw ValidationError("y", "expected t,x");
  if (xs[0] == ys[0]) throw ValidationError("y", "time ordering needs x.t != y.t");

  const Lattice lattice(config.lattice);
  const double L = lattice.box_length();
  const SpacetimePoint px(xs[0], xs[1], L);
  const SpacetimePoint py(ys[0], ys[1], L);
  const auto vev = fock::time_ordered_vev(fock::full_mode_spec(lattice, 1), px, py);
  const complex i_df = complex{0.0, 1.0} * eval_kernel(lattice, KernelKind::Feynman, px - py);
  const auto doc = report::vev_json(px, py, vev.value, i_df);
  write_json(config.out_dir / "vev.json", doc);
  std::cout << doc.dump() << '\n';
  const double diff = std::abs(vev.value - i_df);
  const bool pass = diff <= tolerance_for(config, "vev_oracle", 1e-10) && vev.truncation_events == 0;
  return pass ? 0 : kExitFail;
}

int run_dirac(const RunConfig& config, const std::string& p_text) {
  const auto p = split_numbers(p_text, ',', "p");
  if (p.size() != 3) throw ValidationError("p", "expected px,py,pz");
  const dirac::Vector3 momentum{p[0], p[1], p[2]};
  report::json solutions = report::json::array();
  for (int sign : {1, -1}) {
    for (int spin : {1, 2}) {
      const auto sol = dirac::plane_wave_solution(momentum, config.lattice.mass, sign, spin);
      solutions.push_back(report::dirac_json(sol));
    }
  }
  write_json(config.out_dir / "dirac.json",
             {{"schema_version", report::report_schema_version()}, {"solutions", solutions}});
  for (const auto& s : solutions) std::cout << s.dump() << '\n';
  return 0;
}

int run_absorber(const RunConfig& config, int count, const std::vector<std::string>& files,
                 bool light_tight) {
  const Lattice lattice(config.lattice);
  std::vector<absorber::CurrentDistribution> currents;
  for (const auto& f : files)
    currents.push_back(absorber::CurrentDistribution::load_csv(f, config.lattice.time_points,
                                                               config.lattice.spatial_points));
  if (files.empty()) {
    if (count < 0) throw ValidationError("currents", "must be nonnegative");
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                      static_cast<std::uint32_t>(config.seed >> 32)};
    std::mt19937_64 rng(seq);
    for (int i = 0; i < count; ++i) currents.push_back(absorber::random_current(lattice, rng));
  }
  if (light_tight && !currents.empty()) {
    auto total = absorber::CurrentDistribution::zero(lattice);
    for (const auto& c : currents) total += c;
    currents = {absorber::project_light_tight(total, lattice)};
  }
  const auto spectrum = absorber::emitted_spectrum(currents, lattice);
  const double tol = tolerance_for(config, "light_tight", 1e-10);
  {
    std::ofstream out(config.out_dir / "spectrum.csv");
    if (!out) throw ValidationError("out", "cannot write spectrum.csv");
    report::write_spectrum_csv(out, spectrum);
  }
  const auto summary = report::spectrum_summary(spectrum, tol);
  write_json(config.out_dir / "spectrum_summary.json", summary);
  std::cout << summary.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mode-sum laboratory for scalar propagators, a truncated Fock space, Dirac "
               "spinors and direct-action double sums"};
  app.require_subcommand(1);
  app.fallthrough();

  Overrides o;
  app.add_option("--n-space", o.n_space, "spatial points N (even)");
  app.add_option("--box-length", o.box_length, "box length L");
  app.add_option("--mass", o.mass, "mass m");
  app.add_option("--dt", o.dt, "time step");
  app.add_option("--n-time", o.n_time, "time points N_t");
  app.add_option("--seed", o.seed, "random seed (default 42)");
  app.add_option("--tolerance", o.tolerances, "override as <check>=<value>");
  app.add_option("--suite", o.suites, "run only these suites (verify)");
  app.add_option("--out", o.out, "output directory (default .)");
  app.add_option("--config", o.config, "key=value configuration file");

  auto* verify = app.add_subcommand("verify", "run every identity suite");

  auto* kernel = app.add_subcommand("kernel", "dump kernel samples");
  std::string kind;
  std::string t_range;
  double x = 0.0;
  std::string format = "csv";
  kernel->add_option("--kind", kind, "kernel name, e.g. feynman")->required();
  kernel->add_option("--t-range", t_range, "start:stop:count, inclusive")->required();
  kernel->add_option("--x", x, "spatial separation");
  kernel->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  auto* vev = app.add_subcommand("fock-vev", "time-ordered VEV against i DF");
  std::string x_point = "0.5,1.0";
  std::string y_point = "0,0";
  vev->add_option("--x", x_point, "t,x");
  vev->add_option("--y", y_point, "t,x");

  auto* dirac_cmd = app.add_subcommand("dirac", "plane-wave spinors and currents");
  std::string momentum = "0.5,0,0";
  dirac_cmd->add_option("--p", momentum, "px,py,pz");

  auto* absorber_cmd = app.add_subcommand("absorber", "emission spectrum of real currents");
  int count = 3;
  std::vector<std::string> files;
  bool light_tight = false;
  absorber_cmd->add_option("--currents", count, "number of random currents");
  absorber_cmd->add_option("--current-csv", files, "t_index,x_index,value files");
  absorber_cmd->add_flag("--light-tight", light_tight, "project onto zero on-shell content");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    const RunConfig config = resolve(o);
    fs::create_directories(config.out_dir);
    if (verify->parsed()) return run_verify(config);
    if (kernel->parsed()) return run_kernel(config, kind, t_range, x, format);
    if (vev->parsed()) return run_fock_vev(config, x_point, y_point);
    if (dirac_cmd->parsed()) return run_dirac(config, momentum);
    if (absorber_cmd->parsed()) return run_absorber(config, count, files, light_tight);
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitInvalid;
}

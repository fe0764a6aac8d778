#include "dalab/verification.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dalab/absorber.hpp"
#include "dalab/dirac.hpp"
#include "dalab/fock.hpp"
#include "dalab/propagators.hpp"

namespace dalab::verification {

namespace {

struct CheckDef {
  std::string_view name;
  int suite;
  std::string_view formula;
  double tolerance;
  Bound bound;
};

constexpr CheckDef kChecks[] = {
    {"antisymmetry", 1, "D+(x-y) + D-(y-x) = 0", 1e-12, Bound::AtMost},
    {"decomposition", 2, "DF = Dbar + (D+ - D-)/2", 1e-12, Bound::AtMost},
    {"vev_oracle", 3, "<0|T Psi(x) Psi^dag(y)|0> = i DF(x-y)", 1e-10, Bound::AtMost},
    {"vev_truncation", 3, "no truncation events at N_max = 1", 0.0, Bound::AtMost},
    {"vev_orderings", 3, "both time orderings sampled", 0.0, Bound::AtMost},
    {"negative_frequency", 4, "i d/dt [b^dag e^{iwt}] = -w b^dag e^{iwt}", 1e-13, Bound::AtMost},
    {"heisenberg_commutator", 4, "d/dt B = i[H, B], H = sum w (a^dag a + b^dag b)", 1e-12,
     Bound::AtMost},
    {"antiparticle_energy", 4, "H b^dag|0> = +w b^dag|0>", 1e-12, Bound::AtMost},
    {"momentum_sign", 5, "p_adv = -p_ret", 1e-13, Bound::AtMost},
    {"reinterpretation", 6, "sum_k c_k [a_k e^{i(kx-wt)} + b^dag_{-k} e^{i(kx+wt)}] = Psi(t,x)",
     1e-13, Bound::AtMost},
    {"translation_order", 7, "[Psi, P] = -i dPsi/dx, central difference order 2", 0.2,
     Bound::AtMost},
    {"frequency_integral", 8, "(1/2pi) int dv e^{-ivt} i/(v^2 - w^2 + i eps) = e^{-iw|t|}/(2w)",
     1e-4, Bound::AtMost},
    {"frequency_split", 8, "PP part + delta part = full integral", 1e-4, Bound::AtMost},
    {"dirac_rest_frame", 9, "(gamma^mu p_mu - m) psi_i = 0 at p = 0", 1e-15, Bound::AtMost},
    {"dirac_density", 9, "j^0 = u^dag u = 1", 1e-12, Bound::AtMost},
    {"dirac_flux_direction", 9, "j^1 p^1 < 0 for E < 0", 0.0, Bound::Below},
    {"free_field_identity", 10, "sum_ij j_i D1 j_j = sum_ij j_i D+ j_j", 1e-11, Bound::AtMost},
    {"direction_equivalence", 10, "sum_ij j_i D+(x-y) j_j = sum_ij j_i D+(y-x) j_j", 1e-11,
     Bound::AtMost},
    {"spectrum_positivity", 10, "E_n = |J~_n|^2 (dt dx)^2 / (2 w_n L) >= 0", 1e-12,
     Bound::AtMost},
    {"spectrum_consistency", 10, "sum_n E_n = i sum_xy J D+ J (dt dx)^2", 1e-10, Bound::AtMost},
    {"light_tight", 10, "no on-shell content => no emission", 1e-10, Bound::AtMost},
    {"free_field_control", 10, "subset of pairs breaks the D1 -> D+ conversion", 1e-6,
     Bound::Above},
    {"direction_control", 10, "single unsymmetrised pair breaks direction equivalence", 1e-6,
     Bound::Above},
};

constexpr SuiteInfo kSuites[] = {
    {1, "antisymmetry"},   {2, "decomposition"},    {3, "vev"},        {4, "heisenberg"},
    {5, "momentum"},       {6, "reinterpretation"}, {7, "translation"}, {8, "frequency"},
    {9, "dirac"},          {10, "absorber"},
};

const CheckDef& definition(std::string_view name) {
  for (const auto& c : kChecks)
    if (c.name == name) return c;
  throw std::logic_error("unregistered check " + std::string(name));
}

CheckResult make(std::string_view name, double residual, const RunConfig& config,
                 std::string note = {}) {
  const auto& def = definition(name);
  const auto it = config.tolerances.find(std::string(name));
  const double tol = it == config.tolerances.end() ? def.tolerance : it->second;
  bool pass = false;
  switch (def.bound) {
    case Bound::AtMost: pass = residual <= tol; break;
    case Bound::Below: pass = residual < tol; break;
    case Bound::Above: pass = residual > tol; break;
  }
  return {std::string(name), def.suite, std::string(def.formula), residual, tol, def.bound,
          pass, std::move(note)};
}

std::mt19937_64 suite_rng(std::uint64_t seed, int suite) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(suite)};
  return std::mt19937_64(seq);
}

LatticeSpec resized(const LatticeSpec& base, int spatial_points, int time_points) {
  LatticeSpec spec = base;
  spec.spatial_points = spatial_points;
  spec.time_points = time_points;
  return spec;
}

constexpr double kTimeSpan = 5.0;

std::vector<CheckResult> antisymmetry(const RunConfig& config) {
  const Lattice lattice(config.lattice);
  const double L = lattice.box_length();
  auto rng = suite_rng(config.seed, 1);
  std::uniform_real_distribution<double> t(-kTimeSpan, kTimeSpan);
  std::uniform_real_distribution<double> x(0.0, L);
  std::vector<std::pair<SpacetimePoint, SpacetimePoint>> pairs;
  for (int i = 0; i < 1000; ++i) {
    SpacetimePoint a(t(rng), x(rng), L);
    SpacetimePoint b(t(rng), x(rng), L);
    pairs.emplace_back(a, b);
  }
  return {make("antisymmetry", wightman_antisymmetry_residual(lattice, pairs), config,
               "1000 random pairs")};
}

std::vector<CheckResult> decomposition(const RunConfig& config) {
  const Lattice lattice(config.lattice);
  const double L = lattice.box_length();
  auto rng = suite_rng(config.seed, 2);
  std::uniform_real_distribution<double> magnitude(0.05, kTimeSpan);
  std::uniform_real_distribution<double> x(0.0, L);
  std::bernoulli_distribution sign(0.5);
  std::vector<SpacetimePoint> points;
  for (int i = 0; i < 1000; ++i) {
    const double t = magnitude(rng);
    points.emplace_back(sign(rng) ? t : -t, x(rng), L);
  }
  return {make("decomposition", feynman_decomposition_residual(lattice, points), config,
               "1000 random points, |t| >= 0.05")};
}

std::vector<CheckResult> vev(const RunConfig& config) {
  const Lattice lattice(resized(config.lattice, 16, config.lattice.time_points));
  const double L = lattice.box_length();
  const auto spec = fock::full_mode_spec(lattice, 1);
  auto rng = suite_rng(config.seed, 3);
  std::uniform_real_distribution<double> t(-kTimeSpan, kTimeSpan);
  std::uniform_real_distribution<double> x(0.0, L);

  double worst = 0.0;
  std::size_t truncations = 0;
  int forward = 0;
  int backward = 0;
  for (int i = 0; i < 100; ++i) {
    double tx = t(rng);
    double ty = t(rng);
    while (tx == ty) ty = t(rng);
    // Alternate the ordering so both branches are exercised.
    if ((i % 2 == 0) != (tx > ty)) std::swap(tx, ty);
    const SpacetimePoint px(tx, x(rng), L);
    const SpacetimePoint py(ty, x(rng), L);
    const auto v = fock::time_ordered_vev(spec, px, py);
    const complex expected = complex{0.0, 1.0} * eval_kernel(lattice, KernelKind::Feynman, px - py);
    worst = std::max(worst, std::abs(v.value - expected));
    truncations += v.truncation_events;
    (v.particle_branch ? forward : backward) += 1;
  }
  std::ostringstream orders;
  orders << forward << " with x.t > y.t, " << backward << " with x.t < y.t";
  return {make("vev_oracle", worst, config, "100 random pairs, N = 16, N_max = 1"),
          make("vev_truncation", static_cast<double>(truncations), config),
          make("vev_orderings", (forward == 0) + (backward == 0), config, orders.str())};
}

fock::ModeSpec small_spec(const Lattice& lattice, int max_occupation) {
  const int indices[] = {-1, 0, 1};
  return fock::mode_subset(lattice, indices, max_occupation);
}

struct ModeTime {
  std::size_t mode;
  double t;
};

constexpr ModeTime kHeisenbergPoints[] = {{1, 0.0}, {2, 1.3}, {0, 0.7}, {2, -2.1}, {1, 4.0}};
constexpr ModeTime kMomentumPoints[] = {{1, 0.0}, {0, 0.7}, {2, 1.3}, {1, -0.4}, {2, 3.3}};

std::vector<CheckResult> heisenberg(const RunConfig& config) {
  const Lattice lattice(config.lattice);
  const auto spec = small_spec(lattice, 2);
  double phase = 0.0;
  double commutator = 0.0;
  double energy = 0.0;
  for (const auto& [mode, t] : kHeisenbergPoints) {
    phase = std::max(phase, fock::negative_frequency_residual(spec, mode, t));
    commutator = std::max(commutator, fock::heisenberg_equation_residual(spec, mode, t));
  }
  for (std::size_t mode = 0; mode < spec.size(); ++mode) {
    const auto e = fock::antiparticle_energy(spec, mode);
    energy = std::max({energy, std::abs(e.expectation - spec.modes[mode].frequency),
                       e.eigen_residual});
  }
  return {make("negative_frequency", phase, config, "5 (mode, t) points"),
          make("heisenberg_commutator", commutator, config, "5 (mode, t) points"),
          make("antiparticle_energy", energy, config, "modes n = -1, 0, 1")};
}

std::vector<CheckResult> momentum(const RunConfig& config) {
  const Lattice lattice(config.lattice);
  const auto spec = small_spec(lattice, 2);
  double worst = 0.0;
  for (const auto& [mode, t] : kMomentumPoints)
    worst = std::max(worst, fock::momentum_sign_check(spec, mode, t).residual);
  return {make("momentum_sign", worst, config, "5 (mode, t) points")};
}

std::vector<CheckResult> reinterpretation(const RunConfig& config) {
  const Lattice lattice(config.lattice);
  const auto spec = small_spec(lattice, 1);
  double worst = 0.0;
  const double points[][2] = {{0.0, 0.0}, {0.37, 1.9}, {-1.2, 7.3}};
  for (const auto& p : points)
    worst = std::max(worst, fock::reinterpretation_residual(spec, p[0], p[1]));
  return {make("reinterpretation", worst, config, "modes n = -1, 0, 1")};
}

std::vector<CheckResult> translation(const RunConfig& config) {
  const Lattice lattice(resized(config.lattice, 8, config.lattice.time_points));
  const auto spec = fock::full_mode_spec(lattice, 1);
  const double steps[] = {0.1, 0.05, 0.025};
  double residuals[3];
  for (int i = 0; i < 3; ++i)
    residuals[i] = fock::translation_generator_residual(spec, 0.3, 1.7, steps[i]);
  const double order_a = std::log2(residuals[0] / residuals[1]);
  const double order_b = std::log2(residuals[1] / residuals[2]);
  std::ostringstream note;
  note << "N = 8; residuals " << residuals[0] << ", " << residuals[1] << ", " << residuals[2]
       << "; orders " << order_a << ", " << order_b;
  const double deviation = std::max(std::abs(order_a - 2.0), std::abs(order_b - 2.0));
  return {make("translation_order", std::isfinite(deviation) ? deviation : HUGE_VAL, config,
               note.str())};
}

std::vector<CheckResult> frequency(const RunConfig& config) {
  const double cases[][2] = {{1.0, 0.0}, {1.0, 2.0}, {2.0, -1.0}};
  double integral = 0.0;
  double split = 0.0;
  for (const auto& c : cases) {
    const FrequencyIntegralSpec spec{c[0], c[1], 1e-6, 200.0};
    const complex target = std::polar(1.0, -c[0] * std::abs(c[1])) / (2.0 * c[0]);
    integral = std::max(integral, std::abs(feynman_frequency_integral(spec) - target));
    split = std::max(split, feynman_frequency_split(spec).residual);
  }
  return {make("frequency_integral", integral, config, "eps = 1e-6, Omega = 200"),
          make("frequency_split", split, config, "window = 1e-3")};
}

std::vector<CheckResult> dirac_suite(const RunConfig& config) {
  const double m = config.lattice.mass;
  const auto rest = dirac::rest_frame_solutions(m);
  double rest_residual = 0.0;
  double density = 0.0;
  for (const auto& s : rest) {
    rest_residual = std::max(rest_residual, dirac::dirac_residual(s));
    density = std::max(density, std::abs(dirac::probability_current(s)[0] - 1.0));
  }
  const dirac::Vector3 p{0.5, 0.0, 0.0};
  double flux = -HUGE_VAL;
  std::ostringstream note;
  note << "p = (0.5, 0, 0), E < 0: j^1 =";
  for (int sign : {1, -1}) {
    for (int spin : {1, 2}) {
      const auto sol = dirac::plane_wave_solution(p, m, sign, spin);
      const auto j = dirac::probability_current(sol);
      density = std::max(density, std::abs(j[0] - 1.0));
      if (sign < 0) {
        flux = std::max(flux, j[1] * p[0]);
        note << " " << j[1];
      }
    }
  }
  return {make("dirac_rest_frame", rest_residual, config),
          make("dirac_density", density, config, "rest frame and p = (0.5, 0, 0)"),
          make("dirac_flux_direction", flux, config, note.str())};
}

std::vector<CheckResult> absorber_suite(const RunConfig& config) {
  using namespace absorber;
  const Lattice lattice(resized(config.lattice, 16, 16));
  auto rng = suite_rng(config.seed, 10);
  std::vector<CurrentDistribution> currents;
  for (int i = 0; i < 3; ++i) currents.push_back(random_current(lattice, rng));

  const double free_field = free_field_identity(currents, lattice);
  const double direction = dplus_direction_equivalence(currents, lattice);
  const PairList one_pair{{0, 1}};
  const double free_control = free_field_identity(currents, lattice, one_pair);
  const double direction_control = dplus_direction_equivalence(currents, lattice, one_pair);

  const KernelTable plus(lattice, KernelKind::WightmanPlus);
  double negativity = 0.0;
  double consistency = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto c = random_current(lattice, rng);
    const auto spectrum = emitted_spectrum(std::span(&c, 1), lattice);
    for (const auto& mode : spectrum.modes) negativity = std::max(negativity, -mode.energy);
    const complex double_sum = complex{0.0, 1.0} * interaction_sum(c, c, plus, lattice);
    consistency = std::max(consistency, std::abs(spectrum.total - double_sum));
  }

  CurrentDistribution total = CurrentDistribution::zero(lattice);
  for (const auto& c : currents) total += c;
  const auto projected = project_light_tight(total, lattice);
  const double unprojected = light_tight_check(std::span(&total, 1), lattice);
  const double emission = light_tight_check(std::span(&projected, 1), lattice);
  std::ostringstream light;
  light << "emission before projection " << unprojected;

  return {make("free_field_identity", free_field, config, "3 random currents, N = N_t = 16"),
          make("direction_equivalence", direction, config, "3 random currents, N = N_t = 16"),
          make("spectrum_positivity", negativity, config, "100 random currents"),
          make("spectrum_consistency", consistency, config, "100 random currents"),
          make("light_tight", emission, config, light.str()),
          make("free_field_control", free_control, config, "pair (0, 1) only"),
          make("direction_control", direction_control, config, "pair (0, 1) only")};
}

}  // namespace

std::string_view to_string(Bound bound) {
  switch (bound) {
    case Bound::AtMost: return "at_most";
    case Bound::Below: return "below";
    case Bound::Above: return "above";
  }
  return "unknown";
}

std::vector<SuiteInfo> suites() { return {std::begin(kSuites), std::end(kSuites)}; }

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& s : kSuites) out.emplace_back(s.name);
  return out;
}

std::vector<std::string> check_names() {
  std::vector<std::string> out;
  for (const auto& c : kChecks) out.emplace_back(c.name);
  return out;
}

std::vector<CheckResult> run_suite(int number, const RunConfig& config) {
  switch (number) {
    case 1: return antisymmetry(config);
    case 2: return decomposition(config);
    case 3: return vev(config);
    case 4: return heisenberg(config);
    case 5: return momentum(config);
    case 6: return reinterpretation(config);
    case 7: return translation(config);
    case 8: return frequency(config);
    case 9: return dirac_suite(config);
    case 10: return absorber_suite(config);
    default: throw std::out_of_range("no suite " + std::to_string(number));
  }
}

std::vector<CheckResult> run_selected(const RunConfig& config) {
  validate(config);
  std::vector<CheckResult> out;
  for (const auto& s : kSuites) {
    const bool selected =
        config.suites.empty() ||
        std::find(config.suites.begin(), config.suites.end(), s.name) != config.suites.end();
    if (!selected) continue;
    auto results = run_suite(s.number, config);
    out.insert(out.end(), results.begin(), results.end());
  }
  return out;
}

bool all_pass(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
}

}  // namespace dalab::verification

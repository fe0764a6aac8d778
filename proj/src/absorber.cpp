#include "dalab/absorber.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "dalab/errors.hpp"

namespace dalab::absorber {

namespace {

constexpr std::size_t kCascadeBlock = 8;

template <typename T>
T cascade(std::span<const T> values) {
  if (values.size() <= kCascadeBlock) {
    T sum{};
    for (const auto& v : values) sum += v;
    return sum;
  }
  const std::size_t half = values.size() / 2;
  return cascade(values.first(half)) + cascade(values.subspan(half));
}

void check_grid(const CurrentDistribution& current, const Lattice& lattice) {
  if (current.time_points() != lattice.spec().time_points ||
      current.spatial_points() != lattice.spec().spatial_points)
    throw ValidationError("current", "grid " + std::to_string(current.time_points()) + "x" +
                                         std::to_string(current.spatial_points()) +
                                         " does not match the lattice");
}

struct Sample {
  int t;
  int x;
  double value;
};

std::vector<Sample> nonzero(const CurrentDistribution& c) {
  std::vector<Sample> out;
  for (int t = 0; t < c.time_points(); ++t)
    for (int x = 0; x < c.spatial_points(); ++x)
      if (const double v = c.at(t, x); v != 0.0) out.push_back({t, x, v});
  return out;
}

double cell_volume(const Lattice& lattice) {
  return lattice.time_step() * lattice.spatial_step();
}

CurrentDistribution total_current(std::span<const CurrentDistribution> currents,
                                  const Lattice& lattice) {
  CurrentDistribution total = CurrentDistribution::zero(lattice);
  for (const auto& c : currents) {
    check_grid(c, lattice);
    total += c;
  }
  return total;
}

}  // namespace

// --- CurrentDistribution -------------------------------------------------

CurrentDistribution::CurrentDistribution(int time_points, int spatial_points)
    : time_points_(time_points), spatial_points_(spatial_points) {
  if (time_points < 1) throw ValidationError("n_time", "must be positive");
  if (spatial_points < 1) throw ValidationError("n_space", "must be positive");
  samples_.assign(static_cast<std::size_t>(time_points) * static_cast<std::size_t>(spatial_points),
                  0.0);
}

CurrentDistribution CurrentDistribution::zero(const Lattice& lattice) {
  return CurrentDistribution(lattice.spec().time_points, lattice.spec().spatial_points);
}

CurrentDistribution CurrentDistribution::point_source(const Lattice& lattice, int t_index,
                                                      int x_index, double value) {
  auto c = zero(lattice);
  c.set(t_index, x_index, value);
  return c;
}

CurrentDistribution CurrentDistribution::from_complex(int time_points, int spatial_points,
                                                      std::span<const complex> samples) {
  CurrentDistribution c(time_points, spatial_points);
  if (samples.size() != c.samples_.size())
    throw ValidationError("current", "expected " + std::to_string(c.samples_.size()) +
                                         " samples, got " + std::to_string(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].imag() != 0.0)
      throw ValidationError("current", "sample " + std::to_string(i) +
                                           " has a nonzero imaginary part");
    c.samples_[i] = samples[i].real();
  }
  return c;
}

CurrentDistribution CurrentDistribution::load_csv(const std::filesystem::path& path,
                                                  int time_points, int spatial_points) {
  std::ifstream in(path);
  if (!in) throw ValidationError("current", "cannot open " + path.string());
  CurrentDistribution c(time_points, spatial_points);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "t_index,x_index,value") continue;
    std::istringstream row(line);
    int t = 0;
    int x = 0;
    double v = 0.0;
    char c1 = 0;
    char c2 = 0;
    if (!(row >> t >> c1 >> x >> c2 >> v) || c1 != ',' || c2 != ',' || !std::isfinite(v))
      throw ValidationError("current", path.string() + ":" + std::to_string(line_no) +
                                           ": expected t_index,x_index,value");
    c.set(t, x, c.at(t, x) + v);
  }
  return c;
}

void CurrentDistribution::check_index(int t_index, int x_index) const {
  if (t_index < 0 || t_index >= time_points_ || x_index < 0 || x_index >= spatial_points_)
    throw ValidationError("current", "sample (" + std::to_string(t_index) + ", " +
                                         std::to_string(x_index) + ") outside the grid");
}

double CurrentDistribution::at(int t_index, int x_index) const {
  check_index(t_index, x_index);
  return samples_[static_cast<std::size_t>(t_index * spatial_points_ + x_index)];
}

void CurrentDistribution::set(int t_index, int x_index, double value) {
  check_index(t_index, x_index);
  samples_[static_cast<std::size_t>(t_index * spatial_points_ + x_index)] = value;
}

std::optional<IndexBox> CurrentDistribution::support() const {
  std::optional<IndexBox> box;
  for (int t = 0; t < time_points_; ++t) {
    for (int x = 0; x < spatial_points_; ++x) {
      if (at(t, x) == 0.0) continue;
      if (!box) {
        box = IndexBox{t, t, x, x};
      } else {
        box->t_max = t;
        box->x_min = std::min(box->x_min, x);
        box->x_max = std::max(box->x_max, x);
      }
    }
  }
  return box;
}

CurrentDistribution& CurrentDistribution::operator+=(const CurrentDistribution& other) {
  if (other.time_points_ != time_points_ || other.spatial_points_ != spatial_points_)
    throw ValidationError("current", "cannot add currents on different grids");
  for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] += other.samples_[i];
  return *this;
}

CurrentDistribution& CurrentDistribution::operator*=(double scale) {
  for (auto& s : samples_) s *= scale;
  return *this;
}

CurrentDistribution random_current(const Lattice& lattice, std::mt19937_64& rng) {
  auto c = CurrentDistribution::zero(lattice);
  const int nt = c.time_points();
  const int nx = c.spatial_points();
  auto pick = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int t0 = pick(0, nt - 1);
  const int t1 = pick(t0, nt - 1);
  const int x0 = pick(0, nx - 1);
  const int x1 = pick(x0, nx - 1);
  std::uniform_real_distribution<double> amplitude(-1.0, 1.0);
  for (int t = t0; t <= t1; ++t)
    for (int x = x0; x <= x1; ++x) c.set(t, x, amplitude(rng));
  return c;
}

// --- kernels and double sums ------------------------------------------------

KernelTable::KernelTable(const Lattice& lattice, KernelKind kind)
    : kind_(kind),
      time_points_(lattice.spec().time_points),
      spatial_points_(lattice.spec().spatial_points) {
  values_.reserve(static_cast<std::size_t>((2 * time_points_ - 1) * spatial_points_));
  for (int dt = -(time_points_ - 1); dt < time_points_; ++dt)
    for (int dx = 0; dx < spatial_points_; ++dx)
      values_.push_back(eval_kernel_midpoint(lattice, kind, dt * lattice.time_step(),
                                             dx * lattice.spatial_step()));
}

complex KernelTable::operator()(int dt_index, int dx_index) const {
  int dx = dx_index % spatial_points_;
  if (dx < 0) dx += spatial_points_;
  const int row = dt_index + time_points_ - 1;
  return values_[static_cast<std::size_t>(row * spatial_points_ + dx)];
}

PairList all_pairs(std::size_t n) {
  PairList pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) pairs.emplace_back(i, j);
  return pairs;
}

complex pairwise_sum(std::span<const complex> values) { return cascade(values); }
double pairwise_sum(std::span<const double> values) { return cascade(values); }

complex interaction_sum(const CurrentDistribution& a, const CurrentDistribution& b,
                        const KernelTable& table, const Lattice& lattice, Direction direction) {
  check_grid(a, lattice);
  check_grid(b, lattice);
  const auto as = nonzero(a);
  const auto bs = nonzero(b);
  const int sign = direction == Direction::Forward ? 1 : -1;
  std::vector<complex> rows;
  rows.reserve(as.size());
  std::vector<complex> terms(bs.size());
  for (const auto& p : as) {
    for (std::size_t j = 0; j < bs.size(); ++j) {
      const auto& q = bs[j];
      terms[j] = q.value * table(sign * (p.t - q.t), sign * (p.x - q.x));
    }
    rows.push_back(p.value * pairwise_sum(terms));
  }
  const double v = cell_volume(lattice);
  return pairwise_sum(rows) * (v * v);
}

complex interaction_sum(const CurrentDistribution& a, const CurrentDistribution& b,
                        KernelKind kind, const Lattice& lattice, Direction direction) {
  return interaction_sum(a, b, KernelTable(lattice, kind), lattice, direction);
}

complex double_sum(std::span<const CurrentDistribution> currents, const PairList& pairs,
                   const KernelTable& table, const Lattice& lattice, Direction direction) {
  std::vector<complex> parts;
  parts.reserve(pairs.size());
  for (const auto& [i, j] : pairs)
    parts.push_back(interaction_sum(currents[i], currents[j], table, lattice, direction));
  return pairwise_sum(parts);
}

namespace {
PairList resolve(std::span<const CurrentDistribution> currents,
                 const std::optional<PairList>& pairs) {
  if (currents.empty()) throw ValidationError("currents", "need at least one current");
  if (!pairs) return all_pairs(currents.size());
  for (const auto& [i, j] : *pairs)
    if (i >= currents.size() || j >= currents.size())
      throw ValidationError("pairs", "pair index outside the current list");
  return *pairs;
}
}  // namespace

double free_field_identity(std::span<const CurrentDistribution> currents,
                           const Lattice& lattice, const std::optional<PairList>& pairs) {
  const PairList p = resolve(currents, pairs);
  const KernelTable hadamard(lattice, KernelKind::Hadamard);
  const KernelTable plus(lattice, KernelKind::WightmanPlus);
  return std::abs(double_sum(currents, p, hadamard, lattice) -
                  double_sum(currents, p, plus, lattice));
}

double dplus_direction_equivalence(std::span<const CurrentDistribution> currents,
                                   const Lattice& lattice, const std::optional<PairList>& pairs) {
  const PairList p = resolve(currents, pairs);
  const KernelTable plus(lattice, KernelKind::WightmanPlus);
  return std::abs(double_sum(currents, p, plus, lattice, Direction::Forward) -
                  double_sum(currents, p, plus, lattice, Direction::Reversed));
}

// --- emission -----------------------------------------------------------------

EmissionSpectrum emitted_spectrum(std::span<const CurrentDistribution> currents,
                                  const Lattice& lattice) {
  const auto total = total_current(currents, lattice);
  const auto samples = nonzero(total);
  const double v = cell_volume(lattice);
  const double dt = lattice.time_step();
  const double dx = lattice.spatial_step();

  EmissionSpectrum out;
  std::vector<complex> terms(samples.size());
  std::vector<double> energies;
  for (const auto& mode : lattice.modes()) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto& s = samples[i];
      const double phase = mode.frequency * s.t * dt - mode.momentum * s.x * dx;
      terms[i] = s.value * std::polar(1.0, -phase);
    }
    const complex transform = pairwise_sum(terms);
    const double energy =
        std::norm(transform) * v * v / (2.0 * mode.frequency * lattice.box_length());
    out.modes.push_back({mode.index, mode.momentum, mode.frequency, energy});
    energies.push_back(energy);
  }
  out.total = pairwise_sum(energies);
  return out;
}

double light_tight_check(std::span<const CurrentDistribution> currents, const Lattice& lattice) {
  if (currents.empty()) return 0.0;
  return emitted_spectrum(currents, lattice).total;
}

CurrentDistribution project_light_tight(const CurrentDistribution& current,
                                        const Lattice& lattice) {
  check_grid(current, lattice);
  const int nt = current.time_points();
  const int nx = current.spatial_points();
  const auto modes = lattice.modes();
  const Eigen::Index rows = static_cast<Eigen::Index>(nt) * nx;
  const Eigen::Index cols = 2 * static_cast<Eigen::Index>(modes.size());

  Eigen::MatrixXd basis(rows, cols);
  Eigen::VectorXd j(rows);
  for (int t = 0; t < nt; ++t) {
    for (int x = 0; x < nx; ++x) {
      const Eigen::Index r = static_cast<Eigen::Index>(t) * nx + x;
      j(r) = current.at(t, x);
      for (std::size_t n = 0; n < modes.size(); ++n) {
        const double phase = modes[n].frequency * t * lattice.time_step() -
                             modes[n].momentum * x * lattice.spatial_step();
        basis(r, static_cast<Eigen::Index>(2 * n)) = std::cos(phase);
        basis(r, static_cast<Eigen::Index>(2 * n + 1)) = std::sin(phase);
      }
    }
  }
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(basis);
  const Eigen::VectorXd residual = j - basis * cod.solve(j);

  CurrentDistribution out(nt, nx);
  for (int t = 0; t < nt; ++t)
    for (int x = 0; x < nx; ++x)
      out.set(t, x, residual(static_cast<Eigen::Index>(t) * nx + x));
  return out;
}

}  // namespace dalab::absorber

#include "dalab/propagators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dalab {

namespace {

constexpr complex kI{0.0, 1.0};

// S+(t,x) = (1/L) sum e^{-i(wt - kx)} / (2w); the negative-frequency sum is
// its complex conjugate for real t, x.
complex positive_frequency_sum(const Lattice& lattice, double t, double x) {
  const auto modes = lattice.modes();
  complex sum{0.0, 0.0};
  if (lattice.negation_closed()) {
    // +-k partners folded into e^{-iwt} cos(kx) / w.
    for (const auto& m : modes) {
      if (m.index < 0) continue;
      const complex phase = std::polar(1.0, -m.frequency * t);
      if (m.index == 0)
        sum += phase / (2.0 * m.frequency);
      else
        sum += phase * (std::cos(m.momentum * x) / m.frequency);
    }
  } else {
    for (const auto& m : modes)
      sum += std::polar(1.0, -(m.frequency * t - m.momentum * x)) / (2.0 * m.frequency);
  }
  return sum / lattice.box_length();
}

complex combine(KernelKind kind, double t, complex plus, complex minus, double step_at_zero) {
  auto step = [step_at_zero](double s) {
    if (s > 0.0) return 1.0;
    if (s < 0.0) return 0.0;
    return step_at_zero;
  };
  const complex commutator = plus + minus;
  switch (kind) {
    case KernelKind::WightmanPlus: return plus;
    case KernelKind::WightmanMinus: return minus;
    case KernelKind::Commutator: return commutator;
    case KernelKind::Hadamard: return 0.5 * (plus - minus);
    case KernelKind::Retarded: return step(t) * commutator;
    case KernelKind::Advanced: return -step(-t) * commutator;
    case KernelKind::TimeSymmetric:
      return 0.5 * (step(t) * commutator - step(-t) * commutator);
    case KernelKind::Feynman: return step(t) * plus - step(-t) * minus;
  }
  throw std::logic_error("unhandled KernelKind");
}

complex evaluate(const Lattice& lattice, KernelKind kind, double t, double x,
                 double step_at_zero) {
  const complex s = positive_frequency_sum(lattice, t, x);
  const complex plus = -kI * s;
  const complex minus = kI * std::conj(s);
  return combine(kind, t, plus, minus, step_at_zero);
}

void require_closed(const Lattice& lattice) {
  if (!lattice.negation_closed())
    throw std::invalid_argument(
        "kernel evaluation needs a momentum grid closed under k -> -k");
}

double reduce(double x, double box_length) {
  double r = std::fmod(x, box_length);
  if (r < 0.0) r += box_length;
  if (r >= box_length) r = 0.0;
  return r;
}

}  // namespace

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::WightmanPlus: return "wightman_plus";
    case KernelKind::WightmanMinus: return "wightman_minus";
    case KernelKind::Commutator: return "commutator";
    case KernelKind::Hadamard: return "hadamard";
    case KernelKind::Retarded: return "retarded";
    case KernelKind::Advanced: return "advanced";
    case KernelKind::TimeSymmetric: return "time_symmetric";
    case KernelKind::Feynman: return "feynman";
  }
  return "unknown";
}

std::optional<KernelKind> parse_kernel_kind(std::string_view name) {
  for (auto kind : kAllKernelKinds)
    if (to_string(kind) == name) return kind;
  return std::nullopt;
}

bool uses_step_function(KernelKind kind) {
  return kind == KernelKind::Retarded || kind == KernelKind::Advanced ||
         kind == KernelKind::TimeSymmetric || kind == KernelKind::Feynman;
}

SpacetimePoint::SpacetimePoint(double t, double x, double box_length)
    : t_(t), x_(0.0), box_length_(box_length) {
  if (!(box_length > 0.0)) throw std::invalid_argument("box_length must be positive");
  x_ = reduce(x, box_length);
}

SpacetimePoint SpacetimePoint::operator-(const SpacetimePoint& other) const {
  return SpacetimePoint(t_ - other.t_, x_ - other.x_, box_length_);
}

complex eval_kernel(const Lattice& lattice, KernelKind kind, double t, double x) {
  require_closed(lattice);
  if (t == 0.0 && uses_step_function(kind))
    throw std::domain_error(std::string(to_string(kind)) + " kernel is undefined at t = 0");
  return evaluate(lattice, kind, t, x, 0.5);
}

complex eval_kernel(const Lattice& lattice, KernelKind kind, const SpacetimePoint& p) {
  return eval_kernel(lattice, kind, p.t(), p.x());
}

complex eval_kernel_midpoint(const Lattice& lattice, KernelKind kind, double t, double x) {
  require_closed(lattice);
  return evaluate(lattice, kind, t, x, 0.5);
}

complex detail::eval_kernel_unchecked(const Lattice& lattice, KernelKind kind, double t,
                                      double x) {
  return evaluate(lattice, kind, t, x, 0.5);
}

double feynman_decomposition_residual(const Lattice& lattice,
                                      std::span<const SpacetimePoint> points) {
  double worst = 0.0;
  for (const auto& p : points) {
    const complex df = eval_kernel(lattice, KernelKind::Feynman, p);
    const complex dbar = eval_kernel(lattice, KernelKind::TimeSymmetric, p);
    const complex plus = eval_kernel(lattice, KernelKind::WightmanPlus, p);
    const complex minus = eval_kernel(lattice, KernelKind::WightmanMinus, p);
    worst = std::max(worst, std::abs(df - dbar - 0.5 * (plus - minus)));
  }
  return worst;
}

double wightman_antisymmetry_residual(
    const Lattice& lattice,
    std::span<const std::pair<SpacetimePoint, SpacetimePoint>> pairs) {
  double worst = 0.0;
  for (const auto& [x, y] : pairs) {
    const complex forward = eval_kernel(lattice, KernelKind::WightmanPlus, x - y);
    const complex backward = eval_kernel(lattice, KernelKind::WightmanMinus, y - x);
    worst = std::max(worst, std::abs(forward + backward));
  }
  return worst;
}

std::vector<KernelSample> sample_kernel(const Lattice& lattice, KernelKind kind,
                                        std::span<const double> times, double x) {
  std::vector<KernelSample> out;
  out.reserve(times.size());
  const double xr = reduce(x, lattice.box_length());
  for (double t : times) out.push_back({kind, t, xr, eval_kernel(lattice, kind, t, xr)});
  return out;
}

}  // namespace dalab

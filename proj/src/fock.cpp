#include "dalab/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dalab/errors.hpp"

namespace dalab::fock {

namespace {

constexpr complex kI{0.0, 1.0};
constexpr std::size_t kMaxDimension = std::size_t{1} << 22;

std::size_t slot(const Ladder& l, std::size_t mode_count) {
  return (l.sector == Sector::Particle ? 0 : mode_count) + l.mode;
}

void check_modes(const OperatorTerm& term, std::size_t mode_count) {
  for (const auto& f : term.factors)
    if (f.mode >= mode_count)
      throw std::out_of_range("ladder operator on mode " + std::to_string(f.mode) +
                              " outside a mode set of size " + std::to_string(mode_count));
}

// Acts with one product term on a basis occupation, rightmost factor first.
// Returns false when the result is the zero vector.
bool act(const OperatorTerm& term, Occupation& occupation, complex& amplitude,
         int max_occupation, std::size_t mode_count, bool& truncated) {
  for (auto it = term.factors.rbegin(); it != term.factors.rend(); ++it) {
    auto& n = occupation[slot(*it, mode_count)];
    if (it->dagger) {
      if (n >= max_occupation) {
        truncated = true;
        return false;
      }
      amplitude *= std::sqrt(static_cast<double>(n) + 1.0);
      ++n;
    } else {
      if (n == 0) return false;
      amplitude *= std::sqrt(static_cast<double>(n));
      --n;
    }
  }
  amplitude *= term.coefficient;
  return true;
}

ModeOperator number_weighted(const ModeSpec& spec, bool by_frequency) {
  ModeOperator out;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double weight = by_frequency ? spec.modes[i].frequency : spec.modes[i].momentum;
    out += complex(weight) * (a_dag(i) * a(i) + b_dag(i) * b(i));
  }
  return out;
}

double restricted_max(const SparseMatrix& m, const FockSpace& space) {
  const int cap = space.spec().max_occupation;
  double worst = 0.0;
  for (int col = 0; col < m.outerSize(); ++col) {
    const auto occ = space.occupation(static_cast<std::size_t>(col));
    if (std::any_of(occ.begin(), occ.end(), [cap](auto n) { return n >= cap; })) continue;
    for (SparseMatrix::InnerIterator it(m, col); it; ++it)
      worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

SparseMatrix identity_matrix(std::size_t dimension) {
  SparseMatrix id(static_cast<Eigen::Index>(dimension), static_cast<Eigen::Index>(dimension));
  id.setIdentity();
  return id;
}

}  // namespace

// --- ModeSpec -------------------------------------------------------------

double ModeSpec::normalization(std::size_t mode) const {
  return 1.0 / std::sqrt(2.0 * modes.at(mode).frequency * box_length);
}

std::optional<std::size_t> ModeSpec::find(int index) const {
  for (std::size_t i = 0; i < modes.size(); ++i)
    if (modes[i].index == index) return i;
  return std::nullopt;
}

bool ModeSpec::negation_closed() const {
  return std::all_of(modes.begin(), modes.end(),
                     [this](const Mode& m) { return find(-m.index).has_value(); });
}

void validate(const ModeSpec& spec) {
  if (spec.modes.empty()) throw ValidationError("modes", "need at least one mode");
  if (spec.max_occupation < 1 || spec.max_occupation > 255)
    throw ValidationError("max_occupation", "must lie in [1, 255]");
  if (!(spec.box_length > 0.0)) throw ValidationError("box_length", "must be positive");
  for (std::size_t i = 0; i < spec.modes.size(); ++i)
    for (std::size_t j = i + 1; j < spec.modes.size(); ++j)
      if (spec.modes[i].index == spec.modes[j].index)
        throw ValidationError("modes", "repeated mode index " +
                                           std::to_string(spec.modes[i].index));
}

ModeSpec full_mode_spec(const Lattice& lattice, int max_occupation) {
  ModeSpec spec{{lattice.modes().begin(), lattice.modes().end()}, lattice.box_length(),
                max_occupation};
  validate(spec);
  return spec;
}

ModeSpec mode_subset(const Lattice& lattice, std::span<const int> indices, int max_occupation) {
  ModeSpec spec{{}, lattice.box_length(), max_occupation};
  for (int n : indices) {
    const int pos = lattice.position_of(n);
    if (pos < 0) throw ValidationError("modes", "index " + std::to_string(n) + " is not on the grid");
    spec.modes.push_back(lattice.modes()[static_cast<std::size_t>(pos)]);
  }
  validate(spec);
  return spec;
}

// --- FockState ------------------------------------------------------------

FockState FockState::vacuum(const ModeSpec& spec) {
  FockState state(spec.size());
  state.add(Occupation(2 * spec.size(), 0), 1.0);
  return state;
}

FockState vacuum(const ModeSpec& spec) { return FockState::vacuum(spec); }

complex FockState::amplitude(const Occupation& occupation) const {
  const auto it = amplitudes_.find(occupation);
  return it == amplitudes_.end() ? complex{} : it->second;
}

complex FockState::vacuum_amplitude() const {
  return amplitude(Occupation(2 * mode_count_, 0));
}

double FockState::norm_squared() const {
  double sum = 0.0;
  for (const auto& [occ, amp] : amplitudes_) sum += std::norm(amp);
  return sum;
}

void FockState::add(const Occupation& occupation, complex amplitude) {
  if (occupation.size() != 2 * mode_count_)
    throw std::invalid_argument("occupation tuple does not match the mode count");
  auto [it, inserted] = amplitudes_.try_emplace(occupation, amplitude);
  if (!inserted) it->second += amplitude;
  if (it->second == complex{}) amplitudes_.erase(it);
}

FockState& FockState::operator+=(const FockState& other) {
  for (const auto& [occ, amp] : other.amplitudes_) add(occ, amp);
  return *this;
}

complex inner_product(const FockState& bra, const FockState& ket) {
  complex sum{};
  for (const auto& [occ, amp] : bra.amplitudes()) sum += std::conj(amp) * ket.amplitude(occ);
  return sum;
}

// --- ModeOperator ---------------------------------------------------------

ModeOperator ModeOperator::identity() {
  ModeOperator op;
  op.terms_.push_back({});
  return op;
}

ModeOperator ModeOperator::ladder(Sector sector, std::size_t mode, bool dagger,
                                  complex coefficient, double frequency) {
  ModeOperator op;
  op.terms_.push_back({coefficient, frequency, {{sector, mode, dagger}}});
  return op;
}

ModeOperator ModeOperator::adjoint() const {
  ModeOperator out;
  for (const auto& term : terms_) {
    OperatorTerm t{std::conj(term.coefficient), -term.frequency, {}};
    for (auto it = term.factors.rbegin(); it != term.factors.rend(); ++it)
      t.factors.push_back({it->sector, it->mode, !it->dagger});
    out.terms_.push_back(std::move(t));
  }
  return out;
}

ModeOperator ModeOperator::time_derivative() const {
  ModeOperator out = *this;
  for (auto& term : out.terms_) term.coefficient *= -kI * term.frequency;
  return out;
}

ModeOperator& ModeOperator::operator+=(const ModeOperator& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

ModeOperator& ModeOperator::operator*=(complex scalar) {
  for (auto& term : terms_) term.coefficient *= scalar;
  return *this;
}

ModeOperator operator-(ModeOperator lhs, const ModeOperator& rhs) {
  return lhs += complex(-1.0) * rhs;
}

ModeOperator operator*(const ModeOperator& lhs, const ModeOperator& rhs) {
  ModeOperator out;
  out.terms_.reserve(lhs.terms_.size() * rhs.terms_.size());
  for (const auto& l : lhs.terms_) {
    for (const auto& r : rhs.terms_) {
      OperatorTerm t{l.coefficient * r.coefficient, l.frequency + r.frequency, l.factors};
      t.factors.insert(t.factors.end(), r.factors.begin(), r.factors.end());
      out.terms_.push_back(std::move(t));
    }
  }
  return out;
}

Applied apply(const ModeOperator& op, const FockState& state, const ModeSpec& spec) {
  const std::size_t m = spec.size();
  if (state.mode_count() != m)
    throw std::invalid_argument("state and mode set disagree on the number of modes");
  Applied out{FockState(m), 0};
  for (const auto& term : op.terms()) {
    check_modes(term, m);
    for (const auto& [occ, amp] : state.amplitudes()) {
      Occupation next = occ;
      complex value = amp;
      bool truncated = false;
      if (act(term, next, value, spec.max_occupation, m, truncated))
        out.state.add(next, value);
      else if (truncated)
        ++out.truncation_events;
    }
  }
  return out;
}

// --- matrices -------------------------------------------------------------

FockSpace::FockSpace(ModeSpec spec) : spec_(std::move(spec)) {
  validate(spec_);
  const auto base = static_cast<std::size_t>(spec_.max_occupation) + 1;
  for (std::size_t i = 0; i < 2 * spec_.size(); ++i) {
    dimension_ *= base;
    if (dimension_ > kMaxDimension)
      throw ValidationError("modes", "truncated Fock space too large to materialise");
  }
}

std::size_t FockSpace::index_of(const Occupation& occupation) const {
  const auto base = static_cast<std::size_t>(spec_.max_occupation) + 1;
  std::size_t index = 0;
  for (auto it = occupation.rbegin(); it != occupation.rend(); ++it) index = index * base + *it;
  return index;
}

Occupation FockSpace::occupation(std::size_t index) const {
  const auto base = static_cast<std::size_t>(spec_.max_occupation) + 1;
  Occupation occ(2 * spec_.size(), 0);
  for (auto& n : occ) {
    n = static_cast<std::uint8_t>(index % base);
    index /= base;
  }
  return occ;
}

SparseMatrix to_matrix(const ModeOperator& op, const FockSpace& space) {
  const auto& spec = space.spec();
  const std::size_t m = spec.size();
  for (const auto& term : op.terms()) check_modes(term, m);
  std::vector<Eigen::Triplet<complex>> triplets;
  for (std::size_t col = 0; col < space.dimension(); ++col) {
    const Occupation start = space.occupation(col);
    for (const auto& term : op.terms()) {
      Occupation occ = start;
      complex value{1.0, 0.0};
      bool truncated = false;
      if (act(term, occ, value, spec.max_occupation, m, truncated))
        triplets.emplace_back(static_cast<int>(space.index_of(occ)), static_cast<int>(col),
                              value);
    }
  }
  const auto dim = static_cast<Eigen::Index>(space.dimension());
  SparseMatrix out(dim, dim);
  out.setFromTriplets(triplets.begin(), triplets.end());
  out.prune(complex{});
  return out;
}

Eigen::VectorXcd to_vector(const FockState& state, const FockSpace& space) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space.dimension()));
  for (const auto& [occ, amp] : state.amplitudes())
    v(static_cast<Eigen::Index>(space.index_of(occ))) = amp;
  return v;
}

double max_abs_entry(const SparseMatrix& m) {
  double worst = 0.0;
  for (int col = 0; col < m.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(m, col); it; ++it)
      worst = std::max(worst, std::abs(it.value()));
  return worst;
}

// --- field-theory operators -------------------------------------------------

ModeOperator field(const ModeSpec& spec, double t, double x) {
  ModeOperator out;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto& mode = spec.modes[i];
    const double c = spec.normalization(i);
    const double phase = mode.momentum * x - mode.frequency * t;
    out += ModeOperator::ladder(Sector::Particle, i, false, std::polar(c, phase), mode.frequency);
    out += ModeOperator::ladder(Sector::Antiparticle, i, true, std::polar(c, -phase),
                                -mode.frequency);
  }
  return out;
}

ModeOperator field_adjoint(const ModeSpec& spec, double t, double x) {
  ModeOperator out;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto& mode = spec.modes[i];
    const double c = spec.normalization(i);
    const double phase = mode.momentum * x - mode.frequency * t;
    out += ModeOperator::ladder(Sector::Particle, i, true, std::polar(c, -phase),
                                -mode.frequency);
    out += ModeOperator::ladder(Sector::Antiparticle, i, false, std::polar(c, phase),
                                mode.frequency);
  }
  return out;
}

ModeOperator field_before_relabeling(const ModeSpec& spec, double t, double x) {
  ModeOperator out;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto& mode = spec.modes[i];
    const auto partner = spec.find(-mode.index);
    if (!partner)
      throw std::invalid_argument("mode set is not closed under k -> -k: mode index " +
                                  std::to_string(mode.index) + " has no partner " +
                                  std::to_string(-mode.index));
    const double c = spec.normalization(i);
    out += ModeOperator::ladder(Sector::Particle, i, false,
                                std::polar(c, mode.momentum * x - mode.frequency * t),
                                mode.frequency);
    // a_adv(k,t) e^{ikx} = b^dag(-k) e^{i(kx + wt)}
    out += ModeOperator::ladder(Sector::Antiparticle, *partner, true,
                                std::polar(c, mode.momentum * x + mode.frequency * t),
                                -mode.frequency);
  }
  return out;
}

ModeOperator hamiltonian(const ModeSpec& spec) { return number_weighted(spec, true); }

ModeOperator total_momentum(const ModeSpec& spec) { return number_weighted(spec, false); }

OscillatorQuadratures quadratures(const ModeOperator& coefficient) {
  ModeOperator q = coefficient + coefficient.adjoint();
  ModeOperator p = q.time_derivative();
  return {std::move(q), std::move(p)};
}

ModeOperator oscillator_coefficient(const ModeSpec& spec, std::size_t mode, double t,
                                    Evolution evolution) {
  const double w = spec.modes.at(mode).frequency;
  const double rate = evolution == Evolution::Retarded ? w : -w;
  return ModeOperator::ladder(Sector::Particle, mode, false, std::polar(1.0, -rate * t), rate);
}

// --- checks -----------------------------------------------------------------

VacuumExpectation time_ordered_vev(const ModeSpec& spec, const SpacetimePoint& x,
                                   const SpacetimePoint& y) {
  if (x.t() == y.t())
    throw std::domain_error("time ordering is undefined for equal times");
  const FockState vac = vacuum(spec);
  const ModeOperator psi_x = field(spec, x.t(), x.x());
  const ModeOperator psi_dag_y = field_adjoint(spec, y.t(), y.x());
  const bool particle = x.t() > y.t();
  // Rightmost operator acts first.
  const Applied first = apply(particle ? psi_dag_y : psi_x, vac, spec);
  const Applied second = apply(particle ? psi_x : psi_dag_y, first.state, spec);
  return {second.state.vacuum_amplitude(), first.truncation_events + second.truncation_events,
          particle};
}

complex anticommutator_vev(const ModeSpec& spec, const SpacetimePoint& x,
                           const SpacetimePoint& y) {
  const FockState vac = vacuum(spec);
  const ModeOperator psi_x = field(spec, x.t(), x.x());
  const ModeOperator psi_dag_y = field_adjoint(spec, y.t(), y.x());
  const auto forward = apply(psi_x, apply(psi_dag_y, vac, spec).state, spec);
  const auto backward = apply(psi_dag_y, apply(psi_x, vac, spec).state, spec);
  return forward.state.vacuum_amplitude() + backward.state.vacuum_amplitude();
}

complex confirmation_inner(const ModeSpec& spec, std::size_t mode, const FockState& state) {
  if (mode >= spec.size()) throw std::out_of_range("mode outside the mode set");
  return apply(b(mode), state, spec).state.vacuum_amplitude();
}

namespace {
ModeOperator antiparticle_creation(const ModeSpec& spec, std::size_t mode, double t) {
  const double w = spec.modes.at(mode).frequency;
  return ModeOperator::ladder(Sector::Antiparticle, mode, true, std::polar(1.0, w * t), -w);
}
}  // namespace

double negative_frequency_residual(const ModeSpec& spec, std::size_t mode, double t) {
  const double w = spec.modes.at(mode).frequency;
  const FockSpace space(spec);
  const ModeOperator creation = antiparticle_creation(spec, mode, t);
  const SparseMatrix lhs = kI * to_matrix(creation.time_derivative(), space);
  const SparseMatrix rhs = -w * to_matrix(creation, space);
  return max_abs_entry(lhs - rhs);
}

double heisenberg_equation_residual(const ModeSpec& spec, std::size_t mode, double t) {
  const FockSpace space(spec);
  const ModeOperator creation = antiparticle_creation(spec, mode, t);
  const SparseMatrix h = to_matrix(hamiltonian(spec), space);
  const SparseMatrix op = to_matrix(creation, space);
  const SparseMatrix derivative = to_matrix(creation.time_derivative(), space);
  const SparseMatrix commutator = h * op - op * h;
  return max_abs_entry(derivative - kI * commutator);
}

AntiparticleEnergy antiparticle_energy(const ModeSpec& spec, std::size_t mode) {
  const FockSpace space(spec);
  const double w = spec.modes.at(mode).frequency;
  const FockState kbar = apply(b_dag(mode), vacuum(spec), spec).state;
  const Eigen::VectorXcd v = to_vector(kbar, space);
  const Eigen::VectorXcd hv = to_matrix(hamiltonian(spec), space) * v;
  const complex expectation = v.dot(hv);  // conjugates v
  return {expectation.real(), (hv - w * v).cwiseAbs().maxCoeff()};
}

MomentumSignCheck momentum_sign_check(const ModeSpec& spec, std::size_t mode, double t) {
  const FockSpace space(spec);
  const double w = spec.modes.at(mode).frequency;
  // Retarded solution and the advanced solution through the same value at t.
  const complex value = std::polar(1.0, -w * t);
  const auto retarded = ModeOperator::ladder(Sector::Particle, mode, false, value, w);
  const auto advanced = ModeOperator::ladder(Sector::Particle, mode, false, value, -w);
  MomentumSignCheck out{to_matrix(quadratures(retarded).p, space),
                        to_matrix(quadratures(advanced).p, space), 0.0};
  out.residual = max_abs_entry(out.p_adv + out.p_ret);
  return out;
}

double reinterpretation_residual(const ModeSpec& spec, double t, double x) {
  if (!spec.negation_closed())
    throw std::invalid_argument(
        "reinterpretation needs a mode set closed under k -> -k; relabelling is impossible");
  const FockSpace space(spec);
  return max_abs_entry(to_matrix(field_before_relabeling(spec, t, x), space) -
                       to_matrix(field(spec, t, x), space));
}

double translation_generator_residual(const ModeSpec& spec, double t, double x, double dx) {
  if (!(dx > 0.0)) throw ValidationError("dx", "must be positive");
  const FockSpace space(spec);
  const SparseMatrix p = to_matrix(total_momentum(spec), space);
  const SparseMatrix psi = to_matrix(field(spec, t, x), space);
  const SparseMatrix ahead = to_matrix(field(spec, t, x + dx), space);
  const SparseMatrix behind = to_matrix(field(spec, t, x - dx), space);
  const SparseMatrix residual =
      SparseMatrix(psi * p - p * psi) + (kI / (2.0 * dx)) * SparseMatrix(ahead - behind);
  return max_abs_entry(residual);
}

double canonical_commutator_residual(const ModeSpec& spec) {
  const FockSpace space(spec);
  std::vector<Ladder> ladders;
  for (auto sector : {Sector::Particle, Sector::Antiparticle})
    for (std::size_t i = 0; i < spec.size(); ++i)
      for (bool dagger : {false, true}) ladders.push_back({sector, i, dagger});

  std::vector<SparseMatrix> matrices;
  for (const auto& l : ladders)
    matrices.push_back(to_matrix(ModeOperator::ladder(l.sector, l.mode, l.dagger), space));
  const SparseMatrix id = identity_matrix(space.dimension());

  double worst = 0.0;
  for (std::size_t i = 0; i < ladders.size(); ++i) {
    for (std::size_t j = 0; j < ladders.size(); ++j) {
      SparseMatrix c = matrices[i] * matrices[j] - matrices[j] * matrices[i];
      const auto& x = ladders[i];
      const auto& y = ladders[j];
      if (x.sector == y.sector && x.mode == y.mode && x.dagger != y.dagger)
        c -= (x.dagger ? -1.0 : 1.0) * id;
      worst = std::max(worst, restricted_max(c, space));
    }
  }
  return worst;
}

}  // namespace dalab::fock

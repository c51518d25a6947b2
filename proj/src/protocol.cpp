#include "otoc/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace otoc {

namespace {

constexpr cplx kI{0.0, 1.0};

// Branch kernels. Each provides the state type, projective collapse
// (returning the unnormalized post-measurement state and its probability),
// normalization, evolution by +t or -t, and rotations.

struct DenseKernel {
  using State = CMatrix;

  CMatrix u;      // exp(-iHt)
  CMatrix u_adj;  // exp(+iHt)

  DenseKernel(const Propagator& prop, double t)
      : u(prop.unitary(t)), u_adj(u.adjoint()) {}

  // Pi rho Pi = (rho + s sigma rho + s rho sigma + sigma rho sigma) / 4
  static std::pair<State, double> project(const State& rho, int bit,
                                          PauliAxis axis, int sign) {
    CMatrix sr = pauli::apply_left(bit, axis, rho);
    CMatrix rs = pauli::apply_right(bit, axis, rho);
    CMatrix srs = pauli::apply_right(bit, axis, sr);
    double s = sign;
    CMatrix out = 0.25 * (rho + s * sr + s * rs + srs);
    double p = out.trace().real();
    return {std::move(out), p};
  }

  static double final_probability(const State& rho, int bit, PauliAxis axis,
                                  int sign) {
    double mean = pauli::trace_with(bit, axis, rho).real();
    return 0.5 * (1.0 + sign * mean);
  }

  static State normalize(const State& rho, double p) { return rho / p; }

  State forward(const State& rho) const { return u * rho * u_adj; }
  State backward(const State& rho) const { return u_adj * rho * u; }

  // R rho R^dagger with R = c - i s sigma
  static State rotate(const State& rho, int bit, PauliAxis axis,
                      double theta) {
    double c = std::cos(theta / 2.0);
    double s = std::sin(theta / 2.0);
    CMatrix sr = pauli::apply_left(bit, axis, rho);
    CMatrix rs = pauli::apply_right(bit, axis, rho);
    CMatrix srs = pauli::apply_right(bit, axis, sr);
    return (c * c) * rho + (kI * c * s) * rs - (kI * c * s) * sr +
           (s * s) * srs;
  }

  static double expectation(const State& rho, int bit, PauliAxis axis) {
    return pauli::trace_with(bit, axis, rho).real();
  }
};

struct VectorKernel {
  using State = CVector;

  const Propagator& prop;
  double t;

  VectorKernel(const Propagator& p, double time) : prop(p), t(time) {}

  static std::pair<State, double> project(const State& psi, int bit,
                                          PauliAxis axis, int sign) {
    CVector out = 0.5 * (psi + double(sign) * pauli::apply(bit, axis, psi));
    double p = out.squaredNorm();
    return {std::move(out), p};
  }

  static double final_probability(const State& psi, int bit, PauliAxis axis,
                                  int sign) {
    return 0.5 * (1.0 + sign * pauli::expectation(bit, axis, psi));
  }

  static State normalize(const State& psi, double p) {
    return psi / std::sqrt(p);
  }

  State forward(const State& psi) const { return prop.apply(t, psi); }
  State backward(const State& psi) const { return prop.apply(-t, psi); }

  static State rotate(const State& psi, int bit, PauliAxis axis,
                      double theta) {
    return std::cos(theta / 2.0) * psi -
           (kI * std::sin(theta / 2.0)) * pauli::apply(bit, axis, psi);
  }

  static double expectation(const State& psi, int bit, PauliAxis axis) {
    return pauli::expectation(bit, axis, psi);
  }
};

// Walks the 16-leaf measurement tree. Conditional states are normalized at
// every level; a conditional probability below kBranchCutoff zeroes all
// sequences beneath it without forming the conditional state.
template <class Kernel>
ProbabilityTable measurement_tree(const Kernel& k,
                                  const typename Kernel::State& initial,
                                  const OtocSpec& spec) {
  const int bj = spec.j.bit();
  const int bi = spec.i.bit();
  std::array<double, OutcomeSequence::kCount> joint{};

  for (int o1 : {+1, -1}) {
    auto [s1, p1] = Kernel::project(initial, bj, spec.b, o1);
    if (p1 < kBranchCutoff) continue;
    s1 = k.forward(Kernel::normalize(s1, p1));
    for (int o2 : {+1, -1}) {
      auto [s2, p2] = Kernel::project(s1, bi, spec.a, o2);
      if (p2 < kBranchCutoff) continue;
      s2 = k.backward(Kernel::normalize(s2, p2));
      for (int o3 : {+1, -1}) {
        auto [s3, p3] = Kernel::project(s2, bj, spec.b, o3);
        if (p3 < kBranchCutoff) continue;
        s3 = k.forward(Kernel::normalize(s3, p3));
        for (int o4 : {+1, -1}) {
          double p4 = Kernel::final_probability(s3, bi, spec.a, o4);
          joint[OutcomeSequence({o1, o2, o3, o4}).index()] = p1 * p2 * p3 * p4;
        }
      }
    }
  }
  return ProbabilityTable(joint);
}

template <class Kernel>
double rotation_sequence(const Kernel& k, typename Kernel::State s,
                         const OtocSpec& spec, const RotationAngles& angles) {
  const int bj = spec.j.bit();
  const int bi = spec.i.bit();
  s = Kernel::rotate(s, bj, spec.b, angles.theta1);
  s = k.forward(s);
  s = Kernel::rotate(s, bi, spec.a, angles.theta2);
  s = k.backward(s);
  s = Kernel::rotate(s, bj, spec.b, angles.theta3);
  s = k.forward(s);
  return Kernel::expectation(s, bi, spec.a);
}

void check_registers(int n_sites, std::size_t dim, const OtocSpec& spec,
                     const Propagator& prop) {
  if (prop.n_sites() != n_sites || prop.dim() != dim) {
    throw DimensionError("state and propagator act on different registers");
  }
  spec.check(n_sites);
}

}  // namespace

OutcomeSequence::OutcomeSequence(std::array<int, 4> outcomes)
    : outcomes_(outcomes) {
  for (int o : outcomes_) {
    if (o != 1 && o != -1) {
      throw std::invalid_argument("measurement outcomes must be +1 or -1");
    }
  }
}

OutcomeSequence OutcomeSequence::from_index(std::size_t index) {
  if (index >= kCount) throw IndexError("outcome index out of range");
  std::array<int, 4> o{};
  for (std::size_t k = 0; k < 4; ++k) o[k] = ((index >> k) & 1u) ? -1 : 1;
  return OutcomeSequence(o);
}

std::size_t OutcomeSequence::index() const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < 4; ++k) {
    if (outcomes_[k] < 0) idx |= std::size_t{1} << k;
  }
  return idx;
}

int OutcomeSequence::product() const {
  return outcomes_[0] * outcomes_[1] * outcomes_[2] * outcomes_[3];
}

ProbabilityTable::ProbabilityTable(
    std::array<double, OutcomeSequence::kCount> p)
    : p_(p) {
  double total = 0.0;
  for (double v : p_) {
    if (!(v >= -kAlgebraTol && v <= 1.0 + kAlgebraTol)) {
      throw NormalizationError("outcome probability " + std::to_string(v) +
                               " outside [0, 1]");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > kSpectralTol) {
    throw NormalizationError("outcome probabilities sum to " +
                             std::to_string(total));
  }
  for (double& v : p_) v = std::clamp(v, 0.0, 1.0);
}

RotationAngles RotationAngles::optimal() {
  constexpr double h = std::numbers::pi / 2.0;
  return {h, h, h};
}

void RotationAngles::check() const {
  if (!std::isfinite(theta1) || !std::isfinite(theta2) ||
      !std::isfinite(theta3)) {
    throw std::invalid_argument("rotation angles must be finite");
  }
}

ProbabilityTable outcome_probabilities(const DensityOperator& rho,
                                       const OtocSpec& spec,
                                       const Propagator& prop, double t) {
  check_registers(rho.n_sites(), rho.dim(), spec, prop);
  return measurement_tree(DenseKernel(prop, t), rho.matrix(), spec);
}

ProbabilityTable outcome_probabilities(const StateVector& psi,
                                       const OtocSpec& spec,
                                       const Propagator& prop, double t) {
  check_registers(psi.n_sites(), psi.dim(), spec, prop);
  return measurement_tree(VectorKernel(prop, t), psi.amplitudes(), spec);
}

double corr_from_table(const ProbabilityTable& table) {
  double corr = 0.0;
  for (std::size_t k = 0; k < OutcomeSequence::kCount; ++k) {
    corr += OutcomeSequence::from_index(k).product() * table.at(k);
  }
  return corr;
}

double re_otoc_via_protocol(const DensityOperator& rho, const OtocSpec& spec,
                            const Propagator& prop, double t) {
  return 2.0 * corr_from_table(outcome_probabilities(rho, spec, prop, t)) -
         1.0;
}

double re_otoc_via_protocol(const StateVector& psi, const OtocSpec& spec,
                            const Propagator& prop, double t) {
  return 2.0 * corr_from_table(outcome_probabilities(psi, spec, prop, t)) -
         1.0;
}

Operator rotation_operator(SiteIndex site, PauliAxis axis, double theta,
                           int n_sites) {
  Operator sigma = embed_pauli(site, axis, n_sites);
  auto d = static_cast<Eigen::Index>(sigma.dim());
  CMatrix r = std::cos(theta / 2.0) * CMatrix::Identity(d, d) -
              (kI * std::sin(theta / 2.0)) * sigma.matrix();
  return Operator(n_sites, std::move(r));
}

double rotated_expectation(const DensityOperator& rho, const OtocSpec& spec,
                           const Propagator& prop, double t,
                           const RotationAngles& angles) {
  check_registers(rho.n_sites(), rho.dim(), spec, prop);
  angles.check();
  return rotation_sequence(DenseKernel(prop, t), rho.matrix(), spec, angles);
}

double rotated_expectation(const StateVector& psi, const OtocSpec& spec,
                           const Propagator& prop, double t,
                           const RotationAngles& angles) {
  check_registers(psi.n_sites(), psi.dim(), spec, prop);
  angles.check();
  return rotation_sequence(VectorKernel(prop, t), psi.amplitudes(), spec,
                           angles);
}

double imaginary_prefactor(const RotationAngles& a) {
  return 4.0 * std::sin(a.theta2) * std::sin(a.theta1 + a.theta3 / 2.0) *
         std::sin(a.theta3 / 2.0);
}

std::array<RotationAngles, 4> angle_sets(const RotationAngles& b) {
  return {RotationAngles{-b.theta1, -b.theta2, -b.theta3},
          RotationAngles{b.theta1, b.theta2, b.theta3},
          RotationAngles{-b.theta1, b.theta2, -b.theta3},
          RotationAngles{b.theta1, -b.theta2, b.theta3}};
}

void check_prefactor(const RotationAngles& angles) {
  angles.check();
  double pref = imaginary_prefactor(angles);
  if (!(std::abs(pref) > kPrefactorGuard)) {
    throw DegenerateAngleError("rotation angles give prefactor " +
                               std::to_string(pref) +
                               "; choose non-degenerate angles");
  }
}

namespace {

template <class State>
double im_from_rotations(const State& state, const OtocSpec& spec,
                         const Propagator& prop, double t,
                         const RotationAngles& angles) {
  check_prefactor(angles);
  auto sets = angle_sets(angles);
  std::array<double, 4> e{};
  for (std::size_t k = 0; k < 4; ++k) {
    e[k] = rotated_expectation(state, spec, prop, t, sets[k]);
  }
  double combo = 0.0;
  for (std::size_t k = 0; k < 4; ++k) combo += kAngleSetSigns[k] * e[k];
  return combo / imaginary_prefactor(angles);
}

}  // namespace

double im_otoc_via_protocol(const DensityOperator& rho, const OtocSpec& spec,
                            const Propagator& prop, double t,
                            const RotationAngles& angles) {
  return im_from_rotations(rho, spec, prop, t, angles);
}

double im_otoc_via_protocol(const StateVector& psi, const OtocSpec& spec,
                            const Propagator& prop, double t,
                            const RotationAngles& angles) {
  return im_from_rotations(psi, spec, prop, t, angles);
}

}  // namespace otoc

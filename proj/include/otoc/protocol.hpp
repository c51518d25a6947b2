#pragma once

// Ancilla-free OTOC measurement protocols.
//
// Projective branch: measure sigma_j^b, evolve by +t, measure sigma_i^a,
// evolve by -t, measure sigma_j^b, evolve by +t, measure sigma_i^a. The
// signed correlation of the four outcomes, corr, satisfies
//     2 corr - 1 = Re C(t).
//
// Rotation branch: rotate j about b by theta1, evolve +t, rotate i about a by
// theta2, evolve -t, rotate j about b by theta3, evolve +t, read <sigma_i^a>.
// The signed combination of four angle sets equals
//     4 sin(theta2) sin(theta1 + theta3/2) sin(theta3/2) Im C(t).

#include <array>
#include <cstddef>

#include "otoc/otoc_core.hpp"

namespace otoc {

/// Four measurement outcomes, each +1 or -1.
class OutcomeSequence {
 public:
  static constexpr std::size_t kCount = 16;

  /// Throws std::invalid_argument unless every entry is +1 or -1.
  explicit OutcomeSequence(std::array<int, 4> outcomes);
  /// Bit k of `index` set means outcome k+1 is -1; index 0 is (++++).
  static OutcomeSequence from_index(std::size_t index);

  std::size_t index() const;
  int operator[](std::size_t k) const { return outcomes_[k]; }
  /// o1 o2 o3 o4.
  int product() const;

 private:
  std::array<int, 4> outcomes_;
};

/// Joint probabilities of all 16 outcome sequences.
class ProbabilityTable {
 public:
  /// Entries are checked against [-1e-12, 1 + 1e-12] and a sum of 1 within
  /// 1e-10, then clamped to [0, 1]. Throws NormalizationError otherwise.
  explicit ProbabilityTable(std::array<double, OutcomeSequence::kCount> p);

  double operator[](const OutcomeSequence& s) const { return p_[s.index()]; }
  double at(std::size_t index) const { return p_.at(index); }
  const std::array<double, OutcomeSequence::kCount>& values() const {
    return p_;
  }

 private:
  std::array<double, OutcomeSequence::kCount> p_;
};

struct RotationAngles {
  double theta1;
  double theta2;
  double theta3;

  /// theta1 = theta2 = theta3 = pi/2, where the prefactor equals 2.
  static RotationAngles optimal();
  /// Throws std::invalid_argument on non-finite angles.
  void check() const;
};

/// Conditional probabilities below this value end a branch with joint
/// probability zero.
inline constexpr double kBranchCutoff = 1e-14;
/// Minimum |prefactor| accepted by the imaginary-part reconstruction.
inline constexpr double kPrefactorGuard = 1e-6;

ProbabilityTable outcome_probabilities(const DensityOperator& rho,
                                       const OtocSpec& spec,
                                       const Propagator& prop, double t);
ProbabilityTable outcome_probabilities(const StateVector& psi,
                                       const OtocSpec& spec,
                                       const Propagator& prop, double t);

/// sum over sequences of o1 o2 o3 o4 P.
double corr_from_table(const ProbabilityTable& table);

/// 2 corr - 1.
double re_otoc_via_protocol(const DensityOperator& rho, const OtocSpec& spec,
                            const Propagator& prop, double t);
double re_otoc_via_protocol(const StateVector& psi, const OtocSpec& spec,
                            const Propagator& prop, double t);

/// exp(-i theta sigma_site^axis / 2).
Operator rotation_operator(SiteIndex site, PauliAxis axis, double theta,
                           int n_sites);

/// <sigma_i^a> after the rotation sequence and final forward evolution.
double rotated_expectation(const DensityOperator& rho, const OtocSpec& spec,
                           const Propagator& prop, double t,
                           const RotationAngles& angles);
double rotated_expectation(const StateVector& psi, const OtocSpec& spec,
                           const Propagator& prop, double t,
                           const RotationAngles& angles);

/// 4 sin(theta2) sin(theta1 + theta3/2) sin(theta3/2).
double imaginary_prefactor(const RotationAngles& angles);

/// The four angle sets derived from a base triple, in combination order
/// (-,-,-), (+,+,+), (-,+,-), (+,-,+).
std::array<RotationAngles, 4> angle_sets(const RotationAngles& base);
/// Signs of the four angle-set expectations in the combination.
inline constexpr std::array<int, 4> kAngleSetSigns = {+1, -1, -1, +1};

/// Throws DegenerateAngleError if |prefactor| <= kPrefactorGuard.
void check_prefactor(const RotationAngles& angles);

double im_otoc_via_protocol(const DensityOperator& rho, const OtocSpec& spec,
                            const Propagator& prop, double t,
                            const RotationAngles& angles =
                                RotationAngles::optimal());
double im_otoc_via_protocol(const StateVector& psi, const OtocSpec& spec,
                            const Propagator& prop, double t,
                            const RotationAngles& angles =
                                RotationAngles::optimal());

}  // namespace otoc

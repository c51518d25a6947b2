#pragma once

// Randomized identity suite: draws (H, rho, spec, t, angles) instances and
// checks the protocol reconstructions and the squared-commutator relation
// against otoc_direct.

#include <cstdint>

#include "otoc/protocol.hpp"
#include "otoc/sampling.hpp"

namespace otoc::verification {

struct RandomInstance {
  Hamiltonian hamiltonian;
  DensityOperator rho;
  OtocSpec spec;
  double t;
  RotationAngles angles;
};

/// Generates instances from one stream:
///  - H: Hermitian, real diagonal in [-4, 4], off-diagonal real and imaginary
///    parts in [-2, 2] (max-norm <= 4);
///  - rho: 0.9 A A^dagger / Tr + 0.1 I / d with A uniform in [-1, 1]^2,
///    hence full rank;
///  - sites i != j uniform, axes cycling through all 9 pairs;
///  - t uniform in [0, t_max];
///  - angles uniform in [-pi, pi]^3, redrawn until |prefactor| > min_prefactor.
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed, double t_max = 5.0,
                             double min_prefactor = 0.1);

  RandomInstance next(int n_sites);

  CMatrix random_hermitian(int n_sites);
  DensityOperator random_density(int n_sites);

 private:
  double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.uniform(); }

  Rng rng_;
  double t_max_;
  double min_prefactor_;
  int axis_cursor_ = 0;
};

struct IdentityReport {
  int instances = 0;
  double max_residual = 0.0;
};

/// max |2 corr - 1 - Re C| over n instances with N cycling through
/// min_sites..max_sites.
IdentityReport check_real_identity(std::uint64_t seed, int n_instances,
                                   int min_sites = 2, int max_sites = 5);
/// max |Im reconstruction - Im C| over the same kind of instances.
IdentityReport check_imaginary_identity(std::uint64_t seed, int n_instances,
                                        int min_sites = 2, int max_sites = 5);
/// max |Re C - (1 - <|[W(t),V]|^2>/2)|.
IdentityReport check_commutator_relation(std::uint64_t seed, int n_instances,
                                         int min_sites = 2, int max_sites = 4);

}  // namespace otoc::verification

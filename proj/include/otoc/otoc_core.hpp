#pragma once

// Direct evaluation of the Pauli OTOC
//   C(t) = Tr[rho W(t) V W(t) V],  W = sigma_i^a, V = sigma_j^b,
// and of the squared commutator <|[W(t), V]|^2>. These are the reference
// values the measurement protocols are validated against.

#include "otoc/dynamics.hpp"

namespace otoc {

struct OtocSpec {
  SiteIndex i;
  PauliAxis a;
  SiteIndex j;
  PauliAxis b;

  /// Throws IndexError if either site lies outside the register.
  void check(int n_sites) const;
};

cplx otoc_direct(const DensityOperator& rho, const OtocSpec& spec,
                 const Propagator& prop, double t);
/// Pure-state route, O(4^N) per call instead of O(8^N).
cplx otoc_direct(const StateVector& psi, const OtocSpec& spec,
                 const Propagator& prop, double t);

/// Tr(rho [W(t),V]^dagger [W(t),V]).
double commutator_norm(const DensityOperator& rho, const OtocSpec& spec,
                       const Propagator& prop, double t);
double commutator_norm(const StateVector& psi, const OtocSpec& spec,
                       const Propagator& prop, double t);

}  // namespace otoc

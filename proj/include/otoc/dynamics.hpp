#pragma once

// Hamiltonians and exact unitary time evolution, U(t) = exp(-iHt) with
// hbar = 1 and the XY coupling constant as the energy unit. Backward
// evolution is evolution with negative t.

#include <vector>

#include "otoc/hilbert.hpp"

namespace otoc {

class Hamiltonian {
 public:
  Hamiltonian(int n_sites, CMatrix matrix);

  int n_sites() const { return n_sites_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const CMatrix& matrix() const { return matrix_; }

 private:
  int n_sites_;
  CMatrix matrix_;
};

/// coefficient * sigma_i^a sigma_j^b, i != j.
struct PairCoupling {
  SiteIndex i;
  PauliAxis a;
  SiteIndex j;
  PauliAxis b;
  double coefficient;
};

/// coefficient * sigma_site^axis.
struct LocalField {
  SiteIndex site;
  PauliAxis axis;
  double coefficient;
};

/// Sum of pair couplings, local fields and arbitrary Hermitian terms (for
/// interactions beyond two bodies). Terms are accumulated in argument order.
Hamiltonian build_custom(int n_sites, const std::vector<PairCoupling>& pairs,
                         const std::vector<LocalField>& fields = {},
                         const std::vector<Operator>& raw_terms = {});

/// Pair couplings of the open XY chain, -sum_k (XX + YY) on bonds (k, k+1).
std::vector<PairCoupling> xy_chain_couplings(int n_sites);

/// H = -sum_{k=1}^{N-1} (sigma_k^x sigma_{k+1}^x + sigma_k^y sigma_{k+1}^y).
Hamiltonian build_xy_chain(int n_sites);

/// Cached spectral decomposition H = V diag(lambda) V^dagger.
class Propagator {
 public:
  explicit Propagator(const Hamiltonian& h);

  int n_sites() const { return n_sites_; }
  std::size_t dim() const {
    return static_cast<std::size_t>(eigenvalues_.size());
  }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const CMatrix& eigenvectors() const { return eigenvectors_; }

  /// exp(-iHt) as a dense matrix.
  CMatrix unitary(double t) const;
  /// exp(-iHt) v without forming the matrix.
  CVector apply(double t, const CVector& v) const;

 private:
  int n_sites_;
  Eigen::VectorXd eigenvalues_;
  CMatrix eigenvectors_;
};

/// U(t) rho U(t)^dagger.
DensityOperator evolve(const DensityOperator& state, const Propagator& prop,
                       double t);
StateVector evolve(const StateVector& state, const Propagator& prop, double t);

/// U(t)^dagger op U(t), the Heisenberg-picture operator at time t.
Operator heisenberg(const Operator& op, const Propagator& prop, double t);

}  // namespace otoc

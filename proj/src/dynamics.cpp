#include "otoc/dynamics.hpp"

#include <cmath>
#include <string>

namespace otoc {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw DimensionError(std::string(what) + ": dimension mismatch");
}

}  // namespace

Hamiltonian::Hamiltonian(int n_sites, CMatrix matrix)
    : n_sites_(n_sites), matrix_(std::move(matrix)) {
  auto d = static_cast<Eigen::Index>(hilbert_dim(n_sites_));
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw DimensionError("Hamiltonian matrix does not match 2^n_sites");
  }
  double residual = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (residual >= kAlgebraTol) {
    throw NonHermitianError("Hamiltonian not Hermitian (residual " +
                            std::to_string(residual) + ")");
  }
}

Hamiltonian build_custom(int n_sites, const std::vector<PairCoupling>& pairs,
                         const std::vector<LocalField>& fields,
                         const std::vector<Operator>& raw_terms) {
  auto d = static_cast<Eigen::Index>(hilbert_dim(n_sites));
  CMatrix h = CMatrix::Zero(d, d);
  const CMatrix id = CMatrix::Identity(d, d);
  for (const PairCoupling& p : pairs) {
    p.i.check(n_sites);
    p.j.check(n_sites);
    if (p.i == p.j) {
      throw std::invalid_argument("pair coupling needs two distinct sites");
    }
    CMatrix term = pauli::apply_left(
        p.i.bit(), p.a, pauli::apply_left(p.j.bit(), p.b, id));
    h += p.coefficient * term;
  }
  for (const LocalField& f : fields) {
    f.site.check(n_sites);
    h += f.coefficient * pauli::apply_left(f.site.bit(), f.axis, id);
  }
  for (const Operator& term : raw_terms) {
    if (term.n_sites() != n_sites) {
      throw DimensionError("raw Hamiltonian term acts on a different register");
    }
    double residual =
        (term.matrix() - term.matrix().adjoint()).cwiseAbs().maxCoeff();
    if (residual >= kAlgebraTol) {
      throw NonHermitianError("raw Hamiltonian term not Hermitian");
    }
    h += term.matrix();
  }
  return Hamiltonian(n_sites, std::move(h));
}

std::vector<PairCoupling> xy_chain_couplings(int n_sites) {
  std::vector<PairCoupling> pairs;
  for (int k = 1; k < n_sites; ++k) {
    pairs.push_back({SiteIndex(k), PauliAxis::x, SiteIndex(k + 1),
                     PauliAxis::x, -1.0});
    pairs.push_back({SiteIndex(k), PauliAxis::y, SiteIndex(k + 1),
                     PauliAxis::y, -1.0});
  }
  return pairs;
}

Hamiltonian build_xy_chain(int n_sites) {
  if (n_sites < 2) {
    throw std::invalid_argument("XY chain needs at least two sites");
  }
  return build_custom(n_sites, xy_chain_couplings(n_sites));
}

Propagator::Propagator(const Hamiltonian& h) : n_sites_(h.n_sites()) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("Hermitian eigendecomposition failed");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

CMatrix Propagator::unitary(double t) const {
  if (t == 0.0) {
    auto d = static_cast<Eigen::Index>(dim());
    return CMatrix::Identity(d, d);
  }
  CVector phases = (eigenvalues_.cast<cplx>() * cplx(0.0, -t)).array().exp();
  return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

CVector Propagator::apply(double t, const CVector& v) const {
  require_same_dim(dim(), static_cast<std::size_t>(v.size()),
                   "Propagator::apply");
  if (t == 0.0) return v;
  CVector phases = (eigenvalues_.cast<cplx>() * cplx(0.0, -t)).array().exp();
  CVector coeffs = eigenvectors_.adjoint() * v;
  return eigenvectors_ * phases.cwiseProduct(coeffs);
}

DensityOperator evolve(const DensityOperator& state, const Propagator& prop,
                       double t) {
  require_same_dim(state.dim(), prop.dim(), "evolve");
  CMatrix u = prop.unitary(t);
  CMatrix rho = u * state.matrix() * u.adjoint();
  // Restore exact Hermiticity lost to rounding.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityOperator(state.n_sites(), std::move(rho));
}

StateVector evolve(const StateVector& state, const Propagator& prop,
                   double t) {
  require_same_dim(state.dim(), prop.dim(), "evolve");
  return StateVector(state.n_sites(), prop.apply(t, state.amplitudes()));
}

Operator heisenberg(const Operator& op, const Propagator& prop, double t) {
  require_same_dim(op.dim(), prop.dim(), "heisenberg");
  CMatrix u = prop.unitary(t);
  CMatrix m = u.adjoint() * op.matrix() * u;
  if (op.is_hermitian()) m = 0.5 * (m + m.adjoint()).eval();
  return Operator(op.n_sites(), std::move(m), op.is_hermitian());
}

}  // namespace otoc

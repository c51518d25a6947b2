#include "otoc/hilbert.hpp"

#include <cmath>
#include <string>

namespace otoc {

namespace {

constexpr cplx kI{0.0, 1.0};

void check_sites(int n_sites) {
  if (n_sites < 1 || n_sites > kMaxSites) {
    throw DimensionError("n_sites must lie in [1, " +
                         std::to_string(kMaxSites) + "], got " +
                         std::to_string(n_sites));
  }
}

void check_square(int n_sites, Eigen::Index rows, Eigen::Index cols) {
  check_sites(n_sites);
  auto d = static_cast<Eigen::Index>(hilbert_dim(n_sites));
  if (rows != d || cols != d) {
    throw DimensionError("expected a " + std::to_string(d) + "x" +
                         std::to_string(d) + " matrix for " +
                         std::to_string(n_sites) + " sites");
  }
}

bool is_down(Eigen::Index k, int bit) { return ((k >> bit) & 1) != 0; }

// Phase picked up by the row k' of sigma * v, where v is read at k' ^ mask.
cplx row_factor(PauliAxis axis, Eigen::Index row, int bit) {
  switch (axis) {
    case PauliAxis::x:
      return 1.0;
    case PauliAxis::y:
      return is_down(row, bit) ? kI : -kI;
    case PauliAxis::z:
      return is_down(row, bit) ? -1.0 : 1.0;
  }
  return 0.0;
}

// Phase of column k of m * sigma, where m is read at column k ^ mask.
cplx col_factor(PauliAxis axis, Eigen::Index col, int bit) {
  switch (axis) {
    case PauliAxis::x:
      return 1.0;
    case PauliAxis::y:
      return is_down(col, bit) ? -kI : kI;
    case PauliAxis::z:
      return is_down(col, bit) ? -1.0 : 1.0;
  }
  return 0.0;
}

Eigen::Index source_index(PauliAxis axis, Eigen::Index k, int bit) {
  return axis == PauliAxis::z ? k : (k ^ (Eigen::Index{1} << bit));
}

}  // namespace

void SiteIndex::check(int n_sites) const {
  if (value_ < 1 || value_ > n_sites) {
    throw IndexError("site " + std::to_string(value_) +
                     " outside register of " + std::to_string(n_sites) +
                     " sites");
  }
}

char axis_name(PauliAxis axis) {
  switch (axis) {
    case PauliAxis::x:
      return 'x';
    case PauliAxis::y:
      return 'y';
    case PauliAxis::z:
      return 'z';
  }
  return '?';
}

PauliAxis parse_axis(char c) {
  switch (c) {
    case 'x':
      return PauliAxis::x;
    case 'y':
      return PauliAxis::y;
    case 'z':
      return PauliAxis::z;
    default:
      throw std::invalid_argument(std::string("unknown Pauli axis '") + c +
                                  "'");
  }
}

std::size_t hilbert_dim(int n_sites) {
  check_sites(n_sites);
  return std::size_t{1} << n_sites;
}

Operator::Operator(int n_sites, CMatrix matrix, bool hermitian)
    : n_sites_(n_sites), matrix_(std::move(matrix)), hermitian_(hermitian) {
  check_square(n_sites_, matrix_.rows(), matrix_.cols());
  if (hermitian_) {
    double residual = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
    if (residual >= kAlgebraTol) {
      throw NonHermitianError("operator flagged Hermitian deviates by " +
                              std::to_string(residual));
    }
  }
}

StateVector::StateVector(int n_sites, CVector amplitudes)
    : n_sites_(n_sites), amplitudes_(std::move(amplitudes)) {
  check_sites(n_sites_);
  if (amplitudes_.size() != static_cast<Eigen::Index>(hilbert_dim(n_sites_))) {
    throw DimensionError("state vector length does not match 2^n_sites");
  }
  double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kAlgebraTol) {
    throw NormalizationError("state vector squared norm is " +
                             std::to_string(norm2));
  }
}

DensityOperator::DensityOperator(int n_sites, CMatrix matrix)
    : n_sites_(n_sites), matrix_(std::move(matrix)) {
  check_square(n_sites_, matrix_.rows(), matrix_.cols());
  double herm = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (herm >= kAlgebraTol) {
    throw NonHermitianError("density operator not Hermitian (residual " +
                            std::to_string(herm) + ")");
  }
  cplx tr = matrix_.trace();
  if (std::abs(tr - 1.0) > kAlgebraTol) {
    throw NormalizationError("density operator trace is " +
                             std::to_string(tr.real()));
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(matrix_,
                                                Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -kSpectralTol) {
    throw NormalizationError("density operator has negative eigenvalue " +
                             std::to_string(solver.eigenvalues().minCoeff()));
  }
}

DensityOperator DensityOperator::from_pure(const StateVector& psi) {
  const CVector& a = psi.amplitudes();
  return DensityOperator(psi.n_sites(), a * a.adjoint());
}

Operator embed_pauli(SiteIndex site, PauliAxis axis, int n_sites) {
  check_sites(n_sites);
  site.check(n_sites);
  auto d = static_cast<Eigen::Index>(hilbert_dim(n_sites));
  CMatrix m = pauli::apply_left(site.bit(), axis, CMatrix::Identity(d, d));
  return Operator(n_sites, std::move(m), true);
}

Operator projector(SiteIndex site, PauliAxis axis, int sign, int n_sites) {
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("projector sign must be +1 or -1");
  }
  Operator sigma = embed_pauli(site, axis, n_sites);
  auto d = static_cast<Eigen::Index>(sigma.dim());
  CMatrix m = 0.5 * (CMatrix::Identity(d, d) +
                     static_cast<double>(sign) * sigma.matrix());
  return Operator(n_sites, std::move(m), true);
}

StateVector all_up_vector(int n_sites) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(hilbert_dim(n_sites)));
  v(0) = 1.0;
  return StateVector(n_sites, std::move(v));
}

StateVector neel_vector(int n_sites) {
  CVector v = CVector::Zero(static_cast<Eigen::Index>(hilbert_dim(n_sites)));
  Eigen::Index k = 0;
  for (int bit = 1; bit < n_sites; bit += 2) k |= Eigen::Index{1} << bit;
  v(k) = 1.0;
  return StateVector(n_sites, std::move(v));
}

DensityOperator all_up_state(int n_sites) {
  return DensityOperator::from_pure(all_up_vector(n_sites));
}

DensityOperator maximally_mixed_state(int n_sites) {
  auto d = static_cast<Eigen::Index>(hilbert_dim(n_sites));
  return DensityOperator(n_sites, CMatrix::Identity(d, d) / double(d));
}

cplx expectation(const DensityOperator& state, const Operator& obs) {
  if (state.dim() != obs.dim()) {
    throw DimensionError("state and observable dimensions differ");
  }
  // Tr(A B) = sum_ij A_ij B_ji
  return state.matrix().cwiseProduct(obs.matrix().transpose()).sum();
}

cplx expectation(const StateVector& state, const Operator& obs) {
  if (state.dim() != obs.dim()) {
    throw DimensionError("state and observable dimensions differ");
  }
  return state.amplitudes().dot(obs.matrix() * state.amplitudes());
}

namespace pauli {

CVector apply(int bit, PauliAxis axis, const CVector& v) {
  CVector out(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    out(k) = row_factor(axis, k, bit) * v(source_index(axis, k, bit));
  }
  return out;
}

CMatrix apply_left(int bit, PauliAxis axis, const CMatrix& m) {
  CMatrix out(m.rows(), m.cols());
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    out.row(k) = row_factor(axis, k, bit) * m.row(source_index(axis, k, bit));
  }
  return out;
}

CMatrix apply_right(int bit, PauliAxis axis, const CMatrix& m) {
  CMatrix out(m.rows(), m.cols());
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    out.col(k) = col_factor(axis, k, bit) * m.col(source_index(axis, k, bit));
  }
  return out;
}

double expectation(int bit, PauliAxis axis, const CVector& v) {
  cplx acc = 0.0;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    acc += std::conj(v(k)) * row_factor(axis, k, bit) *
           v(source_index(axis, k, bit));
  }
  return acc.real();
}

cplx trace_with(int bit, PauliAxis axis, const CMatrix& m) {
  cplx acc = 0.0;
  for (Eigen::Index k = 0; k < m.rows(); ++k) {
    acc += m(k, source_index(axis, k, bit)) * col_factor(axis, k, bit);
  }
  return acc;
}

}  // namespace pauli

}  // namespace otoc

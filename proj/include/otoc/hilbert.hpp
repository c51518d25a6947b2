#pragma once

// N-qubit Hilbert-space primitives.
//
// Basis convention (used everywhere in this library): computational basis
// states are indexed by bitstrings, site 1 maps to the least significant bit,
// and spin up |↑> is bit value 0. For N = 2 the basis order is therefore
// |↑↑>, |↓↑>, |↑↓>, |↓↓> where the first arrow is site 1.

#include <complex>
#include <cstddef>
#include <cstdint>

#include <Eigen/Dense>

#include "otoc/errors.hpp"

namespace otoc {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr int kMaxSites = 12;

// Tolerances shared across modules.
inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kSpectralTol = 1e-10;

/// 1-based site label.
class SiteIndex {
 public:
  constexpr explicit SiteIndex(int value) : value_(value) {}
  constexpr int value() const { return value_; }
  constexpr int bit() const { return value_ - 1; }
  /// Throws IndexError unless 1 <= value <= n_sites.
  void check(int n_sites) const;
  friend constexpr bool operator==(SiteIndex, SiteIndex) = default;

 private:
  int value_;
};

enum class PauliAxis { x, y, z };

inline constexpr PauliAxis kAllAxes[] = {PauliAxis::x, PauliAxis::y,
                                         PauliAxis::z};

char axis_name(PauliAxis axis);
/// Parses "x", "y" or "z".
PauliAxis parse_axis(char c);

std::size_t hilbert_dim(int n_sites);

/// Dense operator on the 2^N-dimensional register. If constructed with
/// `hermitian = true` the claim is checked.
class Operator {
 public:
  Operator(int n_sites, CMatrix matrix, bool hermitian = false);

  int n_sites() const { return n_sites_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const CMatrix& matrix() const { return matrix_; }
  bool is_hermitian() const { return hermitian_; }

 private:
  int n_sites_;
  CMatrix matrix_;
  bool hermitian_;
};

/// Pure state; normalized to 1e-12.
class StateVector {
 public:
  StateVector(int n_sites, CVector amplitudes);

  int n_sites() const { return n_sites_; }
  std::size_t dim() const {
    return static_cast<std::size_t>(amplitudes_.size());
  }
  const CVector& amplitudes() const { return amplitudes_; }

 private:
  int n_sites_;
  CVector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite operator. All three
/// invariants are checked on construction.
class DensityOperator {
 public:
  DensityOperator(int n_sites, CMatrix matrix);
  static DensityOperator from_pure(const StateVector& psi);

  int n_sites() const { return n_sites_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const CMatrix& matrix() const { return matrix_; }

 private:
  int n_sites_;
  CMatrix matrix_;
};

/// sigma^axis at `site`, identity elsewhere.
Operator embed_pauli(SiteIndex site, PauliAxis axis, int n_sites);

/// (I + sign * sigma_site^axis) / 2, the projector onto the sign-eigenspace.
Operator projector(SiteIndex site, PauliAxis axis, int sign, int n_sites);

/// |↑…↑><↑…↑|.
DensityOperator all_up_state(int n_sites);
StateVector all_up_vector(int n_sites);
/// Alternating ↑↓↑… product state, site 1 up.
StateVector neel_vector(int n_sites);
DensityOperator maximally_mixed_state(int n_sites);

/// Tr(rho * obs).
cplx expectation(const DensityOperator& state, const Operator& obs);
/// <psi|obs|psi>.
cplx expectation(const StateVector& state, const Operator& obs);

// Matrix-free Pauli action on the computational basis. These are the
// kernels behind embed_pauli and the protocol branches; `bit` is the
// zero-based bit of the site.
namespace pauli {

/// Returns sigma * v.
CVector apply(int bit, PauliAxis axis, const CVector& v);
/// Returns sigma * m.
CMatrix apply_left(int bit, PauliAxis axis, const CMatrix& m);
/// Returns m * sigma.
CMatrix apply_right(int bit, PauliAxis axis, const CMatrix& m);
/// <v|sigma|v>, real since sigma is Hermitian.
double expectation(int bit, PauliAxis axis, const CVector& v);
/// Tr(m * sigma).
cplx trace_with(int bit, PauliAxis axis, const CMatrix& m);

}  // namespace pauli

}  // namespace otoc

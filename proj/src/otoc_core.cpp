#include "otoc/otoc_core.hpp"

namespace otoc {

namespace {

void check_inputs(int n_sites, std::size_t dim, const OtocSpec& spec,
                  const Propagator& prop) {
  if (prop.n_sites() != n_sites || prop.dim() != dim) {
    throw DimensionError("state and propagator act on different registers");
  }
  spec.check(n_sites);
}

// W(t) x = U^dagger W U x
CVector apply_heisenberg_pauli(const OtocSpec& spec, const Propagator& prop,
                               double t, const CVector& x) {
  CVector y = prop.apply(t, x);
  y = pauli::apply(spec.i.bit(), spec.a, y);
  return prop.apply(-t, y);
}

}  // namespace

void OtocSpec::check(int n_sites) const {
  i.check(n_sites);
  j.check(n_sites);
}

cplx otoc_direct(const DensityOperator& rho, const OtocSpec& spec,
                 const Propagator& prop, double t) {
  check_inputs(rho.n_sites(), rho.dim(), spec, prop);
  const int n = rho.n_sites();
  Operator wt = heisenberg(embed_pauli(spec.i, spec.a, n), prop, t);
  // M = W(t) V; C = Tr(rho M M)
  CMatrix m = pauli::apply_right(spec.j.bit(), spec.b, wt.matrix());
  CMatrix rho_m = rho.matrix() * m;
  return rho_m.cwiseProduct(m.transpose()).sum();
}

cplx otoc_direct(const StateVector& psi, const OtocSpec& spec,
                 const Propagator& prop, double t) {
  check_inputs(psi.n_sites(), psi.dim(), spec, prop);
  const CVector& v = psi.amplitudes();
  CVector x = pauli::apply(spec.j.bit(), spec.b, v);
  x = apply_heisenberg_pauli(spec, prop, t, x);
  x = pauli::apply(spec.j.bit(), spec.b, x);
  x = apply_heisenberg_pauli(spec, prop, t, x);
  return v.dot(x);
}

double commutator_norm(const DensityOperator& rho, const OtocSpec& spec,
                       const Propagator& prop, double t) {
  check_inputs(rho.n_sites(), rho.dim(), spec, prop);
  const int n = rho.n_sites();
  Operator wt = heisenberg(embed_pauli(spec.i, spec.a, n), prop, t);
  CMatrix k = pauli::apply_right(spec.j.bit(), spec.b, wt.matrix()) -
              pauli::apply_left(spec.j.bit(), spec.b, wt.matrix());
  CMatrix kk = k.adjoint() * k;
  return rho.matrix().cwiseProduct(kk.transpose()).sum().real();
}

double commutator_norm(const StateVector& psi, const OtocSpec& spec,
                       const Propagator& prop, double t) {
  check_inputs(psi.n_sites(), psi.dim(), spec, prop);
  const CVector& v = psi.amplitudes();
  CVector wv = apply_heisenberg_pauli(
      spec, prop, t, pauli::apply(spec.j.bit(), spec.b, v));
  CVector vw = pauli::apply(spec.j.bit(), spec.b,
                            apply_heisenberg_pauli(spec, prop, t, v));
  return (wv - vw).squaredNorm();
}

}  // namespace otoc

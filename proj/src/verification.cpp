#include "otoc/verification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace otoc::verification {

InstanceGenerator::InstanceGenerator(std::uint64_t seed, double t_max,
                                     double min_prefactor)
    : rng_(seed, 0), t_max_(t_max), min_prefactor_(min_prefactor) {}

CMatrix InstanceGenerator::random_hermitian(int n_sites) {
  auto d = static_cast<Eigen::Index>(hilbert_dim(n_sites));
  CMatrix h(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    h(r, r) = uniform(-4.0, 4.0);
    for (Eigen::Index c = r + 1; c < d; ++c) {
      h(r, c) = cplx(uniform(-2.0, 2.0), uniform(-2.0, 2.0));
      h(c, r) = std::conj(h(r, c));
    }
  }
  return h;
}

DensityOperator InstanceGenerator::random_density(int n_sites) {
  auto d = static_cast<Eigen::Index>(hilbert_dim(n_sites));
  CMatrix a(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      a(r, c) = cplx(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
    }
  }
  CMatrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  rho = 0.9 * rho + (0.1 / static_cast<double>(d)) * CMatrix::Identity(d, d);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityOperator(n_sites, std::move(rho));
}

RandomInstance InstanceGenerator::next(int n_sites) {
  if (n_sites < 2) throw std::invalid_argument("instances need >= 2 sites");
  Hamiltonian h(n_sites, random_hermitian(n_sites));
  DensityOperator rho = random_density(n_sites);

  int i = 1 + static_cast<int>(rng_.uniform() * n_sites);
  int j = 1 + static_cast<int>(rng_.uniform() * (n_sites - 1));
  if (j >= i) ++j;
  PauliAxis a = kAllAxes[axis_cursor_ / 3];
  PauliAxis b = kAllAxes[axis_cursor_ % 3];
  axis_cursor_ = (axis_cursor_ + 1) % 9;

  double t = uniform(0.0, t_max_);
  RotationAngles angles{};
  do {
    angles = {uniform(-std::numbers::pi, std::numbers::pi),
              uniform(-std::numbers::pi, std::numbers::pi),
              uniform(-std::numbers::pi, std::numbers::pi)};
  } while (!(std::abs(imaginary_prefactor(angles)) > min_prefactor_));

  return {std::move(h), std::move(rho),
          OtocSpec{SiteIndex(i), a, SiteIndex(j), b}, t, angles};
}

namespace {

template <class Residual>
IdentityReport run(std::uint64_t seed, int n_instances, int min_sites,
                   int max_sites, Residual residual) {
  InstanceGenerator gen(seed);
  IdentityReport report;
  const int span = max_sites - min_sites + 1;
  for (int k = 0; k < n_instances; ++k) {
    RandomInstance inst = gen.next(min_sites + k % span);
    Propagator prop(inst.hamiltonian);
    report.max_residual = std::max(report.max_residual, residual(inst, prop));
    ++report.instances;
  }
  return report;
}

}  // namespace

IdentityReport check_real_identity(std::uint64_t seed, int n_instances,
                                   int min_sites, int max_sites) {
  return run(seed, n_instances, min_sites, max_sites,
             [](const RandomInstance& x, const Propagator& prop) {
               double re = otoc_direct(x.rho, x.spec, prop, x.t).real();
               return std::abs(re_otoc_via_protocol(x.rho, x.spec, prop, x.t) -
                               re);
             });
}

IdentityReport check_imaginary_identity(std::uint64_t seed, int n_instances,
                                        int min_sites, int max_sites) {
  return run(seed, n_instances, min_sites, max_sites,
             [](const RandomInstance& x, const Propagator& prop) {
               double im = otoc_direct(x.rho, x.spec, prop, x.t).imag();
               return std::abs(
                   im_otoc_via_protocol(x.rho, x.spec, prop, x.t, x.angles) -
                   im);
             });
}

IdentityReport check_commutator_relation(std::uint64_t seed, int n_instances,
                                         int min_sites, int max_sites) {
  return run(seed, n_instances, min_sites, max_sites,
             [](const RandomInstance& x, const Propagator& prop) {
               double re = otoc_direct(x.rho, x.spec, prop, x.t).real();
               double k2 = commutator_norm(x.rho, x.spec, prop, x.t);
               return std::abs(re - (1.0 - 0.5 * k2));
             });
}

}  // namespace otoc::verification

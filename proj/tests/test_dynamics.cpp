#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "otoc/dynamics.hpp"
#include "otoc/verification.hpp"

namespace otoc {
namespace {

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

TEST(Dynamics, XyChainTwoSites) {
  Hamiltonian h = build_xy_chain(2);
  CMatrix expected = CMatrix::Zero(4, 4);
  // |up,down> and |down,up> are basis indices 2 and 1.
  expected(1, 2) = -2.0;
  expected(2, 1) = -2.0;
  EXPECT_LT(max_abs(h.matrix() - expected), 1e-15);
}

TEST(Dynamics, XyChainMatchesOracle) {
  for (int n = 2; n <= 6; ++n) {
    EXPECT_LT(max_abs(build_xy_chain(n).matrix() - oracle::xy_chain(n)),
              1e-14)
        << "n=" << n;
  }
}

TEST(Dynamics, XyChainAnnihilatesAllUp) {
  for (int n = 2; n <= 6; ++n) {
    CVector out = build_xy_chain(n).matrix() * all_up_vector(n).amplitudes();
    EXPECT_LT(out.cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Dynamics, XyChainConservesMagnetization) {
  const int n = 5;
  CMatrix h = build_xy_chain(n).matrix();
  CMatrix mz = CMatrix::Zero(32, 32);
  for (int k = 1; k <= n; ++k) {
    mz += embed_pauli(SiteIndex(k), PauliAxis::z, n).matrix();
  }
  EXPECT_LT(max_abs(h * mz - mz * h), 1e-13);
}

TEST(Dynamics, XyChainRejectsSingleSite) {
  EXPECT_THROW(build_xy_chain(1), std::invalid_argument);
}

TEST(Dynamics, CustomEmptyIsZero) {
  Hamiltonian h = build_custom(3, {});
  EXPECT_EQ(h.matrix(), CMatrix::Zero(8, 8));
}

TEST(Dynamics, CustomReproducesXyChain) {
  for (int n = 2; n <= 5; ++n) {
    EXPECT_EQ(build_custom(n, xy_chain_couplings(n)).matrix(),
              build_xy_chain(n).matrix());
  }
}

TEST(Dynamics, CustomRandomTermsHermitian) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_int_distribution<int> site(1, 4);
  std::uniform_int_distribution<int> axis(0, 2);
  std::vector<PairCoupling> pairs;
  std::vector<LocalField> fields;
  for (int k = 0; k < 20; ++k) {
    int i = site(gen);
    int j = site(gen);
    if (i == j) continue;
    pairs.push_back({SiteIndex(i), kAllAxes[axis(gen)], SiteIndex(j),
                     kAllAxes[axis(gen)], coef(gen)});
    fields.push_back({SiteIndex(site(gen)), kAllAxes[axis(gen)], coef(gen)});
  }
  verification::InstanceGenerator rng(3);
  CMatrix two_site = rng.random_hermitian(4);
  Hamiltonian h = build_custom(4, pairs, fields, {Operator(4, two_site)});
  EXPECT_LT(max_abs(h.matrix() - h.matrix().adjoint()), 1e-12);
}

TEST(Dynamics, CustomErrors) {
  EXPECT_THROW(build_custom(3, {{SiteIndex(1), PauliAxis::x, SiteIndex(4),
                                 PauliAxis::x, 1.0}}),
               IndexError);
  EXPECT_THROW(build_custom(3, {{SiteIndex(2), PauliAxis::x, SiteIndex(2),
                                 PauliAxis::y, 1.0}}),
               std::invalid_argument);
  CMatrix raw = CMatrix::Zero(4, 4);
  raw(0, 1) = 1.0;
  EXPECT_THROW(build_custom(2, {}, {}, {Operator(2, raw)}), NonHermitianError);
  EXPECT_THROW(build_custom(2, {}, {}, {Operator(3, CMatrix::Zero(8, 8))}),
               DimensionError);
  EXPECT_THROW(Hamiltonian(2, raw), NonHermitianError);
}

TEST(Dynamics, PropagatorReconstruction) {
  verification::InstanceGenerator gen(5);
  for (int n = 1; n <= 5; ++n) {
    Hamiltonian h(n, gen.random_hermitian(n));
    Propagator prop(h);
    const CMatrix& v = prop.eigenvectors();
    CMatrix lambda = prop.eigenvalues().cast<cplx>().asDiagonal();
    EXPECT_LT(max_abs(v * lambda * v.adjoint() - h.matrix()), 1e-10);
    auto d = static_cast<Eigen::Index>(prop.dim());
    EXPECT_LT(max_abs(v.adjoint() * v - CMatrix::Identity(d, d)), 1e-10);
  }
}

TEST(Dynamics, UnitaryMatchesMatrixExponential) {
  verification::InstanceGenerator gen(8);
  Hamiltonian h(3, gen.random_hermitian(3));
  Propagator prop(h);
  for (double t : {-2.3, 0.0, 0.7, 4.1}) {
    EXPECT_LT(max_abs(prop.unitary(t) - oracle::propagator(h.matrix(), t)),
              1e-10)
        << "t=" << t;
  }
}

TEST(Dynamics, ForwardBackwardIsIdentity50RandomTimes) {
  Propagator prop(build_xy_chain(5));
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> time(-10.0, 10.0);
  CMatrix id = CMatrix::Identity(32, 32);
  for (int k = 0; k < 50; ++k) {
    double t = time(gen);
    EXPECT_LT(max_abs(prop.unitary(t) * prop.unitary(-t) - id), 1e-10)
        << "t=" << t;
  }
}

TEST(Dynamics, EvolveExamples) {
  verification::InstanceGenerator gen(9);
  const int n = 3;
  Propagator prop(Hamiltonian(n, gen.random_hermitian(n)));
  DensityOperator rho = gen.random_density(n);

  EXPECT_LT(max_abs(evolve(rho, prop, 0.0).matrix() - rho.matrix()), 1e-12);
  DensityOperator back = evolve(evolve(rho, prop, 1.7), prop, -1.7);
  EXPECT_LT(max_abs(back.matrix() - rho.matrix()), 1e-10);

  DensityOperator later = evolve(rho, prop, 2.5);
  EXPECT_NEAR(later.matrix().trace().real(), 1.0, 1e-12);
  EXPECT_LT(max_abs(later.matrix() - later.matrix().adjoint()), 1e-12);

  Propagator xy(build_xy_chain(4));
  for (double t : {0.3, 2.0, 9.5}) {
    EXPECT_LT(max_abs(evolve(all_up_state(4), xy, t).matrix() -
                      all_up_state(4).matrix()),
              1e-12);
  }
}

TEST(Dynamics, VectorEvolutionMatchesDensity) {
  Propagator prop(build_xy_chain(4));
  StateVector psi = neel_vector(4);
  StateVector out = evolve(psi, prop, 1.3);
  DensityOperator rho = evolve(DensityOperator::from_pure(psi), prop, 1.3);
  const CVector& a = out.amplitudes();
  EXPECT_LT(max_abs(a * a.adjoint() - rho.matrix()), 1e-12);
}

TEST(Dynamics, EnergyConservation) {
  verification::InstanceGenerator gen(10);
  const int n = 3;
  Hamiltonian h(n, gen.random_hermitian(n));
  Propagator prop(h);
  DensityOperator rho = gen.random_density(n);
  double e0 = (rho.matrix() * h.matrix()).trace().real();
  for (double t = 0.0; t <= 10.0; t += 0.5) {
    double e = (evolve(rho, prop, t).matrix() * h.matrix()).trace().real();
    EXPECT_NEAR(e, e0, 1e-10) << "t=" << t;
  }
}

TEST(Dynamics, HeisenbergExamples) {
  const int n = 4;
  Propagator prop(build_xy_chain(n));
  Operator x1 = embed_pauli(SiteIndex(1), PauliAxis::x, n);
  EXPECT_LT(max_abs(heisenberg(x1, prop, 0.0).matrix() - x1.matrix()), 1e-12);

  for (double t : {0.4, 1.9, 6.0}) {
    Operator w = heisenberg(x1, prop, t);
    EXPECT_TRUE(w.is_hermitian());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(w.matrix());
    const auto& ev = solver.eigenvalues();
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
      EXPECT_NEAR(std::abs(ev(k)), 1.0, 1e-10);
    }
    EXPECT_NEAR(ev.cwiseAbs().maxCoeff(), 1.0, 1e-10);
    EXPECT_NEAR(ev.sum(), 0.0, 1e-10);

    CMatrix u = oracle::propagator(oracle::xy_chain(n), t);
    EXPECT_LT(max_abs(w.matrix() - u.adjoint() * x1.matrix() * u), 1e-10);
  }
  EXPECT_THROW(heisenberg(embed_pauli(SiteIndex(1), PauliAxis::x, 3), prop,
                          1.0),
               DimensionError);
}

}  // namespace
}  // namespace otoc

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "otoc/otoc_core.hpp"
#include "otoc/verification.hpp"

namespace otoc {
namespace {

const OtocSpec kChainSpec{SiteIndex(2), PauliAxis::x, SiteIndex(3),
                          PauliAxis::x};

// XY chain plus fields 0.5 sigma_1^y + 0.3 sigma_4^z; breaks the symmetry
// that keeps C real for product states.
Hamiltonian tilted_chain() {
  return build_custom(4, xy_chain_couplings(4),
                      {{SiteIndex(1), PauliAxis::y, 0.5},
                       {SiteIndex(4), PauliAxis::z, 0.3}});
}

TEST(OtocCore, InitialValueIsOne) {
  Propagator prop(build_xy_chain(4));
  for (int i = 1; i <= 4; ++i) {
    for (int j = 1; j <= 4; ++j) {
      if (i == j) continue;
      for (PauliAxis a : kAllAxes) {
        for (PauliAxis b : kAllAxes) {
          OtocSpec spec{SiteIndex(i), a, SiteIndex(j), b};
          EXPECT_EQ(otoc_direct(all_up_state(4), spec, prop, 0.0), cplx(1.0));
          EXPECT_EQ(otoc_direct(neel_vector(4), spec, prop, 0.0), cplx(1.0));
        }
      }
    }
  }
}

TEST(OtocCore, ZZOnAllUpStaysOne) {
  Propagator prop(build_xy_chain(4));
  OtocSpec spec{SiteIndex(1), PauliAxis::z, SiteIndex(4), PauliAxis::z};
  for (double t : {0.1, 0.9, 3.3, 12.0}) {
    cplx c = otoc_direct(all_up_state(4), spec, prop, t);
    EXPECT_NEAR(c.real(), 1.0, 1e-12);
    EXPECT_NEAR(c.imag(), 0.0, 1e-12);
  }
}

TEST(OtocCore, FrozenXyValue) {
  // Independent Kronecker/expm evaluation: -0.187394533949537 + 0i.
  Propagator prop(build_xy_chain(4));
  cplx c = otoc_direct(all_up_state(4), kChainSpec, prop, 0.5);
  EXPECT_NEAR(c.real(), -0.187394533949537, 1e-10);
  EXPECT_NEAR(c.imag(), 0.0, 1e-10);

  cplx live = oracle::otoc(oracle::all_up(4), oracle::xy_chain(4), 2, 'x', 3,
                           'x', 0.5, 4);
  EXPECT_NEAR(std::abs(c - live), 0.0, 1e-10);
  cplx v = otoc_direct(all_up_vector(4), kChainSpec, prop, 0.5);
  EXPECT_NEAR(std::abs(c - v), 0.0, 1e-12);
}

TEST(OtocCore, FrozenComplexValue) {
  Hamiltonian h = tilted_chain();
  Propagator prop(h);
  OtocSpec spec{SiteIndex(2), PauliAxis::x, SiteIndex(3), PauliAxis::y};
  cplx c = otoc_direct(all_up_state(4), spec, prop, 0.8);
  EXPECT_NEAR(c.real(), -0.0489587451053491, 1e-10);
  EXPECT_NEAR(c.imag(), -0.053892357313311726, 1e-10);
  cplx v = otoc_direct(all_up_vector(4), spec, prop, 0.8);
  EXPECT_NEAR(std::abs(c - v), 0.0, 1e-12);
}

TEST(OtocCore, AgreesWithOracleOnRandomInstances) {
  verification::InstanceGenerator gen(77);
  for (int k = 0; k < 30; ++k) {
    int n = 2 + k % 3;
    auto inst = gen.next(n);
    Propagator prop(inst.hamiltonian);
    cplx lib = otoc_direct(inst.rho, inst.spec, prop, inst.t);
    cplx ref = oracle::otoc(inst.rho.matrix(), inst.hamiltonian.matrix(),
                            inst.spec.i.value(), axis_name(inst.spec.a),
                            inst.spec.j.value(), axis_name(inst.spec.b),
                            inst.t, n);
    EXPECT_LT(std::abs(lib - ref), 1e-10);
  }
}

TEST(OtocCore, BoundedByOne) {
  verification::InstanceGenerator gen(99);
  for (int k = 0; k < 60; ++k) {
    auto inst = gen.next(2 + k % 3);
    Propagator prop(inst.hamiltonian);
    EXPECT_LE(std::abs(otoc_direct(inst.rho, inst.spec, prop, inst.t)),
              1.0 + 1e-10);
  }
}

TEST(OtocCore, CommutatorNormExamples) {
  Propagator prop(build_xy_chain(4));
  EXPECT_EQ(commutator_norm(all_up_state(4), kChainSpec, prop, 0.0), 0.0);
  EXPECT_NEAR(commutator_norm(all_up_vector(4), kChainSpec, prop, 0.0), 0.0,
              1e-15);
  double dense = commutator_norm(all_up_state(4), kChainSpec, prop, 0.5);
  double vec = commutator_norm(all_up_vector(4), kChainSpec, prop, 0.5);
  EXPECT_NEAR(dense, vec, 1e-12);
  EXPECT_NEAR(dense, 2.0 * (1.0 + 0.187394533949537), 1e-10);
}

TEST(OtocCore, CommutatorRelationAndPositivity) {
  verification::InstanceGenerator gen(31);
  for (int k = 0; k < 100; ++k) {
    auto inst = gen.next(2 + k % 3);
    Propagator prop(inst.hamiltonian);
    double cn = commutator_norm(inst.rho, inst.spec, prop, inst.t);
    EXPECT_GE(cn, -1e-12);
    double re = otoc_direct(inst.rho, inst.spec, prop, inst.t).real();
    EXPECT_LT(std::abs(re - (1.0 - cn / 2.0)), 1e-9);
  }
}

TEST(OtocCore, DimensionChecks) {
  Propagator prop(build_xy_chain(3));
  EXPECT_THROW(otoc_direct(all_up_state(4), kChainSpec, prop, 0.1),
               DimensionError);
  OtocSpec bad{SiteIndex(1), PauliAxis::x, SiteIndex(4), PauliAxis::x};
  EXPECT_THROW(otoc_direct(all_up_state(3), bad, prop, 0.1), IndexError);
}

}  // namespace
}  // namespace otoc

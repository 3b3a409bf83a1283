#include "kreinrel/boundary.hpp"
#include "kreinrel/generators.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

namespace kreinrel {
namespace {

namespace c4 = testing::c4;
const cplx I(0, 1);

BoundaryTriple random_triple(std::uint64_t seed, Index dim, Index defect) {
  Rng rng(seed);
  InstanceSpec spec;
  spec.seed = rng.bits();
  spec.dim = dim;
  spec.p = rng.integer(0, dim);
  spec.q = dim - spec.p;
  spec.defect = defect;
  return gen_triple(gen_symmetric(spec), rng.bits());
}

TEST(ExampleTriple, ValidatesWithZeroGreenResidual) {
  const BoundaryTriple tr = c4::triple();
  EXPECT_EQ(tr.boundary_dim(), 3);
  EXPECT_LT(tr.green_residual(), 1e-12);
  EXPECT_LT(distance(tr.tplus().graph(), c4::tplus()), 1e-10);
  EXPECT_LT(distance(tr.t0().graph(), c4::t0()), 1e-10);
  EXPECT_LT(distance(tr.t1().graph(), c4::t1()), 1e-10);
}

TEST(ExampleTriple, WeylMatchesHandComputation) {
  const BoundaryTriple tr = c4::triple();
  for (cplx z : {I, cplx(1, 2), cplx(-1, 1), cplx(0.5, -1.5)}) {
    EXPECT_LT((weyl_matrix(tr, z) - c4::weyl(z)).norm(), 1e-10) << z;
  }
}

TEST(ExampleTriple, GammaFieldSpansDefectSpace) {
  const BoundaryTriple tr = c4::triple();
  const cplx z(1, 2);
  const Matrix g = gamma_field(tr, z);
  EXPECT_EQ(g.cols(), 3);
  EXPECT_LT(distance(span(g), c4::defect(z)), 1e-10);
  // Γ0 γ̂(z) = I.
  const Matrix values = tr.boundary_values(gamma_hat(tr, z));
  EXPECT_LT((values.topRows(3) - Matrix::Identity(3, 3)).norm(), 1e-10);
  EXPECT_LT((values.bottomRows(3) - c4::weyl(z)).norm(), 1e-10);
}

TEST(ExampleTriple, InverseData) {
  const InverseBoundaryData inv = inverse_boundary(c4::triple());
  EXPECT_LT(distance(inv.n.graph(), c4::n()), 1e-10);
  EXPECT_LT(distance(inv.jn, c4::jn()), 1e-10);
  EXPECT_LT((inv.g0_inv - c4::gamma0_inverse()).norm(), 1e-10);
  EXPECT_LT((inv.g1_inv - c4::gamma1_inverse()).norm(), 1e-10);
  EXPECT_LT(inv.beta.norm(), 1e-12);
}

TEST(Validate, RejectsGreenViolation) {
  Matrix g = c4::gamma();
  g(3, 2) = 2.0;
  EXPECT_THROW(validate_triple(c4::t(), g, c4::tplus_basis()), Error);
}

TEST(Validate, RejectsWrongShape) {
  EXPECT_THROW(validate_triple(c4::t(), c4::gamma().topRows(4), c4::tplus_basis()), Error);
}

TEST(GeneratedTriples, GreenWeylAndBetaShift) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Index dim = 2 + static_cast<Index>(seed % 4);
    const BoundaryTriple tr = random_triple(seed, dim, 1 + static_cast<Index>(seed % (dim - 1)));
    EXPECT_LT(tr.green_residual(), 1e-10);
    const auto grid = default_grid();
    EXPECT_LT(weyl_symmetry_check(tr, grid).max_residual, 1e-8);
    const BoundaryTriple shifted = beta_shift(tr);
    const Matrix beta = inverse_boundary(tr).beta;
    for (cplx z : grid) {
      const WeylValue a = weyl(tr, z), b = weyl(shifted, z);
      if (!a.operator_form || !b.operator_form) continue;
      EXPECT_LT((*b.operator_form - (*a.operator_form - beta)).norm(), 1e-8);
    }
  }
}

TEST(GeneratedTriples, ResolventIdentities) {
  for (std::uint64_t seed = 100; seed < 115; ++seed) {
    const BoundaryTriple tr = random_triple(seed, 4, 2);
    const ResolventIdentityReport r = resolvent_identities_check(tr, default_grid());
    EXPECT_LT(r.gamma_shift.max_residual, 1e-8);
    EXPECT_LT(r.krein_naimark.max_residual, 1e-8);
    EXPECT_LT(r.isometry.max_residual, 1e-8);
    const InverseIdentityReport inv = inverse_identities_check(tr, default_grid());
    EXPECT_LT(inv.jn_residual, 1e-8);
    EXPECT_LT(inv.n_residual, 1e-8);
  }
}

TEST(Transforms, TransposeSwapsExtensions) {
  const BoundaryTriple tr = c4::triple();
  const BoundaryTriple t2 = transposed(tr);
  EXPECT_LT(distance(t2.t0().graph(), c4::t1()), 1e-10);
  EXPECT_LT(distance(t2.t1().graph(), c4::t0()), 1e-10);
}

TEST(Transforms, ScalingAndUnitarity) {
  const BoundaryTriple tr = c4::triple();
  for (double kappa : {2.0, 3.0}) {
    const Matrix x = scaling_matrix(3, kappa);
    EXPECT_LT(boundary_unitarity_residual(x), 1e-12);
    const BoundaryTriple scaled = transform(tr, x);
    const cplx z(0.5, 1.5);
    EXPECT_GT((weyl_matrix(scaled, z) - weyl_matrix(tr, z)).norm(), 1e-3);
  }
  Matrix bad = Matrix::Identity(6, 6);
  bad(0, 0) = 2.0;
  EXPECT_GT(boundary_unitarity_residual(bad), 1e-3);
}

TEST(Transforms, KShiftIsDetected) {
  Rng rng(41);
  InstanceSpec spec;
  spec.seed = 9;
  spec.dim = 4;
  spec.p = 2;
  spec.q = 2;
  spec.defect = 2;
  const LinearRelation t = gen_symmetric(spec);
  const NWitness w = sample_witness(t, rng);
  const BoundaryTriple a = gen_triple(t, w.n, rng);
  const Matrix k = rng.hermitian(2);
  const BoundaryTriple b = transform(a, k_shift_matrix(k));
  const KShiftReport r = k_shift_check(a, b);
  ASSERT_TRUE(r.k.has_value());
  EXPECT_LT(r.k_residual, 1e-9);
  EXPECT_LT((*r.k - k).norm(), 1e-9);
}

TEST(TTheta, ZeroAndMulGiveDistinguishedExtensions) {
  const BoundaryTriple tr = c4::triple();
  const KreinSpace l = KreinSpace::hilbert(3);
  const LinearRelation zero = from_operator(Matrix::Zero(3, 3), l);
  EXPECT_LT(distance(t_theta(tr, zero), tr.t1()), 1e-10);
  EXPECT_LT(distance(t_theta(tr, inverse(zero)), tr.t0()), 1e-10);
  EXPECT_TRUE(equal(t_theta(tr, zero_relation(l, l)), c4::t()));
}

}  // namespace
}  // namespace kreinrel

#include "kreinrel/generators.hpp"
#include "kreinrel/relation.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

namespace kreinrel {
namespace {

namespace c4 = testing::c4;
const cplx I(0, 1);

LinearRelation random_relation(Rng& rng, const KreinSpace& h, Index dim) {
  return LinearRelation(h, h, span(rng.gaussian(2 * h.dim(), dim)));
}

TEST(Parts, OfAnOperator) {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 1) = 2.0;
  const KreinSpace h = KreinSpace::hilbert(3);
  const LinearRelation t = from_operator(m, h);
  const RelationParts p = parts(t);
  EXPECT_TRUE(p.dom.is_full());
  EXPECT_EQ(p.ran.dim(), 1);
  EXPECT_EQ(p.ker.dim(), 2);
  EXPECT_TRUE(p.mul.is_zero());
  EXPECT_TRUE(is_operator(t));
  EXPECT_LT((operator_matrix(t) - m).norm(), 1e-12);
}

TEST(Parts, MultivaluedProduct) {
  const KreinSpace h = KreinSpace::hilbert(3);
  const LinearRelation t = product_relation(Subspace::coordinate(3, 0, 1), Subspace::coordinate(3, 1, 2), h, h);
  EXPECT_EQ(domain(t).dim(), 1);
  EXPECT_EQ(multivalued_part(t).dim(), 2);
  EXPECT_EQ(kernel(t).dim(), 1);
  EXPECT_FALSE(is_operator(t));
}

TEST(Adjoint, ExampleMatchesDescription) {
  const LinearRelation tp = adjoint(c4::t());
  EXPECT_LT(distance(tp.graph(), c4::tplus()), 1e-10);
  EXPECT_TRUE(is_symmetric(c4::t()));
  EXPECT_FALSE(is_selfadjoint(c4::t()));
}

TEST(Adjoint, ExampleDefectSpaces) {
  const LinearRelation tp = adjoint(c4::t());
  for (cplx z : {I, cplx(1, 2), cplx(-0.5, 3)}) {
    EXPECT_LT(distance(eigenspace(tp, z), c4::defect(z)), 1e-10) << z;
  }
}

TEST(Adjoint, InvolutionAndDimension) {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const KreinSpace h = gen_space(rng, rng.integer(0, 3), rng.integer(1, 3));
    const LinearRelation t = random_relation(rng, h, rng.integer(0, 2 * h.dim()));
    const LinearRelation tp = adjoint(t);
    EXPECT_EQ(tp.dim(), 2 * h.dim() - t.dim());
    EXPECT_TRUE(equal(adjoint(tp), t));
    // T+ = J T* J against the Hilbert adjoint.
    const LinearRelation th = adjoint(t, Metric::hilbert);
    const LinearRelation jtj = right_multiply(left_multiply(h.J(), th, h), h.J(), h);
    EXPECT_TRUE(equal(jtj, tp));
  }
}

TEST(Adjoint, HilbertAdjointOfMatrix) {
  Rng rng(22);
  const Matrix m = rng.gaussian(4, 4);
  const KreinSpace h = KreinSpace::hilbert(4);
  EXPECT_LT(distance(adjoint(from_operator(m, h), Metric::hilbert).graph(), from_operator(m.adjoint(), h).graph()),
            1e-10);
}

TEST(Inverse, SwapsParts) {
  Rng rng(23);
  const KreinSpace h = KreinSpace::hilbert(3);
  const LinearRelation t = random_relation(rng, h, 2);
  const LinearRelation ti = inverse(t);
  EXPECT_TRUE(equal(domain(ti), range(t)));
  EXPECT_TRUE(equal(kernel(ti), multivalued_part(t)));
  EXPECT_TRUE(equal(inverse(ti), t));
}

TEST(Compose, MatchesMatrixProduct) {
  Rng rng(24);
  const KreinSpace h = KreinSpace::hilbert(3);
  const Matrix a = rng.gaussian(3, 3), b = rng.gaussian(3, 3);
  const LinearRelation ab = compose(from_operator(a, h), from_operator(b, h));
  EXPECT_LT((operator_matrix(ab) - a * b).norm(), 1e-10);
}

TEST(OperatorSum, MatchesMatrixSum) {
  Rng rng(25);
  const KreinSpace h = KreinSpace::hilbert(3);
  const Matrix a = rng.gaussian(3, 3), b = rng.gaussian(3, 3);
  EXPECT_LT((operator_matrix(op_sum(from_operator(a, h), from_operator(b, h))) - (a + b)).norm(), 1e-10);
  EXPECT_LT((operator_matrix(shift(from_operator(a, h), I)) - (a - I * Matrix::Identity(3, 3))).norm(), 1e-10);
}

TEST(Eigenspace, OfDiagonalOperator) {
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = 2.0;
  d(1, 1) = 2.0;
  d(2, 2) = I;
  const LinearRelation t = from_operator(d, KreinSpace::hilbert(3));
  EXPECT_EQ(eigenspace(t, 2.0).dim(), 2);
  EXPECT_EQ(eigenspace(t, I).dim(), 1);
  EXPECT_TRUE(eigenspace(t, 1.0).is_zero());
  EXPECT_TRUE(spectral_probe(t, I).eigenvalue);
  EXPECT_TRUE(spectral_probe(t, 1.0).regular);
}

TEST(Resolvent, MatchesMatrixInverse) {
  Rng rng(26);
  const Matrix a = rng.gaussian(4, 4);
  const LinearRelation t = from_operator(a, KreinSpace::hilbert(4));
  const cplx z(0.3, 5.0);
  const Matrix expected = (a - z * Matrix::Identity(4, 4)).inverse();
  EXPECT_LT((resolvent_matrix(t, z) - expected).norm(), 1e-10);
}

TEST(Cayley, RoundTripOnHilbertSelfadjoint) {
  Rng rng(27);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = rng.integer(1, 5);
    const KreinSpace h = KreinSpace::hilbert(n);
    // Self-adjoint relation with a nontrivial multivalued part.
    const Index m = rng.integer(0, n);
    const Matrix q = rng.unitary(n);
    const Matrix s = rng.hermitian(n - m);
    Matrix g = Matrix::Zero(2 * n, n);
    g.topLeftCorner(n, n - m) = q.leftCols(n - m);
    g.block(n, 0, n, n - m) = q.leftCols(n - m) * s;
    g.bottomRightCorner(n, m) = q.rightCols(m);
    const LinearRelation t(h, h, span(g));
    ASSERT_TRUE(is_selfadjoint(t, Metric::hilbert));
    const Matrix c = cayley(t);
    EXPECT_LT((c.adjoint() * c - Matrix::Identity(n, n)).norm(), 1e-10);
    EXPECT_TRUE(equal(inverse_cayley(c), t));
    EXPECT_TRUE(equal(inverse_cayley_relation(cayley_relation(t)), t));
  }
}

TEST(HilbertForm, RoundTrip) {
  Rng rng(28);
  const KreinSpace h = gen_space(rng, 2, 2);
  const LinearRelation t = random_relation(rng, h, 3);
  EXPECT_TRUE(equal(krein_form(hilbert_form(t), h), t));
  // T symmetric in (H, J) iff JT symmetric in the Hilbert space.
  EXPECT_EQ(is_symmetric(c4::t()), is_symmetric(hilbert_form(c4::t()), Metric::hilbert));
}

}  // namespace
}  // namespace kreinrel

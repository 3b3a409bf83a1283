#include "kreinrel/generators.hpp"
#include "kreinrel/krein.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

namespace kreinrel {
namespace {

const cplx I(0, 1);

void inertia(const Matrix& g, Index& pos, Index& neg) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(g);
  pos = neg = 0;
  for (Index k = 0; k < es.eigenvalues().size(); ++k) {
    if (es.eigenvalues()(k) > 1e-9) ++pos;
    if (es.eigenvalues()(k) < -1e-9) ++neg;
  }
}

TEST(MakeKrein, ReadsSignature) {
  const KreinSpace h = testing::c4::space();
  EXPECT_EQ(h.p(), 2);
  EXPECT_EQ(h.q(), 2);
  EXPECT_EQ(h.negative_index(), 2);
  EXPECT_TRUE(KreinSpace::hilbert(3).is_hilbert());
}

TEST(MakeKrein, RejectsBadFundamentalSymmetry) {
  Matrix j = Matrix::Identity(2, 2);
  j(0, 1) = 1.0;
  EXPECT_THROW(make_krein(j), Error);
  EXPECT_THROW(make_krein(2.0 * Matrix::Identity(2, 2)), Error);
  EXPECT_THROW(make_krein(Matrix::Identity(2, 3)), Error);
  try {
    make_krein(2.0 * Matrix::Identity(2, 2));
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_involution);
  }
}

TEST(JHat, HermitianInvolutionWithSplitSignature) {
  Rng rng(1);
  for (Index p = 0; p <= 3; ++p) {
    const KreinSpace h = gen_space(rng, p, 3 - p);
    const Matrix jh = j_hat(h.J());
    EXPECT_LT((jh - jh.adjoint()).norm(), 1e-12);
    EXPECT_LT((jh * jh - Matrix::Identity(6, 6)).norm(), 1e-12);
    const DoubledKrein k = doubled(h);
    EXPECT_EQ(k.space.p(), 3);
    EXPECT_EQ(k.space.q(), 3);
  }
}

TEST(Gram, SignatureCountsMatchInertia) {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const Index p = rng.integer(0, 4), q = rng.integer(0, 4);
    if (p + q == 0) continue;
    const KreinSpace h = gen_space(rng, p, q);
    Index pos = 0, neg = 0;
    inertia(h.J(), pos, neg);
    EXPECT_EQ(pos, p);
    EXPECT_EQ(neg, q);
    const Subspace full = Subspace::full(p + q);
    const Matrix g = indefinite_gram(h, full, full);
    inertia(g, pos, neg);
    EXPECT_EQ(pos, p);
    EXPECT_EQ(neg, q);
  }
}

TEST(Classify, NeutralAndDefiniteSubspaces) {
  const KreinSpace h = testing::c4::space();
  // e1 and e2 are isotropic and mutually orthogonal for the flip J.
  EXPECT_EQ(classify(h, Subspace::coordinate(4, 0, 2)), Definiteness::neutral);
  EXPECT_EQ(classify(h, span(testing::vec({1, 0, 0, 1}))), Definiteness::positive);
  EXPECT_EQ(classify(h, span(testing::vec({1, 0, 0, -1}))), Definiteness::negative);
  EXPECT_EQ(classify(h, Subspace::full(4)), Definiteness::indefinite);
  Matrix x(4, 2);
  x << 1, 0, 0, 1, 0, 0, 0, 1;  // e1 and e2 + e4: [e2+e4, e2+e4] = 0, [e1, e4] = 1
  EXPECT_EQ(classify(h, span(x)), Definiteness::indefinite);
  Matrix y(4, 2);
  y << 1, 0, 0, 1, 0, 1, 0, 0;  // e1 and e2 + e3: isotropic plus positive
  EXPECT_EQ(classify(h, span(y)), Definiteness::mixed);
}

TEST(OrthoCompanion, DimensionAndInvolution) {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const KreinSpace h = gen_space(rng, rng.integer(1, 3), rng.integer(1, 3));
    const Subspace a = span(rng.gaussian(h.dim(), rng.integer(0, h.dim())));
    const Subspace c = ortho_companion(h, a);
    EXPECT_EQ(c.dim(), h.dim() - a.dim());
    EXPECT_LT(indefinite_gram(h, a, c).norm(), 1e-10);
    EXPECT_TRUE(equal(ortho_companion(h, c), a));
  }
}

TEST(Neutrality, HyperMaximalGraphOfSelfadjoint) {
  Rng rng(4);
  const KreinSpace h = gen_space(rng, 2, 1);
  // Graph of a J-self-adjoint operator: A = J S with S Hermitian.
  const Matrix a = h.J() * rng.hermitian(3);
  Matrix g(6, 3);
  g << Matrix::Identity(3, 3), a;
  const DoubledKrein k = doubled(h);
  const NeutralityRank r = neutrality_rank(k.space, span(g));
  EXPECT_TRUE(r.neutral);
  EXPECT_TRUE(r.maximal);
  EXPECT_TRUE(r.hyper_maximal);
  // A non-self-adjoint perturbation breaks neutrality.
  g.bottomRows(3) += I * Matrix::Identity(3, 3);
  EXPECT_FALSE(is_neutral(k.space, span(g)));
}

TEST(SpectralParts, PositiveAndNegative) {
  const KreinSpace h = testing::c4::space();
  const Subspace pos = positive_part(h), neg = negative_part(h);
  EXPECT_EQ(pos.dim(), 2);
  EXPECT_EQ(neg.dim(), 2);
  EXPECT_LT(overlap(pos, neg), 1e-12);
  EXPECT_EQ(classify(h, pos), Definiteness::positive);
  EXPECT_EQ(classify(h, neg), Definiteness::negative);
}

}  // namespace
}  // namespace kreinrel

#include "kreinrel/random.hpp"
#include "kreinrel/subspace.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace kreinrel {
namespace {

using testing::exact_complex_rank;

// Gaussian-integer matrix of rank at most r as a product of small random factors.
Matrix integer_product(Rng& rng, Index rows, Index cols, Index r) {
  auto small = [&](Index a, Index b) {
    Matrix m(a, b);
    for (Index i = 0; i < a; ++i)
      for (Index j = 0; j < b; ++j) m(i, j) = cplx(rng.integer(-3, 3), rng.integer(-2, 2));
    return m;
  };
  return small(rows, r) * small(r, cols);
}

TEST(NumericalRank, MatchesExactRankOnGaussianIntegers) {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const Index rows = rng.integer(1, 7), cols = rng.integer(1, 7);
    const Index r = rng.integer(0, std::min(rows, cols));
    const Matrix m = integer_product(rng, rows, cols, r);
    EXPECT_EQ(numerical_rank(m), exact_complex_rank(m)) << "trial " << trial;
  }
}

TEST(NumericalRank, ZeroAndEmpty) {
  EXPECT_EQ(numerical_rank(Matrix::Zero(3, 4)), 0);
  EXPECT_EQ(numerical_rank(Matrix(0, 3)), 0);
  EXPECT_EQ(numerical_rank(Matrix::Identity(5, 5) * 1e-14), 0);
}

TEST(NullSpace, SpansKernel) {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const Index rows = rng.integer(1, 6), cols = rng.integer(1, 6);
    const Matrix m = integer_product(rng, rows, cols, rng.integer(0, std::min(rows, cols)));
    const Matrix k = null_space(m);
    EXPECT_EQ(k.cols(), cols - exact_complex_rank(m));
    if (k.cols() > 0) {
      EXPECT_LT((m * k).norm(), 1e-10);
      EXPECT_LT((k.adjoint() * k - Matrix::Identity(k.cols(), k.cols())).norm(), 1e-12);
    }
  }
}

TEST(Distance, LargestPrincipalAngleOfRotatedLine) {
  for (double theta : {0.0, 1e-6, 0.3, 1.0, M_PI / 2}) {
    const Subspace a = span(testing::vec({1, 0, 0}));
    const Subspace b = span(testing::vec({std::cos(theta), std::sin(theta), 0}));
    EXPECT_NEAR(distance(a, b), theta, 1e-12) << theta;
  }
}

TEST(Distance, PlanesWithTwoAngles) {
  // span{e1, cos a e2 + sin a e3} against span{e1, e2} has angles (0, a).
  const double a = 0.7;
  Matrix x(4, 2), y(4, 2);
  x << 1, 0, 0, std::cos(a), 0, std::sin(a), 0, 0;
  y << 1, 0, 0, 1, 0, 0, 0, 0;
  EXPECT_NEAR(distance(span(x), span(y)), a, 1e-12);
  EXPECT_TRUE(std::isinf(distance(span(x), Subspace::coordinate(4, 0, 1))));
}

TEST(Lattice, DimensionFormula) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = rng.integer(1, 8);
    const Index shared = rng.integer(0, n);
    const Matrix common = rng.gaussian(n, shared);
    const Index ka = rng.integer(0, n - shared), kb = rng.integer(0, n - shared);
    Matrix a(n, shared + ka), b(n, shared + kb);
    a << common, rng.gaussian(n, ka);
    b << common, rng.gaussian(n, kb);
    const Subspace sa = span(a), sb = span(b);
    const Subspace s = sum(sa, sb), i = intersect(sa, sb);
    EXPECT_EQ(s.dim() + i.dim(), sa.dim() + sb.dim());
    EXPECT_TRUE(contains(sa, i));
    EXPECT_TRUE(contains(sb, i));
    EXPECT_TRUE(contains(s, sa));
    EXPECT_TRUE(contains(s, sb));
    EXPECT_GE(i.dim(), shared);
  }
}

TEST(Lattice, ComplementIsOrthogonal) {
  Rng rng(5);
  const Subspace a = span(rng.gaussian(6, 2));
  const Subspace c = complement(a);
  EXPECT_EQ(c.dim(), 4);
  EXPECT_LT(overlap(a, c), 1e-12);
  EXPECT_TRUE(sum(a, c).is_full());
}

TEST(ImagePreimage, ProjectorRoundTrip) {
  Rng rng(9);
  const Matrix m = rng.gaussian(5, 5);
  const Subspace a = span(rng.gaussian(5, 2));
  EXPECT_TRUE(equal(preimage(m, image(m, a)), a));
  Matrix p = Matrix::Zero(3, 3);
  p(0, 0) = 1.0;
  EXPECT_EQ(image(p, Subspace::full(3)).dim(), 1);
  EXPECT_EQ(preimage(p, Subspace::zero(3)).dim(), 2);
}

TEST(Echelon, CanonicalForEqualSubspaces) {
  Rng rng(13);
  const Matrix x = rng.gaussian(6, 3);
  const Matrix mix = rng.gaussian(3, 3);
  const Matrix e1 = echelon_basis(span(x));
  const Matrix e2 = echelon_basis(span(x * mix));
  EXPECT_LT((e1 - e2).norm(), 1e-9);
  EXPECT_TRUE(equal(span(e1), span(x)));
}

TEST(Echelon, HandExample) {
  // span{(1, 2, 0), (0, 0, 1) + (1, 2, 0)} has echelon basis (1, 2, 0), (0, 0, 1).
  Matrix x(3, 2);
  x << 1, 1, 2, 2, 0, 1;
  const Matrix e = echelon_basis(span(x));
  Matrix expected(3, 2);
  expected << 1, 0, 2, 0, 0, 1;
  EXPECT_LT((e - expected).norm(), 1e-12);
}

TEST(Tolerance, RejectsNonPositive) {
  TolerancePolicy tol;
  tol.rank_rel = -1;
  EXPECT_THROW(tol.validate(), Error);
  tol = TolerancePolicy{};
  tol.rank_rel = 1e-20;
  EXPECT_THROW(tol.validate(), Error);
  EXPECT_NO_THROW(TolerancePolicy{}.validate());
}

TEST(Grid, ClosedUnderConjugation) {
  const auto grid = default_grid();
  EXPECT_EQ(grid.size(), 10u);
  for (cplx z : grid) {
    EXPECT_FALSE(is_real(z));
    EXPECT_NE(std::find(grid.begin(), grid.end(), std::conj(z)), grid.end());
  }
}

}  // namespace
}  // namespace kreinrel

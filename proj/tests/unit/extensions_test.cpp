#include "kreinrel/extensions.hpp"
#include "kreinrel/generators.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

namespace kreinrel {
namespace {

namespace c4 = testing::c4;
const cplx I(0, 1);

LinearRelation example_n() { return LinearRelation(c4::space(), c4::space(), c4::n()); }

TEST(Defects, Example) {
  const DefectNumbers d = defect_numbers(c4::t());
  EXPECT_EQ(d.plus, 3);
  EXPECT_EQ(d.minus, 3);
  EXPECT_FALSE(has_property_p(c4::t()));
  EXPECT_TRUE(simple_check(c4::t(), default_grid()));
}

TEST(Defects, RejectsNonSymmetric) {
  const KreinSpace h = KreinSpace::hilbert(2);
  Matrix d = Matrix::Zero(2, 1), r = Matrix::Zero(2, 1);
  d(0, 0) = 1.0;
  r(0, 0) = I;
  try {
    defect_numbers(from_pairs(d, r, h, h));
    FAIL() << "expected not_symmetric";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_symmetric);
  }
}

TEST(NClass, ExampleNIsAccepted) {
  const NClassCheck c = n_class_check(c4::t(), example_n());
  EXPECT_TRUE(c.in_sigma);
  EXPECT_TRUE(c.symmetric);
  EXPECT_TRUE(c.range_plus);
  EXPECT_TRUE(c.range_minus);
  EXPECT_TRUE(c.hyper_maximal);
  EXPECT_TRUE(c.accepted()) << c.failure();
}

TEST(NClass, TooSmallNIsRejected) {
  const Subspace half = intersect(c4::n(), Subspace::coordinate(8, 4, 1));
  const NClassCheck c = n_class_check(c4::t(), LinearRelation(c4::space(), c4::space(), half));
  EXPECT_FALSE(c.accepted());
  EXPECT_FALSE(c.failure().empty());
}

TEST(Extend, ExampleGivesT0) {
  const LinearRelation t0 = extend(c4::t(), example_n());
  EXPECT_LT(distance(t0.graph(), c4::t0()), 1e-10);
  EXPECT_TRUE(is_selfadjoint(t0));
  EXPECT_LT(distance(reduce(c4::t(), t0).graph(), c4::n()), 1e-10);
  EXPECT_LT(distance(reduce_by_defect(c4::t(), t0).graph(), c4::n()), 1e-10);
}

TEST(Generators, SelfadjointWhenDefectZero) {
  InstanceSpec spec;
  spec.seed = 5;
  spec.dim = 3;
  spec.p = 1;
  spec.q = 2;
  spec.defect = 0;
  EXPECT_TRUE(is_selfadjoint(gen_symmetric(spec)));
}

TEST(Generators, DefectsAndDeterminism) {
  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    InstanceSpec spec;
    spec.seed = rng.bits();
    spec.dim = rng.integer(1, 6);
    spec.p = rng.integer(0, spec.dim);
    spec.q = spec.dim - spec.p;
    spec.defect = rng.integer(0, spec.dim);
    const LinearRelation t = gen_symmetric(spec);
    EXPECT_TRUE(is_symmetric(t));
    EXPECT_EQ(t.dim(), spec.dim - spec.defect);
    const DefectNumbers d = defect_numbers(t);
    EXPECT_EQ(d.plus, spec.defect);
    EXPECT_EQ(d.minus, spec.defect);
    const LinearRelation again = gen_symmetric(spec);
    EXPECT_EQ((t.graph().frame() - again.graph().frame()).norm(), 0.0);
  }
}

TEST(Generators, InvalidSpec) {
  InstanceSpec spec;
  spec.dim = 3;
  spec.p = 1;
  spec.q = 1;
  EXPECT_THROW(spec.validate(), Error);
}

TEST(TheoremOneOne, RoundTripsOnRandomInstances) {
  Rng rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    InstanceSpec spec;
    spec.seed = rng.bits();
    spec.dim = rng.integer(2, 6);
    spec.p = rng.integer(0, spec.dim);
    spec.q = spec.dim - spec.p;
    spec.defect = rng.integer(1, spec.dim - 1);
    const LinearRelation t = gen_symmetric(spec);
    const NWitness w = sample_witness(t, rng);
    EXPECT_TRUE(n_class_check(t, w.n).accepted());
    const LinearRelation t0 = extend(t, w.n);
    EXPECT_TRUE(is_selfadjoint(t0));
    EXPECT_LT(distance(reduce(t, t0), w.n), 1e-8);
    EXPECT_LT(distance(extend(t, reduce(t, t0)), t0), 1e-8);
    const PropNAudit a = prop_n_audit(t, w.n);
    EXPECT_EQ(a.d + a.n, a.dim_h);
    EXPECT_EQ(a.dim_n, a.d);
    EXPECT_EQ(a.dim_t, a.n);
    EXPECT_TRUE(a.passed(1e-8));
  }
}

TEST(PropN, DefectLargerThanHalfHasNonDirectM) {
  // d = 3 > dim H / 2 in the example, so the two defect spaces of 𝔗* must meet.
  const PropNAudit a = prop_n_audit(c4::t(), example_n());
  EXPECT_FALSE(a.m_direct);
  EXPECT_TRUE(a.passed(1e-8));
}

TEST(PropertyP, DomainPlusRange) {
  const KreinSpace h = KreinSpace::hilbert(2);
  Matrix d = Matrix::Zero(2, 1), r = Matrix::Zero(2, 1);
  d(0, 0) = 1.0;
  r(1, 0) = 1.0;
  const LinearRelation t = from_pairs(d, r, h, h);
  EXPECT_TRUE(has_property_p(t));
  // mul T* = (dom T)^⊥ = span{e2}, so property (P) does not make T* an operator.
  EXPECT_FALSE(is_operator(adjoint(t, Metric::hilbert)));
  EXPECT_FALSE(has_property_p(zero_relation(h, h)));
}

TEST(TheoremEx, ResolventSetContainsDelta) {
  Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    InstanceSpec spec;
    spec.seed = rng.bits();
    spec.dim = rng.integer(2, 6);
    spec.p = rng.integer(0, spec.dim);
    spec.q = spec.dim - spec.p;
    spec.defect = rng.integer(1, spec.dim / 2);
    spec.require_property_p = true;
    const LinearRelation t = gen_symmetric(spec);
    std::vector<NWitness> ws;
    for (int k = 0; k < 3; ++k) ws.push_back(sample_witness(t, rng));
    const TheoremExReport r = theorem_ex_check(t, ws, default_grid());
    EXPECT_TRUE(r.property_p);
    EXPECT_EQ(r.failures, 0);
    for (const NWitness& w : ws) EXPECT_EQ(lemma_os_check(w, default_grid()).failures, 0);
  }
}

TEST(Sigma, SplitsIntoNAndJN) {
  const LinearRelation t0 = extend(c4::t(), example_n());
  const SigmaDecomposition s = sigma_decompose(c4::t(), t0);
  EXPECT_EQ(s.sigma.dim(), 6);
  EXPECT_LT(distance(s.n_part, c4::n()), 1e-10);
  EXPECT_LT(distance(s.jn_part, c4::jn()), 1e-10);
}

}  // namespace
}  // namespace kreinrel

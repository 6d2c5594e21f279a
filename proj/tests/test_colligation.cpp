#include <gtest/gtest.h>

#include <cstring>

#include "support.hpp"

using namespace andovar;

namespace {

ComplexMatrix swap_blocks_adjoint(const Colligation& u) {
  const Eigen::Index r1 = u.r1();
  const Eigen::Index r2 = u.r2();
  ComplexMatrix out(r1 + r2, r1 + r2);
  out.topLeftCorner(r2, r2) = u.d.adjoint();
  out.topRightCorner(r2, r1) = u.b.adjoint();
  out.bottomLeftCorner(r1, r2) = u.c.adjoint();
  out.bottomRightCorner(r1, r1) = u.a.adjoint();
  return out;
}

}  // namespace

TEST(Colligation, ZeroPairGivesFlipWithIdentityW) {
  for (Eigen::Index m : {1, 2, 4}) {
    const ComplexMatrix z = ComplexMatrix::Zero(m, m);
    const Colligation u = build_colligation(ContractionPair::make(z, z));
    ComplexMatrix expected = ComplexMatrix::Zero(2 * m, 2 * m);
    expected.topRightCorner(m, m).setIdentity();
    expected.bottomLeftCorner(m, m).setIdentity();
    EXPECT_LE(oracle::norm2(u.unitary() - expected), 1e-12) << "m=" << m;
    EXPECT_EQ(u.forced_rank, m);
  }
}

TEST(Colligation, ScalarHalfPair) {
  // Domain vector (D h, D t^* h) = (sqrt3/2, sqrt3/4) h, range (sqrt3/4, sqrt3/2) h:
  // U must send (2, 1)/sqrt5 to (1, 2)/sqrt5. The complements (-1, 2)/sqrt5 and
  // (2, -1)/sqrt5 (largest entry made positive) pair up, so U is the flip.
  const ComplexMatrix t = oracle::diag({0.5});
  const Colligation u = build_colligation(ContractionPair::make(t, t));
  ComplexVector in(2), out(2);
  in << 2.0, 1.0;
  out << 1.0, 2.0;
  in /= std::sqrt(5.0);
  out /= std::sqrt(5.0);
  EXPECT_LE((u.unitary() * in - out).norm(), 1e-14);
  ComplexMatrix flip(2, 2);
  flip << 0.0, 1.0, 1.0, 0.0;
  EXPECT_LE(oracle::norm2(u.unitary() - flip), 1e-14);
}

TEST(Colligation, IdentitySecondOperatorGivesIdentityA) {
  const ContractionPair p = ContractionPair::make(oracle::jordan_half(), linalg::identity(2));
  const Colligation u = build_colligation(p);
  EXPECT_EQ(u.r2(), 0);
  EXPECT_EQ(u.b.size(), 0);
  EXPECT_LE(oracle::norm2(u.a - oracle::eye(u.r1())), 1e-12);
}

TEST(Colligation, UnitaryAndDefiningActionOnGeneratedPairs) {
  std::mt19937_64 rng(123);
  for (const auto& c : oracle::generator_suite(45, 2, 8)) {
    const GeneratedPair g = generate_pair(c.kind, c.dim, c.seed);
    const ContractionPair p = ContractionPair::make(g.t1, g.t2);
    const Colligation u = build_colligation(p);
    const ComplexMatrix big = u.unitary();
    const Eigen::Index n = big.rows();
    EXPECT_LE(oracle::norm2(big.adjoint() * big - oracle::eye(n)), 1e-10);
    EXPECT_LE(oracle::norm2(big * big.adjoint() - oracle::eye(n)), 1e-10);
    // Defining action, assembled from independently computed defect operators.
    const ComplexMatrix d1 = oracle::defect_op(g.t1);
    const ComplexMatrix d2 = oracle::defect_op(g.t2);
    const ComplexMatrix e1 = u.defect1.basis;
    const ComplexMatrix e2 = u.defect2.basis;
    for (int s = 0; s < 20; ++s) {
      const ComplexVector h = oracle::random_vector(c.dim, rng);
      ComplexVector x(n), y(n);
      x << e1.adjoint() * d1 * h, e2.adjoint() * d2 * g.t1.adjoint() * h;
      y << e1.adjoint() * d1 * g.t2.adjoint() * h, e2.adjoint() * d2 * h;
      EXPECT_LE((big * x - y).norm(), 1e-10 * h.norm());
      EXPECT_LE(u.defining_action_residual(p, h), 1e-10);
    }
  }
}

TEST(Colligation, SwappedPipelineGivesAdjointWithSwappedBlocks) {
  for (const auto& c : oracle::generator_suite(15, 2, 6, 40)) {
    const GeneratedPair g = generate_pair(c.kind, c.dim, c.seed);
    const ContractionPair p = ContractionPair::make(g.t1, g.t2);
    const Colligation u = build_colligation(p);
    const Colligation v = build_colligation(p.swapped());
    EXPECT_LE(oracle::norm2(v.unitary() - swap_blocks_adjoint(u)), 1e-9) << to_string(c.kind) << " " << c.seed;
  }
}

TEST(Colligation, Deterministic) {
  const GeneratedPair g = generate_pair(PairKind::TriangularCommuting, 6, 5);
  const ContractionPair p = ContractionPair::make(g.t1, g.t2);
  const ComplexMatrix a = build_colligation(p).unitary();
  const ComplexMatrix b = build_colligation(p).unitary();
  ASSERT_EQ(a.rows(), b.rows());
  EXPECT_EQ(0, std::memcmp(a.data(), b.data(), sizeof(Complex) * static_cast<std::size_t>(a.size())));
}

TEST(Colligation, RejectsBrokenInput) {
  // Bypass validation with a huge commute tolerance: the defining action is
  // then not isometric and cannot be reproduced.
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 1) = 0.9;
  Tolerances loose;
  loose.commute = 10.0;
  const ContractionPair p = ContractionPair::make(a, a.adjoint(), loose);
  EXPECT_THROW(build_colligation(p), NumericError);
}

TEST(PartialSumSeries, ZeroPairTruncatesImmediately) {
  const ComplexMatrix z = ComplexMatrix::Zero(2, 2);
  const ContractionPair p = ContractionPair::make(z, z);
  ComplexVector h(2);
  h << 1.0, Complex(0.0, 2.0);
  const LemmaSeriesResult r = verify_lemma_series(p, build_colligation(p), h, 3);
  EXPECT_EQ(r.residuals[0], 0.0);
}

TEST(PartialSumSeries, NilpotentVanishesFromOrderMinusTwo) {
  // Jordan cell of order 4: T1^4 = 0, so res_m = 0 for m >= 2.
  ComplexMatrix j = ComplexMatrix::Zero(4, 4);
  j.diagonal(1).setConstant(0.6);
  const ComplexMatrix t2 = 0.5 * j * j - 0.2 * j;
  const ContractionPair p = ContractionPair::make(j, t2);
  const Colligation u = build_colligation(p);
  std::mt19937_64 rng(9);
  const ComplexVector h = oracle::random_vector(4, rng);
  const LemmaSeriesResult r = verify_lemma_series(p, u, h, 6);
  for (int m = 2; m <= 6; ++m) EXPECT_LE(r.residuals[m], 1e-12 * h.norm()) << m;
}

TEST(PartialSumSeries, RandomPureDimFourStaysBelowBound) {
  std::mt19937_64 rng(21);
  for (std::uint64_t seed : {1, 2, 3, 4}) {
    const GeneratedPair g = generate_pair(PairKind::TriangularCommuting, 4, seed);
    const ContractionPair p = ContractionPair::make(g.t1, g.t2);
    const Colligation u = build_colligation(p);
    const ComplexVector h = oracle::random_vector(4, rng);
    const LemmaSeriesResult r = verify_lemma_series(p, u, h, 50);
    for (int m = 0; m <= 50; ++m) {
      const double bound = oracle::norm2(oracle::power(g.t1.adjoint(), m + 2) * h);
      EXPECT_NEAR(r.bounds[m], bound, 1e-12);
      EXPECT_LE(r.residuals[m], bound + 1e-10) << "m=" << m;
    }
  }
}

TEST(PartialSumSeries, RequiresPureT1) {
  const ContractionPair p = ContractionPair::make(linalg::identity(2), oracle::jordan_half());
  EXPECT_THROW(verify_lemma_series(p, build_colligation(p), ComplexVector::Ones(2), 3), ValidationError);
}

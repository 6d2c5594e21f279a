#include <gtest/gtest.h>

#include "support.hpp"

using namespace andovar;

TEST(ValidatePair, ZeroPair) {
  const ComplexMatrix z = ComplexMatrix::Zero(2, 2);
  const PairReport r = validate_pair(z, z);
  EXPECT_EQ(r.commute_residual, 0.0);
  EXPECT_TRUE(r.pure[0]);
  EXPECT_TRUE(r.pure[1]);
  EXPECT_EQ(r.defect_ranks[0], 2);
  EXPECT_EQ(r.defect_ranks[1], 2);
  EXPECT_TRUE(r.valid());
}

TEST(ValidatePair, DiagonalStrictContractions) {
  const PairReport r = validate_pair(oracle::diag({0.3, 0.4}), oracle::diag({0.2, -0.5}));
  EXPECT_TRUE(r.pure[0]);
  EXPECT_TRUE(r.pure[1]);
  EXPECT_NEAR(r.spectral_radii[0], 0.4, 1e-15);
  EXPECT_NEAR(r.norms[1], 0.5, 1e-15);
}

TEST(ValidatePair, IdentitySecondOperator) {
  const PairReport r = validate_pair(oracle::jordan_half(), linalg::identity(2));
  EXPECT_TRUE(r.pure[0]);
  EXPECT_FALSE(r.pure[1]);
  EXPECT_EQ(r.defect_ranks[1], 0);
}

TEST(ValidatePair, RejectsNonCommutingPair) {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 1) = 0.5;
  ComplexMatrix b = a.transpose();
  const PairReport r = analyze_pair(a, b);
  EXPECT_FALSE(r.commutes);
  EXPECT_NEAR(r.commute_residual, oracle::norm2(a * b - b * a), 1e-15);
  try {
    validate_pair(a, b);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("do not commute"), std::string::npos);
  }
}

TEST(ValidatePair, RejectsExpansiveOperator) {
  try {
    validate_pair(oracle::diag({1.5, 0.0}), ComplexMatrix::Zero(2, 2));
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("not a contraction"), std::string::npos);
  }
}

TEST(ValidatePair, ShapeErrors) {
  EXPECT_THROW(validate_pair(ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(3, 3)), InputError);
  EXPECT_THROW(validate_pair(ComplexMatrix::Zero(2, 3), ComplexMatrix::Zero(2, 3)), InputError);
}

TEST(ValidatePair, CommuteToleranceScalesWithDimension) {
  Tolerances t;
  EXPECT_DOUBLE_EQ(t.commute_for(5), 5e-10);
  t.commute = 1e-3;
  EXPECT_DOUBLE_EQ(t.commute_for(5), 1e-3);
  EXPECT_DOUBLE_EQ(t.strict().commute_for(5), 5e-4);
  EXPECT_DOUBLE_EQ(Tolerances{}.strict().pure, 5e-9);
}

TEST(Defect, Examples) {
  const DefectData d0 = defect(ComplexMatrix::Zero(2, 2));
  EXPECT_EQ(d0.rank, 2);
  EXPECT_LE(oracle::norm2(d0.defect - oracle::eye(2)), 1e-15);

  ComplexMatrix j = ComplexMatrix::Zero(2, 2);
  j(0, 1) = 1.0;
  const DefectData dj = defect(j);
  EXPECT_EQ(dj.rank, 1);
  EXPECT_LE(oracle::norm2(dj.defect - oracle::diag({0.0, 1.0})), 1e-15);

  const DefectData dh = defect(oracle::diag({0.5}));
  EXPECT_EQ(dh.rank, 1);
  EXPECT_NEAR(dh.defect(0, 0).real(), std::sqrt(0.75), 1e-15);
}

TEST(Defect, RejectsExpansive) { EXPECT_THROW(defect(oracle::diag({1.1})), ValidationError); }

TEST(Defect, BasisInvariantsOnGeneratedPairs) {
  for (const auto& c : oracle::generator_suite(30, 2, 7)) {
    const GeneratedPair g = generate_pair(c.kind, c.dim, c.seed);
    for (const ComplexMatrix* t : {&g.t1, &g.t2}) {
      const DefectData d = defect(*t);
      EXPECT_LE(oracle::norm2(d.defect - oracle::defect_op(*t)), 1e-10);
      EXPECT_LE(oracle::norm2(d.basis.adjoint() * d.basis - oracle::eye(d.rank)), 1e-10);
      const ComplexMatrix leak = (oracle::eye(c.dim) - d.basis * d.basis.adjoint()) * d.defect;
      EXPECT_LE(oracle::norm2(leak), 1e-8);
      // rank agrees with the numeric rank of D's singular values
      Eigen::JacobiSVD<ComplexMatrix> svd(d.defect);
      Eigen::Index r = 0;
      for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) r += svd.singularValues()(i) > 1e-5 ? 1 : 0;
      EXPECT_EQ(d.rank, r);
    }
  }
}

TEST(Defect, NormIdentityOnRandomVectors) {
  std::mt19937_64 rng(77);
  for (const auto& c : oracle::generator_suite(12, 2, 6, 50)) {
    const GeneratedPair g = generate_pair(c.kind, c.dim, c.seed);
    const ComplexMatrix d1 = oracle::defect_op(g.t1);
    const ComplexMatrix d2 = oracle::defect_op(g.t2);
    for (int s = 0; s < 100; ++s) {
      const ComplexVector h = oracle::random_vector(c.dim, rng);
      const double lhs = (d1 * h).squaredNorm() + (d2 * g.t1.adjoint() * h).squaredNorm();
      const double rhs = (d1 * g.t2.adjoint() * h).squaredNorm() + (d2 * h).squaredNorm();
      EXPECT_NEAR(lhs, rhs, 1e-10 * h.squaredNorm());
    }
  }
}

TEST(TruncationDegree, Examples) {
  EXPECT_EQ(truncation_degree(oracle::jordan_half(), 1e-12).degree, 2);
  EXPECT_EQ(truncation_degree(ComplexMatrix::Zero(3, 3), 1e-10).degree, 1);
  const int expected = oracle::truncation_degree(oracle::diag({0.5}), 1e-9);
  EXPECT_EQ(expected, 30);
  EXPECT_EQ(truncation_degree(oracle::diag({0.5}), 1e-9).degree, expected);
}

TEST(TruncationDegree, MatchesPowerOracleOnGeneratedPairs) {
  for (const auto& c : oracle::generator_suite(24, 2, 6, 300)) {
    const GeneratedPair g = generate_pair(c.kind, c.dim, c.seed);
    const TruncationDegree td = truncation_degree(g.t1, 1e-10);
    const int expected = oracle::truncation_degree(g.t1, 1e-10);
    // Products formed in a different order may straddle the threshold by one.
    EXPECT_LE(std::abs(td.degree - expected), 1) << to_string(c.kind) << " seed " << c.seed;
    EXPECT_LT(td.tail_norm, 1e-10);
    EXPECT_FALSE(td.capped);
  }
}

TEST(TruncationDegree, CapAndPurity) {
  const TruncationDegree td = truncation_degree(oracle::diag({0.999}), 1e-10);
  EXPECT_TRUE(td.capped);
  EXPECT_EQ(td.degree, kMaxTruncationDegree);
  EXPECT_THROW(truncation_degree(oracle::diag({1.0}), 1e-10), ValidationError);
}

TEST(ContractionPair, SwappedReusesDefectsAndSwapsReport) {
  const GeneratedPair g = generate_pair(PairKind::TriangularCommuting, 4, 9);
  const ContractionPair p = ContractionPair::make(g.t1, g.t2);
  const ContractionPair s = p.swapped();
  EXPECT_EQ(s.t1(), p.t2());
  EXPECT_EQ(s.defect1().basis, p.defect2().basis);
  EXPECT_EQ(s.report().norms[0], p.report().norms[1]);
  EXPECT_EQ(s.report().defect_ranks[1], p.report().defect_ranks[0]);
}

TEST(ContractionPair, RequireT1Pure) {
  const ContractionPair p = ContractionPair::make(linalg::identity(2), oracle::jordan_half());
  EXPECT_THROW(p.require_t1_pure("test"), ValidationError);
  EXPECT_NO_THROW(p.swapped().require_t1_pure("test"));
}

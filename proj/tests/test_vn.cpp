#include <gtest/gtest.h>

#include <cstdlib>

#include "support.hpp"

using namespace andovar;

namespace {

const BivariatePolynomial kZ1 = BivariatePolynomial::z1();
const BivariatePolynomial kZ2 = BivariatePolynomial::z2();

VarietyModel model_for(const ComplexMatrix& t1, const ComplexMatrix& t2) {
  const ContractionPair p = ContractionPair::make(t1, t2);
  return VarietyModel::from_colligation(build_colligation(p), p.tolerances().pure);
}

// Direct double loop with explicit powers, no Horner.
double torus_oracle(const BivariatePolynomial& p, int n) {
  double best = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const Complex z1 = std::polar(1.0, 2.0 * M_PI * a / n);
      const Complex z2 = std::polar(1.0, 2.0 * M_PI * b / n);
      Complex v = 0.0;
      for (int j = 0; j <= p.degree1(); ++j)
        for (int k = 0; k <= p.degree2(); ++k) v += p.coefficient(j, k) * std::pow(z1, j) * std::pow(z2, k);
      best = std::max(best, std::abs(v));
    }
  }
  return best;
}

BivariatePolynomial random_poly(std::mt19937_64& rng, int max_total) {
  std::uniform_int_distribution<int> deg(1, max_total);
  const int d = deg(rng);
  std::vector<std::vector<Complex>> c(static_cast<std::size_t>(d + 1), std::vector<Complex>(static_cast<std::size_t>(d + 1)));
  for (int j = 0; j <= d; ++j)
    for (int k = 0; j + k <= d; ++k) c[j][k] = oracle::random_in_disc(1.0, rng);
  return BivariatePolynomial(c);
}

}  // namespace

TEST(Polynomial, TrimAndAccessors) {
  const BivariatePolynomial p({{1.0, 0.0, 0.0}, {0.0, 2.0, 0.0}, {0.0, 0.0, 0.0}});
  EXPECT_EQ(p.degree1(), 1);
  EXPECT_EQ(p.degree2(), 1);
  EXPECT_EQ(p.coefficient(1, 1), Complex(2.0));
  EXPECT_EQ(p.coefficient(5, 0), Complex(0.0));
  EXPECT_EQ(p(Complex(0.5), Complex(2.0)), Complex(3.0));
  EXPECT_DOUBLE_EQ(p.lipschitz_bound(), 4.0);
  EXPECT_THROW(BivariatePolynomial(std::vector<std::vector<Complex>>{{Complex(std::nan(""))}}), InputError);
}

TEST(Polynomial, Arithmetic) {
  const BivariatePolynomial p = (kZ1 + kZ2) * (kZ1 - kZ2);
  std::mt19937_64 rng(1);
  for (int s = 0; s < 10; ++s) {
    const Complex a = oracle::random_in_disc(1.0, rng), b = oracle::random_in_disc(1.0, rng);
    EXPECT_NEAR(std::abs(p(a, b) - (a * a - b * b)), 0.0, 1e-14);
  }
}

TEST(EvalPolyPair, Examples) {
  const ComplexMatrix j = oracle::jordan_half();
  EXPECT_EQ(eval_poly_pair(BivariatePolynomial::constant(1.0), j, j), oracle::eye(2));
  EXPECT_EQ(eval_poly_pair(kZ1 - kZ2, j, j), ComplexMatrix::Zero(2, 2));
  EXPECT_EQ(eval_poly_pair(kZ1 * kZ2, j, j), ComplexMatrix::Zero(2, 2));
}

TEST(EvalPolyPair, MatchesDirectPowers) {
  std::mt19937_64 rng(2);
  const GeneratedPair g = generate_pair(PairKind::TriangularCommuting, 4, 8);
  const BivariatePolynomial p = random_poly(rng, 4);
  ComplexMatrix direct = ComplexMatrix::Zero(4, 4);
  for (int a = 0; a <= p.degree1(); ++a)
    for (int b = 0; b <= p.degree2(); ++b)
      direct += p.coefficient(a, b) * oracle::power(g.t1, a) * oracle::power(g.t2, b);
  EXPECT_LE(oracle::norm2(eval_poly_pair(p, g.t1, g.t2) - direct), 1e-13);
}

TEST(SupOnBidisc, Examples) {
  EXPECT_NEAR(sup_on_bidisc(kZ1 * kZ2, 16).value, 1.0, 1e-15);
  EXPECT_NEAR(sup_on_bidisc(kZ1 + kZ2, 16).value, 2.0, 1e-15);
  EXPECT_NEAR(sup_on_bidisc(kZ1 - kZ2, 16).value, 2.0, 1e-15);
  EXPECT_THROW(sup_on_bidisc(kZ1 * kZ1 * kZ2, 8), InputError);
}

TEST(SupOnBidisc, MatchesDirectOracle) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) {
    const BivariatePolynomial p = random_poly(rng, 4);
    EXPECT_NEAR(sup_on_bidisc(p, 64).value, torus_oracle(p, 64), 1e-12);
  }
}

TEST(SupOnVariety, Examples) {
  const ComplexMatrix z = ComplexMatrix::Zero(1, 1);
  const VarietyModel diag = model_for(z, z);
  EXPECT_NEAR(sup_on_variety(kZ1 - kZ2, diag).value, 0.0, 1e-12);
  EXPECT_NEAR(sup_on_variety(kZ1 + kZ2, diag).value, 2.0, 1e-12);
  const VarietyModel v0 = model_for(oracle::diag({0.5}), linalg::identity(1));
  EXPECT_NEAR(sup_on_variety(kZ2, v0).value, 1.0, 1e-12);
}

TEST(SupOnVariety, RefinementIsMonotone) {
  std::mt19937_64 rng(4);
  const GeneratedPair g = generate_pair(PairKind::JordanPoly, 3, 2);
  const VarietyModel m = model_for(g.t1, g.t2);
  const BivariatePolynomial p = random_poly(rng, 4);
  double prev = 0.0;
  for (int n = 45; n <= 1440; n *= 2) {
    const double v = sup_on_variety(p, m, {n, {}}).value;
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(SupOnVariety, InteriorRadiiAreRedundantForV0) {
  const VarietyModel m = model_for(oracle::diag({0.5, 0.3}), oracle::diag({1.0, 0.4}));
  const BivariatePolynomial p = kZ1 * kZ2 + kZ2 * Complex(0.5);
  const double plain = sup_on_variety(p, m, {180, {}}).value;
  const double with_interior = sup_on_variety(p, m, {180, {0.3, 0.7}}).value;
  EXPECT_EQ(plain, with_interior);
  EXPECT_THROW(sup_on_variety(p, m, {180, {1.5}}), InputError);
}

TEST(VNReport, ZeroPairScalar) {
  const ComplexMatrix z = ComplexMatrix::Zero(1, 1);
  const VNReport r = vn_report(ContractionPair::make(z, z), kZ1 - kZ2);
  EXPECT_EQ(r.lhs, 0.0);
  EXPECT_NEAR(r.sup_variety, 0.0, 1e-12);
  EXPECT_NEAR(r.sup_bidisc, 2.0, 1e-15);
  EXPECT_TRUE(r.chain_holds);
  EXPECT_EQ(r.pair_digest.size(), 16u);
}

TEST(VNReport, NilpotentSum) {
  const ComplexMatrix j = oracle::jordan_half();
  const VNReport r = vn_report(ContractionPair::make(j, j), kZ1 + kZ2);
  EXPECT_NEAR(r.lhs, 1.0, 1e-15);
  EXPECT_TRUE(r.chain_holds);
  EXPECT_LE(r.lhs, r.sup_variety + r.slack);
}

TEST(VNReport, DiagonalExampleHasPositiveMargins) {
  const ContractionPair p = ContractionPair::make(oracle::diag({0.3, 0.4}), oracle::diag({0.2, -0.5}));
  const VNReport r = vn_report(p, kZ1 * kZ2 - kZ2);
  EXPECT_TRUE(r.chain_holds);
  EXPECT_GT(r.margin_variety, 0.0);
  EXPECT_GE(r.margin_bidisc, -r.slack);
  EXPECT_NEAR(r.lhs, 0.3, 1e-12);  // max(|0.06 - 0.2|, |-0.2 + 0.5|)
}

TEST(VNReport, ClassicalBoundHoldsForNonPureSecondOperator) {
  const ContractionPair p = ContractionPair::make(oracle::jordan_half(), linalg::identity(2));
  const BivariatePolynomial q = kZ1 * kZ2 * Complex(0.0, 1.0) + kZ2 * kZ2 - kZ1;
  const VNReport r = vn_report(p, q);
  EXPECT_TRUE(r.chain_holds);
  EXPECT_EQ(r.unitary_part_dim, 2);
}

TEST(VNReport, RequiresPureT1) {
  const ContractionPair p = ContractionPair::make(linalg::identity(2), oracle::jordan_half());
  EXPECT_THROW(vn_report(p, kZ1), ValidationError);
}

TEST(PairDigest, DistinguishesInputs) {
  const ComplexMatrix j = oracle::jordan_half();
  EXPECT_EQ(pair_digest(j, j), pair_digest(j, j));
  EXPECT_NE(pair_digest(j, j), pair_digest(j, j.transpose()));
}

TEST(Parallel, ReductionsIndependentOfThreadCount) {
  std::mt19937_64 rng(5);
  const GeneratedPair g = generate_pair(PairKind::Diagonal, 4, 5);
  const VarietyModel m = model_for(g.t1, g.t2);
  const BivariatePolynomial p = random_poly(rng, 4);
  setenv("ANDOVAR_THREADS", "1", 1);
  const double a = sup_on_variety(p, m).value, b = sup_on_bidisc(p).value;
  setenv("ANDOVAR_THREADS", "3", 1);
  const double c = sup_on_variety(p, m).value, d = sup_on_bidisc(p).value;
  unsetenv("ANDOVAR_THREADS");
  EXPECT_EQ(a, c);
  EXPECT_EQ(b, d);
  EXPECT_EQ(thread_count() >= 1, true);
}

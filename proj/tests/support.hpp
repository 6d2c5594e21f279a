#pragma once

// Independent oracles for the tests. They use Eigen directly and never call
// into the library's numerics, so a bug there cannot hide behind the oracle.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "andovar/andovar.hpp"

namespace oracle {

using andovar::Complex;
using andovar::ComplexMatrix;
using andovar::ComplexVector;

inline ComplexMatrix eye(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

inline double norm2(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

inline ComplexMatrix power(const ComplexMatrix& m, int k) {
  ComplexMatrix p = eye(m.rows());
  for (int i = 0; i < k; ++i) p = p * m;
  return p;
}

// (I - T T^*)^{1/2} through Eigen's self-adjoint solver.
inline ComplexMatrix defect_op(const ComplexMatrix& t) {
  const ComplexMatrix m = eye(t.rows()) - t * t.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

// Smallest N >= 1 with ||T^{*N}|| < tol by plain repeated multiplication.
inline int truncation_degree(const ComplexMatrix& t, double tol, int cap = 5000) {
  ComplexMatrix p = t.adjoint();
  for (int n = 1; n <= cap; ++n) {
    if (norm2(p) < tol) return n;
    p = p * t.adjoint();
  }
  return -1;
}

// A + z B (I - z D)^{-1} C via a full-pivot LU solve.
inline ComplexMatrix tau(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c, const ComplexMatrix& d,
                         Complex z) {
  if (d.rows() == 0) return a;
  const ComplexMatrix resolvent_c = (eye(d.rows()) - z * d).fullPivLu().solve(c);
  return a + z * b * resolvent_c;
}

// Psi(z) = A^* + z C^* (I - z D^*)^{-1} B^* read off the colligation blocks.
inline ComplexMatrix psi(const andovar::Colligation& u, Complex z) {
  return tau(u.a.adjoint(), u.c.adjoint(), u.b.adjoint(), u.d.adjoint(), z);
}

inline ComplexVector random_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

inline Complex random_in_disc(double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), 2.0 * M_PI * u(rng));
}

inline ComplexMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  ComplexMatrix g(n, n);
  std::normal_distribution<double> d(0.0, 1.0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = Complex(d(rng), d(rng));
  return (g + g.adjoint()) / 2.0;
}

// Sorted eigenvalues of a diagonal-like matrix are not needed; this returns
// min_j |x - v_j|.
inline double distance_to_set(Complex x, const ComplexVector& v) {
  double best = INFINITY;
  for (Eigen::Index i = 0; i < v.size(); ++i) best = std::min(best, std::abs(x - v(i)));
  return best;
}

inline ComplexMatrix jordan_half() {
  ComplexMatrix j = ComplexMatrix::Zero(2, 2);
  j(0, 1) = 0.5;
  return j;
}

inline ComplexMatrix diag(std::initializer_list<Complex> d) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (Complex x : d) {
    m(i, i) = x;
    ++i;
  }
  return m;
}

// Seeded sweep over the three generator families, dims in [lo, hi].
struct SuiteCase {
  andovar::PairKind kind;
  Eigen::Index dim;
  std::uint64_t seed;
};

inline std::vector<SuiteCase> generator_suite(int count, Eigen::Index lo, Eigen::Index hi, std::uint64_t base = 1000) {
  const andovar::PairKind kinds[] = {andovar::PairKind::Diagonal, andovar::PairKind::JordanPoly,
                                     andovar::PairKind::TriangularCommuting};
  std::vector<SuiteCase> out;
  for (int i = 0; i < count; ++i) {
    out.push_back({kinds[i % 3], lo + (i / 3) % (hi - lo + 1), base + static_cast<std::uint64_t>(i)});
  }
  return out;
}

}  // namespace oracle

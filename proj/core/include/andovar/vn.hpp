#pragma once

#include <string>
#include <vector>

#include "andovar/linalg.hpp"
#include "andovar/pair_analysis.hpp"
#include "andovar/variety.hpp"

namespace andovar {

// p(z1, z2) = sum_{j,k} c[j][k] z1^j z2^k
class BivariatePolynomial {
 public:
  BivariatePolynomial() : coeffs_{{Complex(0.0)}} {}
  // Rows index powers of z1, columns powers of z2. Ragged rows are padded
  // with zeros; trailing zero rows/columns are trimmed.
  explicit BivariatePolynomial(std::vector<std::vector<Complex>> coeffs);

  static BivariatePolynomial constant(Complex c);
  static BivariatePolynomial z1();
  static BivariatePolynomial z2();

  int degree1() const { return static_cast<int>(coeffs_.size()) - 1; }
  int degree2() const { return static_cast<int>(coeffs_.front().size()) - 1; }
  const std::vector<std::vector<Complex>>& coefficients() const { return coeffs_; }
  Complex coefficient(int j, int k) const;

  Complex operator()(Complex z1, Complex z2) const;

  // sum |c_jk| (j + k): bounds |d/dt p(e^{i(a+t)}, e^{i(b+t)})| and, more
  // generally, the change of p over the closed bidisc when each coordinate
  // moves by an arc of length t.
  double lipschitz_bound() const;

  BivariatePolynomial operator+(const BivariatePolynomial& o) const;
  BivariatePolynomial operator-(const BivariatePolynomial& o) const;
  BivariatePolynomial operator*(const BivariatePolynomial& o) const;
  BivariatePolynomial operator*(Complex s) const;

 private:
  void normalize();
  std::vector<std::vector<Complex>> coeffs_;
};

// p(T1, T2) by nested Horner: powers of T2 innermost. Exact functional
// calculus; the caller is responsible for commutation.
ComplexMatrix eval_poly_pair(const BivariatePolynomial& p, const ComplexMatrix& t1, const ComplexMatrix& t2);

struct SupEstimate {
  double value = 0.0;
  double slack = 0.0;       // sampling-resolution allowance
  std::size_t grid = 0;     // samples per circle
  std::size_t evaluated = 0;
  std::size_t skipped = 0;  // boundary poles
};

struct VarietySupOptions {
  int n_theta = 720;
  // Extra radii r in (0, 1) at which V0 sheets are also sampled as
  // (r e^{i theta}, lambda). Redundant by the maximum principle in z1.
  std::vector<double> v0_interior_radii;
};

// max over the theta grid of |p(e^{i theta}, z2)| for z2 in the V1 fiber and
// in sigma(W). Slack = lipschitz_bound * 2 pi / n_theta + 1e-9.
SupEstimate sup_on_variety(const BivariatePolynomial& p, const VarietyModel& model, const VarietySupOptions& opts = {});

// max |p| over the n_grid x n_grid torus grid. Requires
// n_grid >= 4 (deg1 + deg2). Slack = lipschitz_bound * pi / n_grid + 1e-9.
SupEstimate sup_on_bidisc(const BivariatePolynomial& p, int n_grid = 512);

struct VNOptions {
  int n_theta = 720;
  int torus_grid = 512;
  std::vector<double> v0_interior_radii;
  // Throw NumericError when the inequality chain fails beyond slack.
  bool fail_on_violation = true;
};

struct VNReport {
  double lhs = 0.0;          // ||p(T1, T2)||
  double sup_variety = 0.0;  // sampled sup over the closure of V on the circle
  double sup_bidisc = 0.0;   // sampled sup over the torus
  double slack = 0.0;        // lipschitz_bound * 2 pi / n_theta + 1e-9
  double margin_variety = 0.0;  // sup_variety - lhs
  double margin_bidisc = 0.0;   // sup_bidisc - sup_variety
  int n_theta = 0;
  int torus_grid = 0;
  std::size_t skipped_thetas = 0;
  Eigen::Index unitary_part_dim = 0;  // k = dim H0
  bool chain_holds = false;
  std::string pair_digest;
};

VNReport vn_report(const ContractionPair& pair, const BivariatePolynomial& p, const VNOptions& opts = {});

// FNV-1a over the dimensions and raw entries of both operators, hex encoded.
std::string pair_digest(const ComplexMatrix& t1, const ComplexMatrix& t2);

}  // namespace andovar

#pragma once

#include <vector>

#include "andovar/colligation.hpp"
#include "andovar/linalg.hpp"

namespace andovar {

// Block operator [[a, b], [c, d]] read as a state-space realization of
// tau(z) = a + z b (I - z d)^{-1} c.
struct Realization {
  ComplexMatrix a;
  ComplexMatrix b;
  ComplexMatrix c;
  ComplexMatrix d;

  Eigen::Index outer_dim() const { return a.rows(); }
  Eigen::Index state_dim() const { return d.rows(); }

  ComplexMatrix unitary() const;

  // [[a^*, c^*], [b^*, d^*]]: the realization of the adjoint block operator.
  Realization adjoint() const;

  // Throws BoundaryPoleError when cond(I - z d) exceeds `max_condition`
  // and InputError for |z| > 1 + 1e-12.
  ComplexMatrix evaluate(Complex z, double max_condition = 1e14) const;

  // ||(I - tau^* tau) - (1 - |z|^2) c^* (I - conj(z) d^*)^{-1} (I - z d)^{-1} c||
  double schur_identity_residual(Complex z) const;

  // Taylor coefficients a, bc, bdc, bd^2c, ... (the first `count`).
  std::vector<ComplexMatrix> taylor_coefficients(int count) const;
};

enum class Direction {
  Forward,  // tau_U(z) = A + z B (I - z D)^{-1} C
  Adjoint,  // tau_{U^*}(z) = A^* + z C^* (I - z D^*)^{-1} B^*, the inner multiplier Psi
};

Realization realization_of(const Colligation& coll, Direction dir);

class TransferFunction {
 public:
  TransferFunction(Colligation coll, Direction dir);

  const Colligation& colligation() const { return coll_; }
  Direction direction() const { return dir_; }
  const Realization& realization() const { return real_; }

  ComplexMatrix operator()(Complex z) const { return real_.evaluate(z); }

 private:
  Colligation coll_;
  Direction dir_;
  Realization real_;
};

ComplexMatrix eval_tau(const TransferFunction& tf, Complex z);

// Requires |z| < 1.
double schur_identity_residual(const TransferFunction& tf, Complex z);

// Canonical decomposition of a contraction into its unitary part (on H0) and
// completely non-unitary part (on H1), in explicit orthonormal coordinates.
struct CanonicalSplit {
  ComplexMatrix h0;      // r x k
  ComplexMatrix h1;      // r x (r - k)
  ComplexMatrix w;       // k x k unitary part
  ComplexMatrix e_cnu;   // (r - k) x (r - k)
  ComplexVector lambda;  // spectrum of w, unimodular
  double block_residual = 0.0;  // off-diagonal leakage of the operator in the split

  Eigen::Index k() const { return h0.cols(); }
};

// H0 is the span of eigenvectors for eigenvalues with modulus >= 1 - tol_pure.
// Raises NumericError when the split is not block diagonal within 1e-8.
CanonicalSplit canonical_split(const ComplexMatrix& op, double tol_pure = 1e-8);

// Realization of the transfer function restricted to H1:
// [[h1^* a h1, h1^* b], [c h1, d]]. `split` must be the canonical split of
// `full.a`.
Realization cnu_realization(const Realization& full, const CanonicalSplit& split);

// max(||c h0||, ||h0^* b||): how far the unitary part is from decoupling.
double split_decoupling_residual(const Realization& full, const CanonicalSplit& split);

struct UnimodularCheck {
  bool no_unimodular = false;
  double max_modulus = 0.0;
};

// Eigenvalue scan of tau(z) for |z| < 1; passes when every modulus is at
// most 1 - tol.
UnimodularCheck check_no_unimodular_eigs(const Realization& r, Complex z, double tol = 1e-12);
UnimodularCheck check_no_unimodular_eigs(const TransferFunction& tf, Complex z, double tol = 1e-12);

}  // namespace andovar

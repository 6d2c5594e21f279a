#pragma once

// Dense complex linear algebra used by every other part of the library.
//
// All routines work in double precision on Eigen::MatrixXcd. Decompositions
// follow fixed ordering and phase conventions so that anything built on top
// of them (defect bases, colligations, varieties) is reproducible bit for
// bit on identical input:
//
//   * Hermitian eigenvalues ascending, eigenvectors orthonormal.
//   * General eigenvalues sorted by descending modulus, then ascending
//     argument.
//   * Singular values descending.
//   * Every returned eigen/singular vector has its first entry of largest
//     modulus made real and positive. For the SVD the same phase is applied
//     to the matching right singular vector so U S V^* is unchanged.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace andovar {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace linalg {

bool all_finite(const ComplexMatrix& m);

// Throws InputError when `m` has NaN/Inf entries. `what` names the operand.
void require_finite(const ComplexMatrix& m, const char* what);

void require_square(const ComplexMatrix& m, const char* what);

ComplexMatrix identity(Eigen::Index n);

// Largest singular value; 0 for empty and zero matrices.
double operator_norm(const ComplexMatrix& m);

double spectral_radius(const ComplexMatrix& m);

struct HermitianEigen {
  RealVector values;     // ascending
  ComplexMatrix vectors;  // columns, orthonormal
};

// Decomposes the Hermitian part (M + M^*)/2.
HermitianEigen herm_eig(const ComplexMatrix& m);

struct Eigensystem {
  ComplexVector values;
  ComplexMatrix vectors;  // unit columns
};

Eigensystem eig(const ComplexMatrix& m);
ComplexVector eigenvalues(const ComplexMatrix& m);

struct Svd {
  ComplexMatrix u;
  RealVector singular_values;  // descending
  ComplexMatrix v;
};

// Thin SVD unless `full` is set.
Svd svd(const ComplexMatrix& m, bool full = false);

RealVector singular_values(const ComplexMatrix& m);

// Minimum-norm least-squares solution of A x = b (b may have many columns).
ComplexMatrix lstsq(const ComplexMatrix& a, const ComplexMatrix& b);

// Hermitian PSD square root. Eigenvalues in [-tol, 0) are clamped to zero;
// anything below -tol raises ValidationError("not PSD").
ComplexMatrix psd_sqrt(const ComplexMatrix& m, double tol);

// Rotates every column so that its first entry of largest modulus is real
// positive. Returns the applied phases (one per column).
std::vector<Complex> fix_column_phases(ComplexMatrix& columns);

// Orthonormal basis of the orthogonal complement of the column span of the
// orthonormal matrix `basis` (n x k) in C^n. Built by pivoted Gram-Schmidt on
// the complement projector: each step takes the standard basis vector with
// the largest remaining projection (lowest index on ties). The result only
// depends on the subspace and commutes with coordinate permutations.
ComplexMatrix orthonormal_complement(const ComplexMatrix& basis);

// Same pivoted Gram-Schmidt applied to the columns of an n x n orthogonal
// projector; returns exactly `count` columns.
ComplexMatrix pivoted_range_basis(const ComplexMatrix& projector, Eigen::Index count);

// Modified Gram-Schmidt on the columns of `m` in order.
ComplexMatrix gram_schmidt(const ComplexMatrix& m);

// ||M^* M - I||.
double isometry_defect(const ComplexMatrix& m);

// 2-norm condition number, +inf when singular.
double condition_number(const ComplexMatrix& m);

}  // namespace linalg
}  // namespace andovar

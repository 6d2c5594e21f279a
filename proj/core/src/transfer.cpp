#include "andovar/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/LU>

#include "andovar/errors.hpp"

namespace andovar {

ComplexMatrix Realization::unitary() const {
  const Eigen::Index n1 = outer_dim();
  const Eigen::Index n2 = state_dim();
  ComplexMatrix u(n1 + n2, n1 + n2);
  u.topLeftCorner(n1, n1) = a;
  u.topRightCorner(n1, n2) = b;
  u.bottomLeftCorner(n2, n1) = c;
  u.bottomRightCorner(n2, n2) = d;
  return u;
}

Realization Realization::adjoint() const { return {a.adjoint(), c.adjoint(), b.adjoint(), d.adjoint()}; }

ComplexMatrix Realization::evaluate(Complex z, double max_condition) const {
  if (!(std::abs(z) <= 1.0 + 1e-12)) {
    std::ostringstream os;
    os << "transfer function evaluated outside the closed disc (|z| = " << std::abs(z) << ")";
    throw InputError(os.str());
  }
  if (state_dim() == 0 || outer_dim() == 0) return a;
  const ComplexMatrix m = linalg::identity(state_dim()) - z * d;
  const double cond = linalg::condition_number(m);
  if (!(cond <= max_condition)) {
    std::ostringstream os;
    os << "boundary pole: I - zD is singular at z = (" << z.real() << ", " << z.imag() << "), condition " << cond;
    throw BoundaryPoleError(os.str());
  }
  return a + z * b * m.partialPivLu().solve(c);
}

double Realization::schur_identity_residual(Complex z) const {
  if (!(std::abs(z) < 1.0)) throw InputError("Schur identity needs an interior point");
  const ComplexMatrix tau = evaluate(z);
  const ComplexMatrix lhs = linalg::identity(outer_dim()) - tau.adjoint() * tau;
  if (state_dim() == 0) return linalg::operator_norm(lhs);
  const ComplexMatrix id = linalg::identity(state_dim());
  const ComplexMatrix left_inv = (id - std::conj(z) * d.adjoint()).inverse();
  const ComplexMatrix right_inv = (id - z * d).inverse();
  const ComplexMatrix rhs = (1.0 - std::norm(z)) * c.adjoint() * left_inv * right_inv * c;
  return linalg::operator_norm(lhs - rhs);
}

std::vector<ComplexMatrix> Realization::taylor_coefficients(int count) const {
  std::vector<ComplexMatrix> out;
  if (count <= 0) return out;
  out.reserve(static_cast<std::size_t>(count));
  out.push_back(a);
  if (count == 1) return out;
  ComplexMatrix tail = c;  // d^{q-1} c
  for (int q = 1; q < count; ++q) {
    if (state_dim() == 0) {
      out.push_back(ComplexMatrix::Zero(a.rows(), a.cols()));
      continue;
    }
    out.push_back(b * tail);
    tail = d * tail;
  }
  return out;
}

Realization realization_of(const Colligation& coll, Direction dir) {
  Realization fwd{coll.a, coll.b, coll.c, coll.d};
  return dir == Direction::Forward ? fwd : fwd.adjoint();
}

TransferFunction::TransferFunction(Colligation coll, Direction dir)
    : coll_(std::move(coll)), dir_(dir), real_(realization_of(coll_, dir)) {}

ComplexMatrix eval_tau(const TransferFunction& tf, Complex z) { return tf(z); }

double schur_identity_residual(const TransferFunction& tf, Complex z) {
  return tf.realization().schur_identity_residual(z);
}

CanonicalSplit canonical_split(const ComplexMatrix& op, double tol_pure) {
  linalg::require_square(op, "canonical_split input");
  linalg::require_finite(op, "canonical_split input");
  const Eigen::Index r = op.rows();
  CanonicalSplit out;
  if (r == 0) {
    out.h0.resize(0, 0);
    out.h1.resize(0, 0);
    return out;
  }

  const ComplexVector vals = linalg::eigenvalues(op);
  std::vector<Complex> unimodular;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (std::abs(vals(i)) >= 1.0 - tol_pure) unimodular.push_back(vals(i));
  }
  std::stable_sort(unimodular.begin(), unimodular.end(),
                   [](const Complex& x, const Complex& y) { return std::arg(x) < std::arg(y); });

  // Group numerically equal eigenvalues; each group's eigenspace is the
  // null space of (op - lambda I) with dimension equal to the group size.
  constexpr double kClusterTol = 1e-6;
  std::vector<std::pair<Complex, Eigen::Index>> clusters;
  for (const Complex& lam : unimodular) {
    if (!clusters.empty() && std::abs(lam - clusters.back().first) < kClusterTol) {
      auto& [rep, mult] = clusters.back();
      rep = (rep * static_cast<double>(mult) + lam) / static_cast<double>(mult + 1);
      ++mult;
    } else {
      clusters.emplace_back(lam, 1);
    }
  }
  // The last group can wrap around arg = +-pi.
  if (clusters.size() > 1 && std::abs(clusters.front().first - clusters.back().first) < kClusterTol) {
    auto& [rep, mult] = clusters.front();
    const auto& [rep_b, mult_b] = clusters.back();
    rep = (rep * static_cast<double>(mult) + rep_b * static_cast<double>(mult_b)) / static_cast<double>(mult + mult_b);
    mult += mult_b;
    clusters.pop_back();
  }

  ComplexMatrix vectors(r, static_cast<Eigen::Index>(unimodular.size()));
  Eigen::Index col = 0;
  for (const auto& [lam, mult] : clusters) {
    const linalg::Svd s = linalg::svd(op - lam * linalg::identity(r), true);
    const double smallest_kept = s.singular_values(r - mult);
    if (smallest_kept > 1e-5) {
      std::ostringstream os;
      os << "canonical_split: eigenvalue " << lam << " of multiplicity " << mult
         << " is not semisimple (null-space residual " << smallest_kept << "); input is not a contraction";
      throw NumericError(os.str());
    }
    vectors.middleCols(col, mult) = s.v.rightCols(mult);
    col += mult;
  }

  out.h0 = vectors.cols() ? linalg::gram_schmidt(vectors) : ComplexMatrix(r, 0);
  linalg::fix_column_phases(out.h0);
  out.h1 = linalg::orthonormal_complement(out.h0);
  out.w = out.h0.adjoint() * op * out.h0;
  out.e_cnu = out.h1.adjoint() * op * out.h1;
  const double upper = out.h0.size() && out.h1.size() ? linalg::operator_norm(out.h0.adjoint() * op * out.h1) : 0.0;
  const double lower = out.h0.size() && out.h1.size() ? linalg::operator_norm(out.h1.adjoint() * op * out.h0) : 0.0;
  out.block_residual = std::max(upper, lower);
  if (out.block_residual > 1e-8) {
    std::ostringstream os;
    os << "canonical_split: unitary part does not reduce the operator (leakage " << out.block_residual
       << "); input is not a contraction within tolerance";
    throw NumericError(os.str());
  }
  out.lambda = linalg::eigenvalues(out.w);
  return out;
}

Realization cnu_realization(const Realization& full, const CanonicalSplit& split) {
  return {split.e_cnu, split.h1.adjoint() * full.b, full.c * split.h1, full.d};
}

double split_decoupling_residual(const Realization& full, const CanonicalSplit& split) {
  if (split.k() == 0 || full.state_dim() == 0) return 0.0;
  return std::max(linalg::operator_norm(full.c * split.h0), linalg::operator_norm(split.h0.adjoint() * full.b));
}

UnimodularCheck check_no_unimodular_eigs(const Realization& r, Complex z, double tol) {
  UnimodularCheck out;
  if (!(std::abs(z) < 1.0)) throw InputError("check_no_unimodular_eigs needs an interior point");
  const ComplexVector vals = linalg::eigenvalues(r.evaluate(z));
  out.max_modulus = vals.size() ? vals.cwiseAbs().maxCoeff() : 0.0;
  out.no_unimodular = out.max_modulus <= 1.0 - tol;
  return out;
}

UnimodularCheck check_no_unimodular_eigs(const TransferFunction& tf, Complex z, double tol) {
  return check_no_unimodular_eigs(tf.realization(), z, tol);
}

}  // namespace andovar

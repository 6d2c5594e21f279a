#include "andovar/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "andovar/errors.hpp"

namespace andovar::linalg {

namespace {

// First entry of largest modulus; ties keep the earliest index.
Eigen::Index pivot_entry(const ComplexMatrix& columns, Eigen::Index col) {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < columns.rows(); ++i) {
    const double a = std::abs(columns(i, col));
    if (a > best_abs * (1.0 + 1e-12)) {
      best_abs = a;
      best = i;
    }
  }
  return best;
}

std::vector<Eigen::Index> stable_order(Eigen::Index n) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  return order;
}

}  // namespace

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!all_finite(m)) throw InputError(std::string(what) + " has non-finite entries");
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << " must be square, got " << m.rows() << "x" << m.cols();
    throw InputError(os.str());
  }
}

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

double operator_norm(const ComplexMatrix& m) {
  require_finite(m, "matrix");
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  const RealVector s = singular_values(m);
  return s.size() ? s(0) : 0.0;
}

double spectral_radius(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return eigenvalues(m).cwiseAbs().maxCoeff();
}

HermitianEigen herm_eig(const ComplexMatrix& m) {
  require_square(m, "Hermitian eigenproblem input");
  require_finite(m, "Hermitian eigenproblem input");
  HermitianEigen out;
  if (m.rows() == 0) return out;
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericError("Hermitian eigensolver did not converge (dim " + std::to_string(m.rows()) + ")");
  }
  out.values = solver.eigenvalues();
  out.vectors = solver.eigenvectors();
  fix_column_phases(out.vectors);
  return out;
}

Eigensystem eig(const ComplexMatrix& m) {
  require_square(m, "eigenproblem input");
  require_finite(m, "eigenproblem input");
  Eigensystem out;
  if (m.rows() == 0) return out;
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, true);
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "complex eigensolver did not converge (dim " << m.rows() << ", norm " << m.norm() << ")";
    throw NumericError(os.str());
  }
  const ComplexVector& vals = solver.eigenvalues();
  const ComplexMatrix& vecs = solver.eigenvectors();
  auto order = stable_order(vals.size());
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double ma = std::abs(vals(a));
    const double mb = std::abs(vals(b));
    if (ma != mb) return ma > mb;
    return std::arg(vals(a)) < std::arg(vals(b));
  });
  out.values.resize(vals.size());
  out.vectors.resize(m.rows(), vals.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto idx = static_cast<Eigen::Index>(k);
    out.values(idx) = vals(order[k]);
    const double nrm = vecs.col(order[k]).norm();
    out.vectors.col(idx) = nrm > 0 ? ComplexVector(vecs.col(order[k]) / nrm) : ComplexVector(vecs.col(order[k]));
  }
  fix_column_phases(out.vectors);
  return out;
}

ComplexVector eigenvalues(const ComplexMatrix& m) {
  require_square(m, "eigenproblem input");
  require_finite(m, "eigenproblem input");
  if (m.rows() == 0) return {};
  if (m.rows() == 1) return ComplexVector::Constant(1, m(0, 0));
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, false);
  if (solver.info() != Eigen::Success) throw NumericError("complex eigensolver did not converge");
  ComplexVector vals = solver.eigenvalues();
  std::vector<Complex> sorted(vals.data(), vals.data() + vals.size());
  std::stable_sort(sorted.begin(), sorted.end(), [](const Complex& a, const Complex& b) {
    const double ma = std::abs(a);
    const double mb = std::abs(b);
    if (ma != mb) return ma > mb;
    return std::arg(a) < std::arg(b);
  });
  for (Eigen::Index i = 0; i < vals.size(); ++i) vals(i) = sorted[static_cast<std::size_t>(i)];
  return vals;
}

Svd svd(const ComplexMatrix& m, bool full) {
  require_finite(m, "SVD input");
  Svd out;
  const Eigen::Index k = std::min(m.rows(), m.cols());
  if (m.size() == 0) {
    out.u = full ? identity(m.rows()) : ComplexMatrix(m.rows(), 0);
    out.v = full ? identity(m.cols()) : ComplexMatrix(m.cols(), 0);
    return out;
  }
  const unsigned opts = full ? (Eigen::ComputeFullU | Eigen::ComputeFullV) : (Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::BDCSVD<ComplexMatrix> solver(m, opts);
  if (solver.info() != Eigen::Success) {
    throw NumericError("SVD did not converge (" + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")");
  }
  out.u = solver.matrixU();
  out.v = solver.matrixV();
  out.singular_values = solver.singularValues();
  // Phase convention on the paired columns; extra columns of a full basis
  // only get their own phase fixed.
  for (Eigen::Index j = 0; j < out.u.cols(); ++j) {
    const Eigen::Index p = pivot_entry(out.u, j);
    const Complex entry = out.u(p, j);
    if (std::abs(entry) == 0.0) continue;
    const Complex phase = std::conj(entry) / std::abs(entry);
    out.u.col(j) *= phase;
    if (j < k) out.v.col(j) *= phase;
  }
  for (Eigen::Index j = k; j < out.v.cols(); ++j) {
    const Eigen::Index p = pivot_entry(out.v, j);
    const Complex entry = out.v(p, j);
    if (std::abs(entry) == 0.0) continue;
    out.v.col(j) *= std::conj(entry) / std::abs(entry);
  }
  return out;
}

RealVector singular_values(const ComplexMatrix& m) {
  require_finite(m, "SVD input");
  if (m.size() == 0) return {};
  Eigen::BDCSVD<ComplexMatrix> solver(m, 0);
  if (solver.info() != Eigen::Success) throw NumericError("SVD did not converge");
  return solver.singularValues();
}

ComplexMatrix lstsq(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows()) throw InputError("lstsq: row mismatch between A and b");
  require_finite(a, "lstsq matrix");
  require_finite(b, "lstsq right-hand side");
  if (a.cols() == 0) return ComplexMatrix(0, b.cols());
  if (a.rows() == 0) return ComplexMatrix::Zero(a.cols(), b.cols());
  Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(a);
  return cod.solve(b);
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m, double tol) {
  require_square(m, "psd_sqrt input");
  require_finite(m, "psd_sqrt input");
  if (m.rows() == 0) return m;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol * scale + 1e-14 * scale) {
    throw ValidationError("psd_sqrt: matrix is not Hermitian within tolerance");
  }
  HermitianEigen e = herm_eig(m);
  RealVector roots(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    const double lambda = e.values(i);
    if (lambda < -tol) {
      std::ostringstream os;
      os << "not PSD: eigenvalue " << lambda << " below -" << tol;
      throw ValidationError(os.str());
    }
    roots(i) = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
  }
  ComplexMatrix r = e.vectors * roots.asDiagonal() * e.vectors.adjoint();
  return 0.5 * (r + r.adjoint());
}

std::vector<Complex> fix_column_phases(ComplexMatrix& columns) {
  std::vector<Complex> phases;
  phases.reserve(static_cast<std::size_t>(columns.cols()));
  for (Eigen::Index j = 0; j < columns.cols(); ++j) {
    if (columns.rows() == 0) {
      phases.emplace_back(1.0);
      continue;
    }
    const Eigen::Index p = pivot_entry(columns, j);
    const Complex entry = columns(p, j);
    Complex phase(1.0);
    if (std::abs(entry) > 0.0) phase = std::conj(entry) / std::abs(entry);
    columns.col(j) *= phase;
    columns(p, j) = Complex(columns(p, j).real(), 0.0);
    phases.push_back(phase);
  }
  return phases;
}

ComplexMatrix pivoted_range_basis(const ComplexMatrix& projector, Eigen::Index count) {
  const Eigen::Index n = projector.rows();
  ComplexMatrix residual = projector;
  ComplexMatrix out(n, count);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Eigen::Index step = 0; step < count; ++step) {
    Eigen::Index best = -1;
    double best_norm = -1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      const double nrm = residual.col(j).norm();
      if (nrm > best_norm * (1.0 + 1e-12) + 1e-300) {
        best_norm = nrm;
        best = j;
      }
    }
    if (best < 0 || best_norm <= 1e-8) {
      throw NumericError("pivoted_range_basis: projector rank below requested count");
    }
    used[static_cast<std::size_t>(best)] = true;
    ComplexVector q = residual.col(best) / best_norm;
    // Second pass keeps q orthogonal to earlier picks to working precision.
    if (step > 0) {
      const auto prev = out.leftCols(step);
      q -= prev * (prev.adjoint() * q);
      q.normalize();
    }
    out.col(step) = q;
    residual -= q * (q.adjoint() * residual);
  }
  return out;
}

ComplexMatrix orthonormal_complement(const ComplexMatrix& basis) {
  const Eigen::Index n = basis.rows();
  const Eigen::Index k = basis.cols();
  if (k > n) throw InputError("orthonormal_complement: more columns than rows");
  if (k == n) return ComplexMatrix(n, 0);
  ComplexMatrix projector = identity(n) - basis * basis.adjoint();
  return pivoted_range_basis(projector, n - k);
}

ComplexMatrix gram_schmidt(const ComplexMatrix& m) {
  ComplexMatrix q = m;
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < j; ++i) {
        const Complex c = q.col(i).dot(q.col(j));
        q.col(j) -= c * q.col(i);
      }
    }
    const double nrm = q.col(j).norm();
    if (nrm == 0.0) throw NumericError("gram_schmidt: linearly dependent columns");
    q.col(j) /= nrm;
  }
  return q;
}

double isometry_defect(const ComplexMatrix& m) {
  if (m.cols() == 0) return 0.0;
  return operator_norm(m.adjoint() * m - identity(m.cols()));
}

double condition_number(const ComplexMatrix& m) {
  if (m.size() == 0) return 1.0;
  const RealVector s = singular_values(m);
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

}  // namespace andovar::linalg

#include "andovar/pair_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "andovar/errors.hpp"

namespace andovar {

double Tolerances::commute_for(Eigen::Index dim) const {
  return commute.value_or(commute_scale * 1e-10 * static_cast<double>(std::max<Eigen::Index>(dim, 1)));
}

Tolerances Tolerances::strict() const {
  Tolerances out = *this;
  if (commute) out.commute = *commute * 0.5;
  out.commute_scale *= 0.5;
  out.contract *= 0.5;
  out.pure *= 0.5;
  out.rank *= 0.5;
  out.trunc *= 0.5;
  return out;
}

namespace {

void require_pair_shapes(const ComplexMatrix& t1, const ComplexMatrix& t2) {
  linalg::require_square(t1, "T1");
  linalg::require_square(t2, "T2");
  linalg::require_finite(t1, "T1");
  linalg::require_finite(t2, "T2");
  if (t1.rows() != t2.rows()) {
    std::ostringstream os;
    os << "dimension mismatch: T1 is " << t1.rows() << "x" << t1.cols() << ", T2 is " << t2.rows() << "x"
       << t2.cols();
    throw InputError(os.str());
  }
  if (t1.rows() == 0) throw InputError("empty matrices");
}

Eigen::Index numeric_defect_rank(const RealVector& ascending, double rank_tol) {
  if (ascending.size() == 0) return 0;
  const double scale = std::max(1.0, ascending.cwiseAbs().maxCoeff());
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < ascending.size(); ++i) {
    if (ascending(i) > rank_tol * scale) ++r;
  }
  return r;
}

}  // namespace

PairReport analyze_pair(const ComplexMatrix& t1, const ComplexMatrix& t2, const Tolerances& tols) {
  require_pair_shapes(t1, t2);
  PairReport rep;
  rep.dim = t1.rows();
  rep.commute_residual = linalg::operator_norm(t1 * t2 - t2 * t1);
  rep.commute_tolerance = tols.commute_for(rep.dim);
  rep.commutes = rep.commute_residual <= rep.commute_tolerance;
  const ComplexMatrix* ops[2] = {&t1, &t2};
  for (int j = 0; j < 2; ++j) {
    const ComplexMatrix& t = *ops[j];
    rep.norms[j] = linalg::operator_norm(t);
    rep.spectral_radii[j] = linalg::spectral_radius(t);
    rep.pure[j] = rep.spectral_radii[j] < 1.0 - tols.pure;
    rep.contractive[j] = rep.norms[j] <= 1.0 + tols.contract;
    const ComplexMatrix gap = linalg::identity(rep.dim) - t * t.adjoint();
    rep.defect_ranks[j] = numeric_defect_rank(linalg::herm_eig(gap).values, tols.rank);
  }
  return rep;
}

PairReport validate_pair(const ComplexMatrix& t1, const ComplexMatrix& t2, const Tolerances& tols) {
  PairReport rep = analyze_pair(t1, t2, tols);
  if (!rep.commutes) {
    std::ostringstream os;
    os << "operators do not commute: ||T1 T2 - T2 T1|| = " << rep.commute_residual << " > "
       << rep.commute_tolerance;
    throw ValidationError(os.str());
  }
  for (int j = 0; j < 2; ++j) {
    if (!rep.contractive[j]) {
      std::ostringstream os;
      os << "T" << (j + 1) << " is not a contraction: norm " << rep.norms[j] << " > 1 + " << tols.contract;
      throw ValidationError(os.str());
    }
  }
  return rep;
}

DefectData defect(const ComplexMatrix& t, double rank_tol, double contract_tol) {
  linalg::require_square(t, "T");
  linalg::require_finite(t, "T");
  const Eigen::Index n = t.rows();
  const ComplexMatrix gap = linalg::identity(n) - t * t.adjoint();
  const linalg::HermitianEigen e = linalg::herm_eig(gap);

  DefectData out;
  RealVector roots(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lambda = e.values(i);
    if (lambda < -contract_tol) {
      std::ostringstream os;
      os << "not a contraction: I - T T^* has eigenvalue " << lambda;
      throw ValidationError(os.str());
    }
    roots(i) = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
  }
  ComplexMatrix d = e.vectors * roots.asDiagonal() * e.vectors.adjoint();
  out.defect = 0.5 * (d + d.adjoint());

  out.rank = numeric_defect_rank(e.values, rank_tol);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return e.values(a) > e.values(b); });
  out.basis.resize(n, out.rank);
  for (Eigen::Index k = 0; k < out.rank; ++k) out.basis.col(k) = e.vectors.col(order[static_cast<std::size_t>(k)]);
  linalg::fix_column_phases(out.basis);
  return out;
}

TruncationDegree truncation_degree(const ComplexMatrix& t1, double tol_trunc, double tol_pure) {
  linalg::require_square(t1, "T1");
  linalg::require_finite(t1, "T1");
  if (tol_trunc <= 0.0) throw InputError("truncation tolerance must be positive");
  const double rho = linalg::spectral_radius(t1);
  if (!(rho < 1.0 - tol_pure)) {
    std::ostringstream os;
    os << "dilation requires T1 to be pure (spectral radius " << rho << " >= 1 - " << tol_pure << ")";
    throw ValidationError(os.str());
  }
  const ComplexMatrix base = t1.adjoint();
  TruncationDegree out;
  if (1.0 < tol_trunc) return out;  // ||T^{*0}|| = 1 already below tolerance

  // powers[k] = T^{*2^k}
  std::vector<ComplexMatrix> powers{base};
  std::vector<double> norms{linalg::operator_norm(base)};
  while (norms.back() >= tol_trunc) {
    if ((std::int64_t{1} << (powers.size() - 1)) >= kMaxTruncationDegree) {
      out.degree = kMaxTruncationDegree;
      out.capped = true;
      ComplexMatrix p = linalg::identity(base.rows());
      for (int i = 0; i < kMaxTruncationDegree; ++i) p = p * base;
      out.tail_norm = linalg::operator_norm(p);
      return out;
    }
    powers.push_back(powers.back() * powers.back());
    norms.push_back(linalg::operator_norm(powers.back()));
  }
  const std::size_t k = powers.size() - 1;
  if (k == 0) {
    out.degree = 1;
    out.tail_norm = norms[0];
    return out;
  }
  // ||T^{*e}|| >= tol at e = 2^{k-1}; the norms are nonincreasing in the
  // exponent, so descend over the remaining bits.
  ComplexMatrix acc = powers[k - 1];
  std::int64_t exponent = std::int64_t{1} << (k - 1);
  for (std::size_t j = k - 1; j-- > 0;) {
    ComplexMatrix candidate = acc * powers[j];
    if (linalg::operator_norm(candidate) >= tol_trunc) {
      acc = std::move(candidate);
      exponent += std::int64_t{1} << j;
    }
  }
  ComplexMatrix final_power = acc * base;
  out.degree = static_cast<int>(exponent + 1);
  out.tail_norm = linalg::operator_norm(final_power);
  if (out.degree > kMaxTruncationDegree) {
    out.degree = kMaxTruncationDegree;
    out.capped = true;
  }
  return out;
}

ContractionPair ContractionPair::make(ComplexMatrix t1, ComplexMatrix t2, Tolerances tols) {
  ContractionPair p;
  p.report_ = validate_pair(t1, t2, tols);
  p.d1_ = defect(t1, tols.rank, tols.contract);
  p.d2_ = defect(t2, tols.rank, tols.contract);
  p.t1_ = std::move(t1);
  p.t2_ = std::move(t2);
  p.tols_ = tols;
  return p;
}

ContractionPair ContractionPair::swapped() const {
  ContractionPair p;
  p.t1_ = t2_;
  p.t2_ = t1_;
  p.tols_ = tols_;
  p.d1_ = d2_;
  p.d2_ = d1_;
  p.report_ = report_;
  std::swap(p.report_.norms[0], p.report_.norms[1]);
  std::swap(p.report_.spectral_radii[0], p.report_.spectral_radii[1]);
  std::swap(p.report_.pure[0], p.report_.pure[1]);
  std::swap(p.report_.defect_ranks[0], p.report_.defect_ranks[1]);
  std::swap(p.report_.contractive[0], p.report_.contractive[1]);
  return p;
}

void ContractionPair::require_t1_pure(const char* context) const {
  if (!t1_pure()) {
    std::ostringstream os;
    os << context << " requires T1 to be pure (spectral radius " << report_.spectral_radii[0] << " >= 1 - "
       << tols_.pure << ")";
    throw ValidationError(os.str());
  }
}

}  // namespace andovar

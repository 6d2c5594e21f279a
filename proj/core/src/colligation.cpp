#include "andovar/colligation.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "andovar/errors.hpp"

namespace andovar {

ComplexMatrix Colligation::unitary() const {
  const Eigen::Index n1 = r1();
  const Eigen::Index n2 = r2();
  ComplexMatrix u(n1 + n2, n1 + n2);
  u.topLeftCorner(n1, n1) = a;
  u.topRightCorner(n1, n2) = b;
  u.bottomLeftCorner(n2, n1) = c;
  u.bottomRightCorner(n2, n2) = d;
  return u;
}

double Colligation::unitarity_residual() const {
  const ComplexMatrix u = unitary();
  if (u.size() == 0) return 0.0;
  const ComplexMatrix id = linalg::identity(u.rows());
  return std::max(linalg::operator_norm(u.adjoint() * u - id), linalg::operator_norm(u * u.adjoint() - id));
}

double Colligation::defining_action_residual(const ContractionPair& pair, const ComplexVector& h) const {
  const double hn = h.norm();
  if (hn == 0.0) return 0.0;
  const ComplexVector lhs = unitary() * (colligation_domain(pair) * h);
  const ComplexVector rhs = colligation_range(pair) * h;
  return (lhs - rhs).norm() / hn;
}

ComplexMatrix colligation_domain(const ContractionPair& pair) {
  const ComplexMatrix p1 = pair.defect1().coordinates();
  const ComplexMatrix p2 = pair.defect2().coordinates();
  ComplexMatrix out(p1.rows() + p2.rows(), pair.dim());
  out.topRows(p1.rows()) = p1;
  out.bottomRows(p2.rows()) = p2 * pair.t1().adjoint();
  return out;
}

ComplexMatrix colligation_range(const ContractionPair& pair) {
  const ComplexMatrix p1 = pair.defect1().coordinates();
  const ComplexMatrix p2 = pair.defect2().coordinates();
  ComplexMatrix out(p1.rows() + p2.rows(), pair.dim());
  out.topRows(p1.rows()) = p1 * pair.t2().adjoint();
  out.bottomRows(p2.rows()) = p2;
  return out;
}

Colligation build_colligation(const ContractionPair& pair, double construction_tol) {
  Colligation out;
  out.defect1 = pair.defect1();
  out.defect2 = pair.defect2();
  const Eigen::Index r1 = out.defect1.rank;
  const Eigen::Index r2 = out.defect2.rank;
  const Eigen::Index total = r1 + r2;

  const ComplexMatrix dom = colligation_domain(pair);
  const ComplexMatrix ran = colligation_range(pair);

  ComplexMatrix u = ComplexMatrix::Zero(total, total);
  if (total > 0) {
    const linalg::Svd sd = linalg::svd(dom);
    const double top = sd.singular_values.size() ? sd.singular_values(0) : 0.0;
    // Below this cutoff a direction contributes at most 2 * cutoff * ||h||
    // to the defining-action residual, so dropping it is harmless.
    const double cutoff = 1e-2 * pair.tolerances().rank * std::max(1.0, top);
    Eigen::Index k = 0;
    while (k < sd.singular_values.size() && sd.singular_values(k) > cutoff) ++k;
    out.forced_rank = k;

    // Images of the domain's left singular vectors. Equal Gram matrices of
    // dom and ran make these orthonormal in exact arithmetic; Gram-Schmidt in
    // descending singular-value order keeps the well-determined directions
    // accurate.
    ComplexMatrix images = ran * sd.v.leftCols(k) * sd.singular_values.head(k).cwiseInverse().asDiagonal();
    const ComplexMatrix range_basis = k ? linalg::gram_schmidt(images) : ComplexMatrix(total, 0);
    const ComplexMatrix domain_basis = sd.u.leftCols(k);
    u += range_basis * domain_basis.adjoint();

    const ComplexMatrix domain_perp = linalg::orthonormal_complement(domain_basis);
    const ComplexMatrix range_perp = linalg::orthonormal_complement(range_basis);
    assert(domain_perp.cols() == range_perp.cols());
    u += range_perp * domain_perp.adjoint();

    const double fit = linalg::operator_norm(u * dom - ran);
    const double scale = std::max(1.0, linalg::operator_norm(dom));
    if (fit > construction_tol * scale) {
      std::ostringstream os;
      os << "colligation does not reproduce the defining action: residual " << fit
         << " (inputs may not commute or may not be contractions)";
      throw NumericError(os.str());
    }
  }

  out.a = u.topLeftCorner(r1, r1);
  out.b = u.topRightCorner(r1, r2);
  out.c = u.bottomLeftCorner(r2, r1);
  out.d = u.bottomRightCorner(r2, r2);
  return out;
}

LemmaSeriesResult verify_lemma_series(const ContractionPair& pair, const Colligation& coll, const ComplexVector& h,
                                      int m_max) {
  pair.require_t1_pure("the series identity");
  if (h.size() != pair.dim()) throw InputError("verify_lemma_series: vector length does not match dimension");
  if (m_max < 0) throw InputError("verify_lemma_series: m_max must be nonnegative");

  const ComplexMatrix p1 = coll.defect1.coordinates();
  const ComplexMatrix t1s = pair.t1().adjoint();
  const ComplexVector target = p1 * (pair.t2().adjoint() * h);

  LemmaSeriesResult out;
  out.residuals.reserve(static_cast<std::size_t>(m_max) + 1);
  out.bounds.reserve(static_cast<std::size_t>(m_max) + 1);

  ComplexVector partial = coll.a * (p1 * h);
  ComplexVector g = t1s * h;  // T1^{*(n+1)} h
  ComplexMatrix dpow = linalg::identity(coll.r2());
  for (int n = 0; n <= m_max; ++n) {
    if (coll.r2() > 0) partial += coll.b * (dpow * (coll.c * (p1 * g)));
    g = t1s * g;
    out.residuals.push_back((target - partial).norm());
    out.bounds.push_back(g.norm());
    dpow = coll.d * dpow;
  }
  return out;
}

}  // namespace andovar

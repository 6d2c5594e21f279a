#pragma once

#include <vector>

#include "andovar/linalg.hpp"
#include "andovar/pair_analysis.hpp"

namespace andovar {

// Unitary U = [[A, B], [C, D]] on D_{T1} (+) D_{T2}, written in the defect
// bases of the two operators, with
//
//   U (D_{T1} h, D_{T2} T1^* h) = (D_{T1} T2^* h, D_{T2} h)   for all h.
//
// U is forced only on the span of the left-hand vectors. On the orthogonal
// complement the library maps the pivoted Gram-Schmidt basis of the domain
// complement onto the one of the range complement, pick by pick. Because
// that basis commutes with coordinate permutations, building from (T2, T1)
// reproduces U^* with the two blocks swapped.
struct Colligation {
  ComplexMatrix a;  // r1 x r1
  ComplexMatrix b;  // r1 x r2
  ComplexMatrix c;  // r2 x r1
  ComplexMatrix d;  // r2 x r2
  DefectData defect1;
  DefectData defect2;
  Eigen::Index forced_rank = 0;  // dimension of the subspace where U is forced

  Eigen::Index r1() const { return a.rows(); }
  Eigen::Index r2() const { return d.rows(); }
  ComplexMatrix unitary() const;

  // max(||U^*U - I||, ||UU^* - I||)
  double unitarity_residual() const;

  // ||U x_dom - x_ran|| / ||h|| for the given h.
  double defining_action_residual(const ContractionPair& pair, const ComplexVector& h) const;
};

// Stacked defect-coordinate vectors of the defining action, as (r1 + r2) x n
// matrices: domain [E1^* D1; E2^* D2 T1^*], range [E1^* D1 T2^*; E2^* D2].
ComplexMatrix colligation_domain(const ContractionPair& pair);
ComplexMatrix colligation_range(const ContractionPair& pair);

// Builds U. Raises NumericError if the forced part cannot be reproduced to
// `construction_tol` (signals a broken commutation/contraction input).
Colligation build_colligation(const ContractionPair& pair, double construction_tol = 1e-8);

struct LemmaSeriesResult {
  std::vector<double> residuals;  // res_m, m = 0..m_max
  std::vector<double> bounds;     // ||T1^{*(m+2)} h||
};

// Partial sums of D1 T2^* = A D1 + sum_{n>=0} B D^n C D1 T1^{*(n+1)} applied
// to h, in defect coordinates. Requires T1 pure.
LemmaSeriesResult verify_lemma_series(const ContractionPair& pair, const Colligation& coll, const ComplexVector& h,
                                      int m_max);

}  // namespace andovar

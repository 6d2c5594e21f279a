#pragma once

#include <array>
#include <optional>

#include "andovar/linalg.hpp"

namespace andovar {

// Numerical thresholds shared by the whole pipeline.
struct Tolerances {
  // Commutator bound; unset means commute_scale * 1e-10 * dim.
  std::optional<double> commute;
  double commute_scale = 1.0;
  double contract = 1e-10;
  double pure = 1e-8;
  double rank = 1e-10;
  double trunc = 1e-10;

  double commute_for(Eigen::Index dim) const;

  // Every threshold halved (CLI --strict).
  Tolerances strict() const;
};

struct PairReport {
  Eigen::Index dim = 0;
  double commute_residual = 0.0;
  double commute_tolerance = 0.0;
  std::array<double, 2> norms{};
  std::array<double, 2> spectral_radii{};
  std::array<bool, 2> pure{};
  std::array<Eigen::Index, 2> defect_ranks{};
  bool commutes = false;
  std::array<bool, 2> contractive{};

  bool valid() const { return commutes && contractive[0] && contractive[1]; }
};

// Defect operator D = (I - T T^*)^{1/2} together with an orthonormal basis of
// its range. The basis fixes the coordinates every later object is written
// in; columns are ordered by descending eigenvalue of I - T T^*.
struct DefectData {
  ComplexMatrix defect;  // n x n, Hermitian PSD
  ComplexMatrix basis;   // n x r, orthonormal columns spanning ran(defect)
  Eigen::Index rank = 0;

  // basis^* D, i.e. D written in defect coordinates (r x n).
  ComplexMatrix coordinates() const { return basis.adjoint() * defect; }
};

// Measures everything about (T1, T2) without throwing on hypothesis failure.
// Shape problems and non-finite entries still raise InputError.
PairReport analyze_pair(const ComplexMatrix& t1, const ComplexMatrix& t2, const Tolerances& tols = {});

// analyze_pair, then ValidationError when the pair does not commute or either
// operator is not a contraction. Purity is reported, never enforced.
PairReport validate_pair(const ComplexMatrix& t1, const ComplexMatrix& t2, const Tolerances& tols = {});

DefectData defect(const ComplexMatrix& t, double rank_tol = 1e-10, double contract_tol = 1e-10);

struct TruncationDegree {
  int degree = 0;
  bool capped = false;  // hit kMaxTruncationDegree before the tail was small
  double tail_norm = 0.0;  // measured ||T^{*degree}||
};

inline constexpr int kMaxTruncationDegree = 2000;

// Smallest N with ||T^{*N}|| < tol_trunc, found by repeated squaring and a
// binary descent over the stored powers. Requires spectral radius
// < 1 - tol_pure.
TruncationDegree truncation_degree(const ComplexMatrix& t1, double tol_trunc = 1e-10, double tol_pure = 1e-8);

// A validated commuting pair of contractions with its defect data.
class ContractionPair {
 public:
  static ContractionPair make(ComplexMatrix t1, ComplexMatrix t2, Tolerances tols = {});

  const ComplexMatrix& t1() const { return t1_; }
  const ComplexMatrix& t2() const { return t2_; }
  Eigen::Index dim() const { return t1_.rows(); }
  const Tolerances& tolerances() const { return tols_; }
  const PairReport& report() const { return report_; }
  const DefectData& defect1() const { return d1_; }
  const DefectData& defect2() const { return d2_; }
  bool t1_pure() const { return report_.pure[0]; }
  bool t2_pure() const { return report_.pure[1]; }

  // (T2, T1) with the same tolerances; defect data is reused, not recomputed.
  ContractionPair swapped() const;

  // Throws ValidationError naming the failed hypothesis.
  void require_t1_pure(const char* context) const;

 private:
  ContractionPair() = default;

  ComplexMatrix t1_;
  ComplexMatrix t2_;
  Tolerances tols_;
  PairReport report_;
  DefectData d1_;
  DefectData d2_;
};

}  // namespace andovar

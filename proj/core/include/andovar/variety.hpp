#pragma once

#include <cstdint>
#include <vector>

#include "andovar/colligation.hpp"
#include "andovar/pair_analysis.hpp"
#include "andovar/transfer.hpp"

namespace andovar {

// V0 sheets are D x {lambda} for lambda in the spectrum of the unitary part W
// of A^*; V1 is cut out by det(Psi_1(z1) - z2 I) = 0 with Psi_1 the
// completely non-unitary part of Psi.
enum class SheetKind { V0, V1 };

const char* to_string(SheetKind kind);

// Psi = tau_{U^*}, the canonical split of its constant term A^*, and the
// realization of Psi_1. Everything the variety operations need, computed once.
class VarietyModel {
 public:
  static VarietyModel from_colligation(const Colligation& coll, double tol_pure = 1e-8);

  const Realization& psi() const { return psi_; }
  const CanonicalSplit& split() const { return split_; }
  const Realization& psi_cnu() const { return psi_cnu_; }
  Eigen::Index fiber_size() const { return psi_.outer_dim(); }

 private:
  Realization psi_;
  CanonicalSplit split_;
  Realization psi_cnu_;
};

struct FiberValue {
  Complex z2;
  SheetKind kind;
};

// All r1 values z2 over z1 (with multiplicity): eig(Psi_1(z1)) tagged V1,
// then sigma(W) tagged V0. Throws BoundaryPoleError at a pole.
std::vector<FiberValue> variety_fiber(const VarietyModel& model, Complex z1);

// Distance from z2 to the fiber over z1.
double membership_residual(const VarietyModel& model, Complex z1, Complex z2);

struct VarietyPoint {
  double theta = 0.0;
  Complex z1;
  Complex z2;
  SheetKind kind = SheetKind::V1;
  double residual = 0.0;  // sigma_min(Psi_j(z1) - z2 I)
};

struct VarietySample {
  std::vector<VarietyPoint> points;
  std::vector<double> theta_grid;
  std::vector<double> skipped_thetas;  // boundary poles
  std::size_t v0_count = 0;
  std::size_t v1_count = 0;
  double max_residual = 0.0;
};

// theta_k = 2 pi k / n_theta, k = 0..n_theta-1.
double grid_theta(std::size_t k, std::size_t n_theta);

// Points (e^{i theta}, z2) of the closure of V over the unit circle.
VarietySample boundary_samples(const VarietyModel& model, int n_theta);

struct JointEigenpair {
  Complex lambda1;  // T1^* v = conj(lambda1) v
  Complex lambda2;
  double eigvec_residual = 0.0;  // max_j ||T_j^* v - conj(lambda_j) v||
  bool verified = false;
  bool in_domain = false;  // |lambda1| < 1, so the fiber over lambda1 exists
  double residual = 0.0;   // membership residual, valid when in_domain
};

// Joint eigenvectors of (T1^*, T2^*) from the eigenvectors of T1^* + mu T2^*
// for a fixed generic mu, redrawn up to three times (deterministic seed) when
// a vector fails verification against both factors.
std::vector<JointEigenpair> joint_eig_membership(const ContractionPair& pair, const VarietyModel& model);

// Swap symmetry: samples points (z1, z2) of V over random z1 in the disc and
// measures the distance from z1 to the spectrum of Psi~(z2), where Psi~ comes
// from the colligation of (T2, T1). Requires both operators pure.
double symmetry_residual(const ContractionPair& pair, int n_samples, std::uint64_t seed = 42);

}  // namespace andovar

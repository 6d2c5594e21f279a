#pragma once

#include <string>
#include <vector>

#include "andovar/colligation.hpp"
#include "andovar/linalg.hpp"
#include "andovar/pair_analysis.hpp"
#include "andovar/transfer.hpp"

namespace andovar {

// The isometric dilation of a pure T1 realized on polynomials of degree <= N
// with coefficients in the defect space of T1 (fiber dimension r1).
//
// Coordinates are block rows k = 0..N, each of size r1:
//   pi     block k = E1^* D1 T1^{*k}      (Taylor coefficients of D1 (I - zT1^*)^{-1})
//   mz     exact block down-shift
//   mpsi   block lower-triangular Toeplitz with symbols Psi_0 = A^*,
//          Psi_q = C^* D^{*(q-1)} B^*
//
// Every identity that holds on the full Hardy space holds here up to a tail
// controlled by ||T1^{*(N+1)}||; the bounds are computed, not assumed.
struct TruncatedDilation {
  int degree = 0;  // N
  Eigen::Index fiber_dim = 0;  // r1
  ComplexMatrix pi;
  ComplexMatrix mz;
  ComplexMatrix mpsi;
  std::vector<ComplexMatrix> symbols;  // Psi_0..Psi_N
  Realization multiplier;  // realization of Psi the symbols were read from
  double tail_bound = 0.0;  // ||T1^{*(N+1)}||
  std::vector<std::string> warnings;

  Eigen::Index size() const { return static_cast<Eigen::Index>(degree + 1) * fiber_dim; }
};

inline constexpr Eigen::Index kLargeDilationRows = 100000;

// `degree` <= 0 selects truncation_degree(T1, tol_trunc).
TruncatedDilation build_dilation(const ContractionPair& pair, const Colligation& coll, int degree = 0);

struct IntertwiningResiduals {
  double res_z = 0.0;          // ||Pi T1^* - Mz^* Pi||
  double res_psi = 0.0;        // ||Pi T2^* - MPsi^* Pi||
  double bound_z = 0.0;        // ||D_{T1}|| ||T1^{*(N+1)}||
  double bound_psi = 0.0;      // ||D_{T2} T1^{*(N+1)}||
  double bound_psi_loose = 0.0;  // (N + 2) ||T1^{*(N+1)}||
};

IntertwiningResiduals intertwining_residuals(const TruncatedDilation& dil, const ContractionPair& pair);

struct CompressionResiduals {
  double shift = 0.0;      // ||Pi^* Mz Pi - T1||
  double multiplier = 0.0;  // ||Pi^* MPsi Pi - T2||
  double bound_shift = 0.0;       // ||T1^{N+1}|| ||T1^N||
  double bound_multiplier = 0.0;  // ||T2|| tail^2 + bound_psi ||Pi||
};

CompressionResiduals compression_residuals(const TruncatedDilation& dil, const ContractionPair& pair);

// ||Pi^* Pi - I_n||; equals tail_bound^2 in exact arithmetic.
double pi_isometry_residual(const TruncatedDilation& dil);

// ||[Mz, MPsi]||
double shift_multiplier_commutator(const TruncatedDilation& dil);

// (N + 1) r1 minus the numeric rank of [Pi, Mz Pi, ..., Mz^N Pi]. Singular
// values at or below rel_tol * sigma_max count as zero.
Eigen::Index minimality_defect(const TruncatedDilation& dil, double rel_tol = 1e-8);

struct MultiplierIsometry {
  double raw = 0.0;            // ||MPsi^* MPsi - I|| on the whole truncation
  double restricted = 0.0;     // same, on the leading `restricted_blocks` blocks
  Eigen::Index restricted_blocks = 0;
  int effective_symbol_count = 0;  // q_eff
  double symbol_tail = 0.0;    // bound on ||sum_{q >= q_eff} Psi_q^* Psi_q||^{1/2}
};

// The truncated Toeplitz operator is only isometric on blocks whose column
// still sees all significant symbols. With Psi_q = b d^{q-1} c for q >= 1 and
// a unitary realization, sum_{q' >= q} Psi_{q'}^* Psi_{q'} <= (d^{q-1} c)^* (d^{q-1} c),
// so ||d^{q-1} c|| bounds the symbol tail. q_eff is the smallest q whose
// bound is <= symbol_tol (no larger than N + 1); the restricted residual uses
// the first N + 1 - q_eff blocks.
MultiplierIsometry mpsi_isometry_residual(const TruncatedDilation& dil, double symbol_tol = 1e-9);

}  // namespace andovar

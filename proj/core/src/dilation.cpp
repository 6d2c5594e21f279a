#include "andovar/dilation.hpp"

#include <cmath>
#include <sstream>

#include "andovar/errors.hpp"
#include "andovar/transfer.hpp"

namespace andovar {

namespace {

ComplexMatrix matrix_power(const ComplexMatrix& m, int e) {
  ComplexMatrix result = linalg::identity(m.rows());
  ComplexMatrix base = m;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

}  // namespace

TruncatedDilation build_dilation(const ContractionPair& pair, const Colligation& coll, int degree) {
  pair.require_t1_pure("the isometric dilation");
  if (degree <= 0) {
    const TruncationDegree td = truncation_degree(pair.t1(), pair.tolerances().trunc, pair.tolerances().pure);
    if (td.capped) {
      throw ValidationError("truncation degree cap of " + std::to_string(kMaxTruncationDegree) +
                            " reached before ||T1^{*N}|| fell below tolerance");
    }
    degree = td.degree;
  }
  if (degree > kMaxTruncationDegree) {
    throw InputError("truncation degree " + std::to_string(degree) + " exceeds the cap of " +
                     std::to_string(kMaxTruncationDegree));
  }

  TruncatedDilation dil;
  dil.degree = degree;
  dil.fiber_dim = coll.r1();
  const Eigen::Index r1 = dil.fiber_dim;
  const Eigen::Index n = pair.dim();
  const Eigen::Index blocks = degree + 1;
  const Eigen::Index rows = blocks * r1;
  if (rows > kLargeDilationRows) {
    std::ostringstream os;
    os << "dense dilation has " << rows << " rows; expect large memory use";
    dil.warnings.push_back(os.str());
  }

  const ComplexMatrix t1s = pair.t1().adjoint();
  dil.pi.resize(rows, n);
  ComplexMatrix row = coll.defect1.coordinates();
  for (Eigen::Index k = 0; k < blocks; ++k) {
    dil.pi.middleRows(k * r1, r1) = row;
    row = row * t1s;
  }
  dil.tail_bound = linalg::operator_norm(matrix_power(t1s, degree + 1));

  dil.mz = ComplexMatrix::Zero(rows, rows);
  if (blocks > 1) dil.mz.bottomLeftCorner(rows - r1, rows - r1).setIdentity();

  dil.multiplier = realization_of(coll, Direction::Adjoint);
  dil.symbols = dil.multiplier.taylor_coefficients(static_cast<int>(blocks));
  dil.mpsi = ComplexMatrix::Zero(rows, rows);
  for (Eigen::Index i = 0; i < blocks; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      dil.mpsi.block(i * r1, j * r1, r1, r1) = dil.symbols[static_cast<std::size_t>(i - j)];
    }
  }
  return dil;
}

IntertwiningResiduals intertwining_residuals(const TruncatedDilation& dil, const ContractionPair& pair) {
  IntertwiningResiduals out;
  const ComplexMatrix t1s = pair.t1().adjoint();
  const ComplexMatrix t2s = pair.t2().adjoint();
  out.res_z = linalg::operator_norm(dil.pi * t1s - dil.mz.adjoint() * dil.pi);
  out.res_psi = linalg::operator_norm(dil.pi * t2s - dil.mpsi.adjoint() * dil.pi);
  const ComplexMatrix tail_power = matrix_power(t1s, dil.degree + 1);
  out.bound_z = linalg::operator_norm(pair.defect1().defect) * dil.tail_bound;
  out.bound_psi = linalg::operator_norm(pair.defect2().defect * tail_power);
  out.bound_psi_loose = static_cast<double>(dil.degree + 2) * dil.tail_bound;
  return out;
}

CompressionResiduals compression_residuals(const TruncatedDilation& dil, const ContractionPair& pair) {
  CompressionResiduals out;
  out.shift = linalg::operator_norm(dil.pi.adjoint() * dil.mz * dil.pi - pair.t1());
  out.multiplier = linalg::operator_norm(dil.pi.adjoint() * dil.mpsi * dil.pi - pair.t2());
  const double pow_n = linalg::operator_norm(matrix_power(pair.t1(), dil.degree));
  const double pow_n1 = linalg::operator_norm(matrix_power(pair.t1(), dil.degree + 1));
  out.bound_shift = pow_n1 * pow_n;
  const double bound_psi =
      linalg::operator_norm(pair.defect2().defect * matrix_power(pair.t1().adjoint(), dil.degree + 1));
  out.bound_multiplier = linalg::operator_norm(pair.t2()) * dil.tail_bound * dil.tail_bound +
                         bound_psi * linalg::operator_norm(dil.pi);
  return out;
}

double pi_isometry_residual(const TruncatedDilation& dil) {
  return linalg::operator_norm(dil.pi.adjoint() * dil.pi - linalg::identity(dil.pi.cols()));
}

double shift_multiplier_commutator(const TruncatedDilation& dil) {
  return linalg::operator_norm(dil.mz * dil.mpsi - dil.mpsi * dil.mz);
}

Eigen::Index minimality_defect(const TruncatedDilation& dil, double rel_tol) {
  const Eigen::Index rows = dil.size();
  if (rows == 0) return 0;
  const Eigen::Index n = dil.pi.cols();
  const Eigen::Index blocks = dil.degree + 1;
  // Mz^j Pi is Pi pushed down by j blocks.
  ComplexMatrix krylov = ComplexMatrix::Zero(rows, blocks * n);
  for (Eigen::Index j = 0; j < blocks; ++j) {
    const Eigen::Index shift = j * dil.fiber_dim;
    krylov.block(shift, j * n, rows - shift, n) = dil.pi.topRows(rows - shift);
  }
  const RealVector s = linalg::singular_values(krylov);
  if (s.size() == 0) return rows;
  const double cutoff = rel_tol * s(0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff) ++rank;
  }
  return rows - rank;
}

MultiplierIsometry mpsi_isometry_residual(const TruncatedDilation& dil, double symbol_tol) {
  MultiplierIsometry out;
  const Eigen::Index rows = dil.size();
  if (rows == 0) return out;
  const ComplexMatrix gram = dil.mpsi.adjoint() * dil.mpsi - linalg::identity(rows);
  out.raw = linalg::operator_norm(gram);

  const Realization& psi = dil.multiplier;
  const int blocks = dil.degree + 1;
  const double na = linalg::operator_norm(psi.a);
  const double nc = linalg::operator_norm(psi.c);
  int q_eff = blocks;
  double tail = 0.0;
  if (std::sqrt(na * na + nc * nc) <= symbol_tol) {
    q_eff = 0;
    tail = std::sqrt(na * na + nc * nc);
  } else {
    ComplexMatrix state = psi.c;
    for (int q = 1; q <= blocks; ++q) {
      tail = linalg::operator_norm(state);
      if (tail <= symbol_tol) {
        q_eff = q;
        break;
      }
      state = psi.d * state;
    }
  }
  out.symbol_tail = tail;
  out.effective_symbol_count = q_eff;
  out.restricted_blocks = static_cast<Eigen::Index>(dil.degree + 1 - q_eff);
  if (out.restricted_blocks > 0) {
    const Eigen::Index m = out.restricted_blocks * dil.fiber_dim;
    out.restricted = linalg::operator_norm(gram.topLeftCorner(m, m));
  }
  return out;
}

}  // namespace andovar

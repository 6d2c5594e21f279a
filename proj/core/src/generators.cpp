#include "andovar/generators.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

#include "andovar/errors.hpp"

namespace andovar {

PairKind parse_pair_kind(std::string_view name) {
  if (name == "diag") return PairKind::Diagonal;
  if (name == "jordan-poly") return PairKind::JordanPoly;
  if (name == "triangular-commuting") return PairKind::TriangularCommuting;
  throw InputError("unknown generator kind '" + std::string(name) +
                   "' (expected diag, jordan-poly or triangular-commuting)");
}

std::string_view to_string(PairKind kind) {
  switch (kind) {
    case PairKind::Diagonal: return "diag";
    case PairKind::JordanPoly: return "jordan-poly";
    case PairKind::TriangularCommuting: return "triangular-commuting";
  }
  return "?";
}

ComplexMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = Complex(normal(rng), normal(rng));
  return m;
}

ComplexMatrix random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
  const ComplexMatrix g = random_gaussian(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * linalg::identity(dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

namespace {

Complex random_in_disc(double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = radius * std::sqrt(unit(rng));
  const double phi = 2.0 * std::numbers::pi * unit(rng);
  return std::polar(r, phi);
}

ComplexMatrix rescale(const ComplexMatrix& m, double min_norm, double max_norm, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> target(min_norm, max_norm);
  const double t = target(rng);
  const double nrm = linalg::operator_norm(m);
  if (nrm == 0.0) return m;
  return m * (t / nrm);
}

ComplexMatrix shift_polynomial(Eigen::Index dim, std::mt19937_64& rng) {
  ComplexMatrix shift = ComplexMatrix::Zero(dim, dim);
  if (dim > 1) shift.diagonal(1).setOnes();
  ComplexMatrix power = linalg::identity(dim);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    out += random_in_disc(1.0, rng) * power;
    power = power * shift;
  }
  return out;
}

}  // namespace

GeneratedPair generate_pair(PairKind kind, Eigen::Index dim, std::uint64_t seed, double max_norm, double min_norm) {
  if (dim < 1) throw InputError("generator dimension must be positive");
  if (!(max_norm < 1.0) || !(min_norm > 0.0) || min_norm > max_norm) {
    throw InputError("generator norms must satisfy 0 < min_norm <= max_norm < 1");
  }
  std::mt19937_64 rng(seed);
  GeneratedPair out;
  switch (kind) {
    case PairKind::Diagonal: {
      out.t1 = ComplexMatrix::Zero(dim, dim);
      out.t2 = ComplexMatrix::Zero(dim, dim);
      for (Eigen::Index i = 0; i < dim; ++i) {
        out.t1(i, i) = random_in_disc(max_norm, rng);
        out.t2(i, i) = random_in_disc(max_norm, rng);
      }
      out.t1 = rescale(out.t1, min_norm, max_norm, rng);
      out.t2 = rescale(out.t2, min_norm, max_norm, rng);
      break;
    }
    case PairKind::JordanPoly: {
      ComplexMatrix cell = random_in_disc(0.6, rng) * linalg::identity(dim);
      if (dim > 1) cell.diagonal(1).setOnes();
      out.t1 = rescale(cell, min_norm, max_norm, rng);
      ComplexMatrix q = ComplexMatrix::Zero(dim, dim);
      ComplexMatrix power = linalg::identity(dim);
      for (int deg = 0; deg <= 3; ++deg) {
        q += random_in_disc(1.0, rng) * power;
        power = power * out.t1;
      }
      out.t2 = rescale(q, min_norm, max_norm, rng);
      break;
    }
    case PairKind::TriangularCommuting: {
      const ComplexMatrix a = shift_polynomial(dim, rng);
      const ComplexMatrix b = shift_polynomial(dim, rng);
      const ComplexMatrix u = random_unitary(dim, rng);
      out.t1 = rescale(u * a * u.adjoint(), min_norm, max_norm, rng);
      out.t2 = rescale(u * b * u.adjoint(), min_norm, max_norm, rng);
      break;
    }
  }
  return out;
}

}  // namespace andovar

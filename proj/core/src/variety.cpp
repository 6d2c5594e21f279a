#include "andovar/variety.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "andovar/errors.hpp"
#include "andovar/parallel.hpp"

namespace andovar {

const char* to_string(SheetKind kind) { return kind == SheetKind::V0 ? "V0" : "V1"; }

VarietyModel VarietyModel::from_colligation(const Colligation& coll, double tol_pure) {
  VarietyModel m;
  m.psi_ = realization_of(coll, Direction::Adjoint);
  m.split_ = canonical_split(m.psi_.a, tol_pure);
  m.psi_cnu_ = cnu_realization(m.psi_, m.split_);
  return m;
}

std::vector<FiberValue> variety_fiber(const VarietyModel& model, Complex z1) {
  std::vector<FiberValue> out;
  out.reserve(static_cast<std::size_t>(model.fiber_size()));
  if (model.psi_cnu().outer_dim() > 0) {
    const ComplexVector vals = linalg::eigenvalues(model.psi_cnu().evaluate(z1));
    for (Eigen::Index i = 0; i < vals.size(); ++i) out.push_back({vals(i), SheetKind::V1});
  }
  for (Eigen::Index i = 0; i < model.split().lambda.size(); ++i) {
    out.push_back({model.split().lambda(i), SheetKind::V0});
  }
  return out;
}

double membership_residual(const VarietyModel& model, Complex z1, Complex z2) {
  double best = std::numeric_limits<double>::infinity();
  for (const FiberValue& f : variety_fiber(model, z1)) best = std::min(best, std::abs(z2 - f.z2));
  return best;
}

double grid_theta(std::size_t k, std::size_t n_theta) {
  return (2.0 * std::numbers::pi * static_cast<double>(k)) / static_cast<double>(n_theta);
}

namespace {

double smallest_singular_value(const ComplexMatrix& m) {
  const RealVector s = linalg::singular_values(m);
  return s.size() ? s(s.size() - 1) : 0.0;
}

struct ThetaSlot {
  std::vector<VarietyPoint> points;
  bool skipped = false;
};

}  // namespace

VarietySample boundary_samples(const VarietyModel& model, int n_theta) {
  if (n_theta < 1) throw InputError("boundary_samples: n_theta must be at least 1");
  const auto n = static_cast<std::size_t>(n_theta);
  std::vector<ThetaSlot> slots(n);
  const Eigen::Index k1 = model.psi_cnu().outer_dim();
  const CanonicalSplit& split = model.split();

  parallel_for(n, [&](std::size_t idx) {
    const double theta = grid_theta(idx, n);
    const Complex z1 = std::polar(1.0, theta);
    ThetaSlot& slot = slots[idx];
    if (k1 > 0) {
      ComplexMatrix value;
      try {
        value = model.psi_cnu().evaluate(z1);
      } catch (const BoundaryPoleError&) {
        slot.skipped = true;
        return;
      }
      const ComplexVector vals = linalg::eigenvalues(value);
      for (Eigen::Index i = 0; i < vals.size(); ++i) {
        const double res = smallest_singular_value(value - vals(i) * linalg::identity(k1));
        slot.points.push_back({theta, z1, vals(i), SheetKind::V1, res});
      }
    }
    for (Eigen::Index i = 0; i < split.lambda.size(); ++i) {
      const double res = smallest_singular_value(split.w - split.lambda(i) * linalg::identity(split.k()));
      slot.points.push_back({theta, z1, split.lambda(i), SheetKind::V0, res});
    }
  });

  VarietySample out;
  out.theta_grid.reserve(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    out.theta_grid.push_back(grid_theta(idx, n));
    if (slots[idx].skipped) {
      out.skipped_thetas.push_back(grid_theta(idx, n));
      continue;
    }
    for (const VarietyPoint& p : slots[idx].points) {
      (p.kind == SheetKind::V0 ? out.v0_count : out.v1_count)++;
      out.max_residual = std::max(out.max_residual, p.residual);
      out.points.push_back(p);
    }
  }
  return out;
}

std::vector<JointEigenpair> joint_eig_membership(const ContractionPair& pair, const VarietyModel& model) {
  const ComplexMatrix t1s = pair.t1().adjoint();
  const ComplexMatrix t2s = pair.t2().adjoint();
  const double tol1 = 1e-8 * std::max(1.0, pair.report().norms[0]);
  const double tol2 = 1e-8 * std::max(1.0, pair.report().norms[1]);

  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Complex mu(0.7548776662466927, 0.5698402909980532);

  std::vector<JointEigenpair> out;
  for (int attempt = 0; attempt < 4; ++attempt) {
    if (attempt > 0) mu = Complex(unit(rng), unit(rng));
    const linalg::Eigensystem es = linalg::eig(t1s + mu * t2s);
    out.clear();
    bool all_ok = true;
    for (Eigen::Index j = 0; j < es.vectors.cols(); ++j) {
      const ComplexVector v = es.vectors.col(j);
      const Complex rho1 = v.dot(t1s * v);
      const Complex rho2 = v.dot(t2s * v);
      const double e1 = (t1s * v - rho1 * v).norm();
      const double e2 = (t2s * v - rho2 * v).norm();
      JointEigenpair jp;
      jp.lambda1 = std::conj(rho1);
      jp.lambda2 = std::conj(rho2);
      jp.eigvec_residual = std::max(e1, e2);
      jp.verified = e1 <= tol1 && e2 <= tol2;
      all_ok = all_ok && jp.verified;
      out.push_back(jp);
    }
    if (all_ok) break;
  }
  for (JointEigenpair& jp : out) {
    jp.in_domain = std::abs(jp.lambda1) < 1.0;
    jp.residual = jp.in_domain ? membership_residual(model, jp.lambda1, jp.lambda2)
                               : std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

double symmetry_residual(const ContractionPair& pair, int n_samples, std::uint64_t seed) {
  if (!pair.t1_pure() || !pair.t2_pure()) {
    throw ValidationError("swap symmetry of the variety requires both operators to be pure");
  }
  if (n_samples < 1) throw InputError("symmetry_residual: n_samples must be positive");
  const ContractionPair swapped = pair.swapped();
  const VarietyModel model = VarietyModel::from_colligation(build_colligation(pair), pair.tolerances().pure);
  const VarietyModel model_swapped =
      VarietyModel::from_colligation(build_colligation(swapped), pair.tolerances().pure);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  double worst = 0.0;
  for (int s = 0; s < n_samples; ++s) {
    const Complex z1 = std::polar(0.95 * std::sqrt(radius(rng)), angle(rng));
    for (const FiberValue& f : variety_fiber(model, z1)) {
      worst = std::max(worst, membership_residual(model_swapped, f.z2, z1));
    }
  }
  return worst;
}

}  // namespace andovar

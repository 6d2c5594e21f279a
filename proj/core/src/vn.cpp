#include "andovar/vn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <numbers>
#include <sstream>

#include "andovar/colligation.hpp"
#include "andovar/errors.hpp"
#include "andovar/parallel.hpp"

namespace andovar {

BivariatePolynomial::BivariatePolynomial(std::vector<std::vector<Complex>> coeffs) : coeffs_(std::move(coeffs)) {
  normalize();
}

BivariatePolynomial BivariatePolynomial::constant(Complex c) { return BivariatePolynomial({{c}}); }
BivariatePolynomial BivariatePolynomial::z1() { return BivariatePolynomial({{Complex(0.0)}, {Complex(1.0)}}); }
BivariatePolynomial BivariatePolynomial::z2() { return BivariatePolynomial({{Complex(0.0), Complex(1.0)}}); }

void BivariatePolynomial::normalize() {
  if (coeffs_.empty()) coeffs_.push_back({Complex(0.0)});
  std::size_t width = 1;
  for (const auto& row : coeffs_) width = std::max(width, row.size());
  for (auto& row : coeffs_) {
    row.resize(width, Complex(0.0));
    for (const Complex& c : row) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw InputError("polynomial has non-finite coefficients");
      }
    }
  }
  auto zero = [](const Complex& c) { return c == Complex(0.0); };
  while (coeffs_.size() > 1 && std::all_of(coeffs_.back().begin(), coeffs_.back().end(), zero)) coeffs_.pop_back();
  while (coeffs_.front().size() > 1) {
    bool last_zero = true;
    for (const auto& row : coeffs_) last_zero = last_zero && zero(row.back());
    if (!last_zero) break;
    for (auto& row : coeffs_) row.pop_back();
  }
}

Complex BivariatePolynomial::coefficient(int j, int k) const {
  if (j < 0 || k < 0 || j > degree1() || k > degree2()) return Complex(0.0);
  return coeffs_[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
}

Complex BivariatePolynomial::operator()(Complex z1, Complex z2) const {
  Complex acc(0.0);
  for (auto row = coeffs_.rbegin(); row != coeffs_.rend(); ++row) {
    Complex inner(0.0);
    for (auto c = row->rbegin(); c != row->rend(); ++c) inner = inner * z2 + *c;
    acc = acc * z1 + inner;
  }
  return acc;
}

double BivariatePolynomial::lipschitz_bound() const {
  double l = 0.0;
  for (int j = 0; j <= degree1(); ++j) {
    for (int k = 0; k <= degree2(); ++k) l += std::abs(coefficient(j, k)) * static_cast<double>(j + k);
  }
  return l;
}

BivariatePolynomial BivariatePolynomial::operator+(const BivariatePolynomial& o) const {
  const int d1 = std::max(degree1(), o.degree1());
  const int d2 = std::max(degree2(), o.degree2());
  std::vector<std::vector<Complex>> c(static_cast<std::size_t>(d1 + 1),
                                      std::vector<Complex>(static_cast<std::size_t>(d2 + 1)));
  for (int j = 0; j <= d1; ++j)
    for (int k = 0; k <= d2; ++k) c[j][k] = coefficient(j, k) + o.coefficient(j, k);
  return BivariatePolynomial(std::move(c));
}

BivariatePolynomial BivariatePolynomial::operator-(const BivariatePolynomial& o) const {
  return *this + o * Complex(-1.0);
}

BivariatePolynomial BivariatePolynomial::operator*(const BivariatePolynomial& o) const {
  const int d1 = degree1() + o.degree1();
  const int d2 = degree2() + o.degree2();
  std::vector<std::vector<Complex>> c(static_cast<std::size_t>(d1 + 1),
                                      std::vector<Complex>(static_cast<std::size_t>(d2 + 1)));
  for (int j = 0; j <= degree1(); ++j)
    for (int k = 0; k <= degree2(); ++k)
      for (int a = 0; a <= o.degree1(); ++a)
        for (int b = 0; b <= o.degree2(); ++b) c[j + a][k + b] += coefficient(j, k) * o.coefficient(a, b);
  return BivariatePolynomial(std::move(c));
}

BivariatePolynomial BivariatePolynomial::operator*(Complex s) const {
  auto c = coeffs_;
  for (auto& row : c)
    for (auto& x : row) x *= s;
  return BivariatePolynomial(std::move(c));
}

ComplexMatrix eval_poly_pair(const BivariatePolynomial& p, const ComplexMatrix& t1, const ComplexMatrix& t2) {
  linalg::require_square(t1, "T1");
  linalg::require_square(t2, "T2");
  if (t1.rows() != t2.rows()) throw InputError("eval_poly_pair: dimension mismatch");
  const Eigen::Index n = t1.rows();
  const ComplexMatrix id = linalg::identity(n);
  const auto& c = p.coefficients();
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  for (auto row = c.rbegin(); row != c.rend(); ++row) {
    ComplexMatrix inner = ComplexMatrix::Zero(n, n);
    for (auto coef = row->rbegin(); coef != row->rend(); ++coef) inner = t2 * inner + *coef * id;
    acc = t1 * acc + inner;
  }
  return acc;
}

SupEstimate sup_on_variety(const BivariatePolynomial& p, const VarietyModel& model, const VarietySupOptions& opts) {
  if (opts.n_theta < 1) throw InputError("sup_on_variety: n_theta must be at least 1");
  for (double r : opts.v0_interior_radii) {
    if (!(r > 0.0 && r < 1.0)) throw InputError("sup_on_variety: interior radii must lie in (0, 1)");
  }
  const auto n = static_cast<std::size_t>(opts.n_theta);
  const Eigen::Index k1 = model.psi_cnu().outer_dim();
  const ComplexVector& lambdas = model.split().lambda;

  std::vector<double> best(n, 0.0);
  std::vector<char> skipped(n, 0);
  parallel_for(n, [&](std::size_t idx) {
    const double theta = grid_theta(idx, n);
    const Complex z1 = std::polar(1.0, theta);
    double m = 0.0;
    for (Eigen::Index i = 0; i < lambdas.size(); ++i) {
      m = std::max(m, std::abs(p(z1, lambdas(i))));
      for (double r : opts.v0_interior_radii) m = std::max(m, std::abs(p(r * z1, lambdas(i))));
    }
    if (k1 > 0) {
      try {
        const ComplexVector vals = linalg::eigenvalues(model.psi_cnu().evaluate(z1));
        for (Eigen::Index i = 0; i < vals.size(); ++i) m = std::max(m, std::abs(p(z1, vals(i))));
      } catch (const BoundaryPoleError&) {
        skipped[idx] = 1;
      }
    }
    best[idx] = m;
  });

  SupEstimate out;
  out.grid = n;
  for (std::size_t idx = 0; idx < n; ++idx) {
    if (skipped[idx]) {
      ++out.skipped;
      if (lambdas.size() == 0) continue;
    }
    ++out.evaluated;
    out.value = std::max(out.value, best[idx]);
  }
  if (out.evaluated == 0) throw NumericError("sup_on_variety: every sample hit a boundary pole");
  out.slack = p.lipschitz_bound() * (2.0 * std::numbers::pi / static_cast<double>(n)) + 1e-9;
  return out;
}

SupEstimate sup_on_bidisc(const BivariatePolynomial& p, int n_grid) {
  const int needed = 4 * (p.degree1() + p.degree2());
  if (n_grid < std::max(needed, 1)) {
    std::ostringstream os;
    os << "sup_on_bidisc: grid " << n_grid << " below the required " << needed;
    throw InputError(os.str());
  }
  const auto n = static_cast<std::size_t>(n_grid);
  std::vector<Complex> circle(n);
  for (std::size_t i = 0; i < n; ++i) circle[i] = std::polar(1.0, grid_theta(i, n));

  const int d1 = p.degree1();
  const int d2 = p.degree2();
  std::vector<double> best(n, 0.0);
  parallel_for(n, [&](std::size_t a) {
    // q_k(z1) = sum_j c_jk z1^j, then Horner in z2.
    std::vector<Complex> q(static_cast<std::size_t>(d2 + 1));
    for (int k = 0; k <= d2; ++k) {
      Complex acc(0.0);
      for (int j = d1; j >= 0; --j) acc = acc * circle[a] + p.coefficient(j, k);
      q[static_cast<std::size_t>(k)] = acc;
    }
    double m = 0.0;
    for (std::size_t b = 0; b < n; ++b) {
      Complex acc(0.0);
      for (int k = d2; k >= 0; --k) acc = acc * circle[b] + q[static_cast<std::size_t>(k)];
      m = std::max(m, std::abs(acc));
    }
    best[a] = m;
  });
  SupEstimate out;
  out.grid = n;
  out.evaluated = n * n;
  out.value = *std::max_element(best.begin(), best.end());
  out.slack = p.lipschitz_bound() * (std::numbers::pi / static_cast<double>(n)) + 1e-9;
  return out;
}

VNReport vn_report(const ContractionPair& pair, const BivariatePolynomial& p, const VNOptions& opts) {
  pair.require_t1_pure("the von Neumann certification");
  VNReport rep;
  rep.n_theta = opts.n_theta;
  rep.torus_grid = opts.torus_grid;
  rep.pair_digest = pair_digest(pair.t1(), pair.t2());
  rep.lhs = linalg::operator_norm(eval_poly_pair(p, pair.t1(), pair.t2()));

  const VarietyModel model = VarietyModel::from_colligation(build_colligation(pair), pair.tolerances().pure);
  rep.unitary_part_dim = model.split().k();
  const SupEstimate var = sup_on_variety(p, model, {opts.n_theta, opts.v0_interior_radii});
  const SupEstimate bid = sup_on_bidisc(p, opts.torus_grid);
  rep.sup_variety = var.value;
  rep.sup_bidisc = bid.value;
  rep.skipped_thetas = var.skipped;
  rep.slack = var.slack;
  rep.margin_variety = rep.sup_variety - rep.lhs;
  rep.margin_bidisc = rep.sup_bidisc - rep.sup_variety;
  rep.chain_holds = rep.lhs <= rep.sup_variety + rep.slack && rep.sup_variety <= rep.sup_bidisc + rep.slack;
  if (!rep.chain_holds && opts.fail_on_violation) {
    std::ostringstream os;
    os.precision(17);
    os << "inequality chain violated beyond slack " << rep.slack << ": lhs " << rep.lhs << ", sup over variety "
       << rep.sup_variety << ", sup over torus " << rep.sup_bidisc;
    throw NumericError(os.str());
  }
  return rep;
}

std::string pair_digest(const ComplexMatrix& t1, const ComplexMatrix& t2) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ull;
    }
  };
  for (const ComplexMatrix* m : {&t1, &t2}) {
    const std::int64_t dims[2] = {static_cast<std::int64_t>(m->rows()), static_cast<std::int64_t>(m->cols())};
    mix(dims, sizeof(dims));
    for (Eigen::Index i = 0; i < m->rows(); ++i) {
      for (Eigen::Index j = 0; j < m->cols(); ++j) {
        const double parts[2] = {(*m)(i, j).real(), (*m)(i, j).imag()};
        mix(parts, sizeof(parts));
      }
    }
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

}  // namespace andovar

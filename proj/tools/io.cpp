#include "io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace andovar::io {

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const PairReport& r) {
  return Json{
      {"dim", r.dim},
      {"commutes", r.commutes},
      {"commute_residual", r.commute_residual},
      {"commute_tolerance", r.commute_tolerance},
      {"contractive", {r.contractive[0], r.contractive[1]}},
      {"norms", {r.norms[0], r.norms[1]}},
      {"spectral_radii", {r.spectral_radii[0], r.spectral_radii[1]}},
      {"pure", {r.pure[0], r.pure[1]}},
      {"defect_ranks", {r.defect_ranks[0], r.defect_ranks[1]}},
      {"valid", r.valid()},
  };
}

Json to_json(const Colligation& c) {
  return Json{
      {"r1", c.r1()},
      {"r2", c.r2()},
      {"forced_rank", c.forced_rank},
      {"A", to_json(c.a)},
      {"B", to_json(c.b)},
      {"C", to_json(c.c)},
      {"D", to_json(c.d)},
      {"basis1", to_json(c.defect1.basis)},
      {"basis2", to_json(c.defect2.basis)},
      {"unitarity_residual", c.unitarity_residual()},
  };
}

Json to_json(const VNReport& r) {
  return Json{
      {"lhs", r.lhs},
      {"sup_variety", r.sup_variety},
      {"sup_bidisc", r.sup_bidisc},
      {"slack", r.slack},
      {"chain_holds", r.chain_holds},
      {"margins", {{"variety_minus_lhs", r.margin_variety}, {"bidisc_minus_variety", r.margin_bidisc}}},
      {"grids", {{"n_theta", r.n_theta}, {"torus_grid", r.torus_grid}}},
      {"skipped_thetas", r.skipped_thetas},
      {"unitary_part_dim", r.unitary_part_dim},
      {"pair_digest", r.pair_digest},
  };
}

Json to_json(const BivariatePolynomial& p) {
  Json rows = Json::array();
  for (const auto& row : p.coefficients()) {
    Json r = Json::array();
    for (const Complex& c : row) r.push_back(to_json(c));
    rows.push_back(std::move(r));
  }
  return Json{{"coeffs", std::move(rows)}};
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InputError("complex entries must be [re, im] pairs of numbers");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

ComplexMatrix matrix_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.empty()) throw InputError(std::string(what) + ": expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array()) throw InputError(std::string(what) + ": rows must be arrays");
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw InputError(std::string(what) + ": ragged rows");
    }
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  linalg::require_finite(m, what);
  return m;
}

PairInput pair_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("T1") || !j.contains("T2")) {
    throw InputError("pair file must be an object with keys T1 and T2");
  }
  PairInput in{matrix_from_json(j["T1"], "T1"), matrix_from_json(j["T2"], "T2")};
  linalg::require_square(in.t1, "T1");
  linalg::require_square(in.t2, "T2");
  if (in.t1.rows() != in.t2.rows()) throw InputError("T1 and T2 have different sizes");
  if (j.contains("n")) {
    if (!j["n"].is_number_integer() || j["n"].get<long long>() != in.t1.rows()) {
      throw InputError("field n does not match the matrix size");
    }
  }
  return in;
}

BivariatePolynomial polynomial_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].empty()) {
    throw InputError("polynomial file must be an object with a non-empty coeffs array");
  }
  std::vector<std::vector<Complex>> c;
  for (const Json& row : j["coeffs"]) {
    if (!row.is_array()) throw InputError("coeffs rows must be arrays");
    std::vector<Complex> r;
    for (const Json& x : row) r.push_back(complex_from_json(x));
    c.push_back(std::move(r));
  }
  return BivariatePolynomial(std::move(c));
}

Json pair_to_json(const ComplexMatrix& t1, const ComplexMatrix& t2) {
  return Json{{"n", t1.rows()}, {"T1", to_json(t1)}, {"T2", to_json(t2)}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

PairInput read_pair_file(const std::string& path) { return pair_from_json(read_json_file(path)); }

BivariatePolynomial read_polynomial_file(const std::string& path) {
  return polynomial_from_json(read_json_file(path));
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_variety_csv(std::ostream& out, const VarietySample& sample) {
  out << "theta,re_z1,im_z1,re_z2,im_z2,kind,residual\n";
  for (const VarietyPoint& p : sample.points) {
    out << format_double(p.theta) << ',' << format_double(p.z1.real()) << ',' << format_double(p.z1.imag()) << ','
        << format_double(p.z2.real()) << ',' << format_double(p.z2.imag()) << ',' << to_string(p.kind) << ','
        << format_double(p.residual) << '\n';
  }
}

namespace {

constexpr double kPanel = 360.0;
constexpr double kMargin = 30.0;

// Maps [-1.1, 1.1]^2 onto a panel with its left edge at x0.
std::string point(double x0, Complex z) {
  const double s = (kPanel - 2 * kMargin) / 2.2;
  const double cx = x0 + kPanel / 2.0 + s * z.real();
  const double cy = kPanel / 2.0 - s * z.imag();
  char buf[64];
  std::snprintf(buf, sizeof(buf), "cx=\"%.3f\" cy=\"%.3f\"", cx, cy);
  return buf;
}

void panel(std::ostream& out, double x0, const char* title) {
  const double s = (kPanel - 2 * kMargin) / 2.2;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.3f\" fill=\"none\" stroke=\"#999\"/>\n"
                "<text x=\"%.3f\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">%s</text>\n",
                x0 + kPanel / 2.0, kPanel / 2.0, s, x0 + kPanel / 2.0, title);
  out << buf;
}

}  // namespace

void write_variety_svg(std::ostream& out, const VarietySample& sample) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * kPanel << "\" height=\"" << kPanel << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  panel(out, 0.0, "z1");
  panel(out, kPanel, "z2");
  // Hue follows theta so a fiber value can be matched to its z1; V0 points get a dark ring.
  for (const VarietyPoint& p : sample.points) {
    char style[96];
    std::snprintf(style, sizeof style, "fill=\"hsl(%d,70%%,45%%)\"%s",
                  static_cast<int>(std::lround(p.theta * 180.0 / std::numbers::pi)) % 360,
                  p.kind == SheetKind::V0 ? " stroke=\"black\" stroke-width=\"0.6\"" : "");
    out << "<circle " << point(0.0, p.z1) << " r=\"1.5\" " << style << "/>\n";
    out << "<circle " << point(kPanel, p.z2) << " r=\"1.5\" " << style << "/>\n";
  }
  out << "</svg>\n";
}

}  // namespace andovar::io

#pragma once

// File formats of the andovar tool.
//
//   pair file        {"n": 2, "T1": [[[re, im], ...], ...], "T2": [...]}
//   polynomial file  {"coeffs": [[[re, im], ...], ...]}  c[j][k] multiplies z1^j z2^k
//
// Reports are JSON objects; variety samples are CSV with the columns
// theta,re_z1,im_z1,re_z2,im_z2,kind,residual or a static two-panel SVG.

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "andovar/andovar.hpp"

namespace andovar::io {

using Json = nlohmann::json;

struct PairInput {
  ComplexMatrix t1;
  ComplexMatrix t2;
};

Json to_json(Complex z);
Json to_json(const ComplexMatrix& m);
Json to_json(const PairReport& r);
Json to_json(const Colligation& c);
Json to_json(const VNReport& r);
Json to_json(const BivariatePolynomial& p);

// Throw InputError on any schema violation.
Complex complex_from_json(const Json& j);
ComplexMatrix matrix_from_json(const Json& j, const char* what);
PairInput pair_from_json(const Json& j);
BivariatePolynomial polynomial_from_json(const Json& j);

Json pair_to_json(const ComplexMatrix& t1, const ComplexMatrix& t2);

// Read and parse a file; parse failures and missing files raise InputError.
Json read_json_file(const std::string& path);
PairInput read_pair_file(const std::string& path);
BivariatePolynomial read_polynomial_file(const std::string& path);

// Shortest round-trip decimal for doubles ("%.17g").
std::string format_double(double x);

void write_variety_csv(std::ostream& out, const VarietySample& sample);
void write_variety_svg(std::ostream& out, const VarietySample& sample);

}  // namespace andovar::io

// Copyright 2026 The twinhs developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "twinhs/json_io.hpp"

#include <fstream>
#include <sstream>

namespace twinhs {

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json rvector_to_json(const RVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

namespace {

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw std::invalid_argument(
      "matrix entries must be [re, im] pairs (or plain numbers)");
}

}  // namespace

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw std::invalid_argument("matrix must be a nested array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols)
      throw std::invalid_argument("matrix rows have inconsistent lengths");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  if (!all_finite(m))
    throw std::invalid_argument("matrix has non-finite entries");
  return m;
}

BipartiteState state_from_json(const Json& j, double tol) {
  if (!j.is_object() || !j.contains("d1") || !j.contains("d2") ||
      !j.contains("matrix"))
    throw std::invalid_argument("state file needs fields d1, d2, matrix");
  const auto d1 = j["d1"].get<Eigen::Index>();
  const auto d2 = j["d2"].get<Eigen::Index>();
  return BipartiteState(d1, d2, matrix_from_json(j["matrix"]), tol);
}

HermOp hermop_from_json(const Json& j, double tol) {
  const Json* mat = nullptr;
  if (j.is_object() && j.contains("matrix")) mat = &j["matrix"];
  else if (j.is_array()) mat = &j;
  else
    throw std::invalid_argument("operator file needs a matrix field");
  HermOp op = HermOp::symmetrized(matrix_from_json(*mat), tol);
  if (j.is_object() && j.contains("dim") &&
      j["dim"].get<Eigen::Index>() != op.dim())
    throw std::invalid_argument("operator dim field disagrees with the matrix");
  return op;
}

SeparableDecomp decomp_from_json(const Json& j, double tol) {
  const Json* arr = &j;
  if (j.is_object() && j.contains("terms")) arr = &j["terms"];
  if (!arr->is_array() || arr->empty())
    throw std::invalid_argument(
        "decomposition file must be a list of {w, rho1, rho2}");
  std::vector<SeparableDecomp::Term> terms;
  for (const Json& t : *arr) {
    if (!t.is_object() || !t.contains("w") || !t.contains("rho1") ||
        !t.contains("rho2"))
      throw std::invalid_argument("each term needs fields w, rho1, rho2");
    terms.push_back({t["w"].get<double>(),
                     HermOp::symmetrized(matrix_from_json(t["rho1"]), tol),
                     HermOp::symmetrized(matrix_from_json(t["rho2"]), tol)});
  }
  return SeparableDecomp::make(std::move(terms), tol);
}

Json state_to_json(const BipartiteState& s) {
  Json j;
  j["d1"] = s.d1();
  j["d2"] = s.d2();
  j["matrix"] = matrix_to_json(s.rho());
  return j;
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream os;
  os << "fnv1a:" << std::hex << h;
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace twinhs

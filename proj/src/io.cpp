// Copyright 2026 The qgraph Authors
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

#include "qgraph/io.hpp"

#include <fstream>
#include <sstream>

namespace qgraph {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

std::complex<double> complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    parse_fail("complex numbers must be [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array()) parse_fail("matrices must be arrays of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) parse_fail("ragged matrix rows");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

GraphFile parse_graph(const json& j) {
  GraphFile f;
  try {
    f.blocks = field(j, "blocks").get<std::vector<int>>();
    f.psi = field(j, "psi").get<std::vector<std::vector<double>>>();
  } catch (const json::exception& e) {
    parse_fail(e.what());
  }
  f.adjacency = matrix_from_json(field(j, "adjacency"));
  if (j.contains("tol")) {
    if (!j["tol"].is_number()) parse_fail("\"tol\" must be a number");
    f.tol = j["tol"].get<double>();
  }
  return f;
}

json to_json(const GraphFile& g) {
  json j{{"blocks", g.blocks}, {"psi", g.psi}, {"adjacency", matrix_to_json(g.adjacency)}};
  if (g.tol) j["tol"] = *g.tol;
  return j;
}

GraphFile graph_file_of(const QuantumGraph& g) {
  return {g.structure().sizes(), g.psi().weights(), g.adjacency().matrix(), std::nullopt};
}

QuantumGraph to_graph(const GraphFile& f, std::optional<double> tol_override) {
  const double tol = tol_override.value_or(f.tol.value_or(kDefaultTolerance));
  BlockStructure s(f.blocks);
  DeltaState psi(s, f.psi, tol);
  return QuantumGraph(psi, LinearMapOnB(s, f.adjacency), tol);
}

FamilyFile parse_family(const json& j) {
  FamilyFile f;
  const auto& k = field(j, "k");
  if (!k.is_number_integer() || k.get<long long>() < 0) parse_fail("\"k\" must be a non-negative integer");
  f.k = k.get<Eigen::Index>();
  const auto& images = field(j, "images");
  if (!images.is_array()) parse_fail("\"images\" must be an array");
  for (const auto& m : images) {
    f.images.push_back(matrix_from_json(m));
    if (f.images.back().rows() != f.k || f.images.back().cols() != f.k)
      throw Error(ErrorCode::ShapeMismatch, "family images must be k x k");
  }
  return f;
}

json to_json(const FamilyFile& f) {
  json images = json::array();
  for (const auto& m : f.images) images.push_back(matrix_to_json(m));
  return {{"k", f.k}, {"images", images}};
}

FamilyFile family_file_of(const CKFamily& s) { return {s.k(), s.images()}; }

CKFamily to_family(const FamilyFile& f, const BlockStructure& s) { return CKFamily(s, f.k, f.images); }

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    parse_fail(path + ": " + e.what());
  }
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace qgraph

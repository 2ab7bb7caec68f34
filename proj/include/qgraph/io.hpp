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

#ifndef QGRAPH_IO_HPP
#define QGRAPH_IO_HPP

// JSON documents for graphs and families. Complex numbers are [re, im] pairs,
// matrices are arrays of rows, and coordinates follow the canonical unit order.
//
//   graph:  {"blocks": [2], "psi": [[0.5, 0.5]], "adjacency": [[[1,0], ...], ...], "tol": 1e-9}
//   family: {"k": 2, "images": [ <k x k matrix per unit> ]}

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgraph/qck.hpp"
#include "qgraph/quantum_graph.hpp"

namespace qgraph {

struct GraphFile {
  std::vector<int> blocks;
  std::vector<std::vector<double>> psi;
  Matrix adjacency;
  std::optional<double> tol;
};

struct FamilyFile {
  Eigen::Index k = 0;
  std::vector<Matrix> images;
};

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

GraphFile parse_graph(const nlohmann::json& j);
nlohmann::json to_json(const GraphFile& g);
GraphFile graph_file_of(const QuantumGraph& g);
/// Validates into a graph; tolerance from the file unless overridden.
QuantumGraph to_graph(const GraphFile& f, std::optional<double> tol_override = std::nullopt);

FamilyFile parse_family(const nlohmann::json& j);
nlohmann::json to_json(const FamilyFile& f);
FamilyFile family_file_of(const CKFamily& s);
CKFamily to_family(const FamilyFile& f, const BlockStructure& s);

/// Reads and parses a JSON document; failures raise ParseError.
nlohmann::json read_json(const std::string& path);
void write_json(const std::string& path, const nlohmann::json& j);

}  // namespace qgraph

#endif  // QGRAPH_IO_HPP

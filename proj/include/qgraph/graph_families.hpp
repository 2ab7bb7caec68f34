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

#ifndef QGRAPH_GRAPH_FAMILIES_HPP
#define QGRAPH_GRAPH_FAMILIES_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qgraph/core_algebra.hpp"
#include "qgraph/qck.hpp"
#include "qgraph/quantum_graph.hpp"

namespace qgraph {

/// A(x) = delta^2 psi(x) 1.
QuantumGraph complete_graph(const DeltaState& psi);

/// A = id.
QuantumGraph trivial_graph(const DeltaState& psi);

/// Names the Cuntz-Pimsner algebra of the trivial graph's edge correspondence.
std::string trivial_structure_report(const BlockStructure& s);

/// A(x) = T x T^*, requiring Tr(rho_a^{-1} T_a^* T_a) = delta^2 on every block.
QuantumGraph rank_one_graph(const DeltaState& psi, const AlgebraElement& t, double tol = kDefaultTolerance);

/// max || sum_k f_ik S f_kj - Tr(rho^{-1} S) f_ij || over one block.
double rank_one_kernel_residual(const DeltaState& psi, int block, const Matrix& s);

struct AutomorphismSpec {
  std::vector<int> block_permutation;  // block a is carried onto block_permutation[a]
  std::vector<Matrix> unitaries;       // indexed by target block; empty means identities
};

struct AutomorphismResult {
  QuantumGraph graph;
  std::vector<std::vector<int>> cycles;
  std::string report;
};

/// alpha(x)_{pi(a)} = U_{pi(a)} x_a U_{pi(a)}^*.
AutomorphismResult automorphism_graph(const DeltaState& psi, const AutomorphismSpec& spec,
                                      double tol = kDefaultTolerance);

/// The map matrix of the automorphism, with no state checks.
Matrix automorphism_matrix(const BlockStructure& s, const AutomorphismSpec& spec);

/// B = C^|V| with the uniform state; adj(x, y) = 1 marks an edge x -> y and
/// A(p_y) = sum_x adj(x, y) p_x.
QuantumGraph classical_graph(const Eigen::MatrixXd& adj);

enum class CanonicalKind { Trivial, RankOne };

/// s(x) = delta^-2 L_{x T^*} (x) u on C^{dim B} (x) C^k, L the left regular
/// representation on standard coordinates. Checked against the local relations.
CKFamily canonical_lqck_family(CanonicalKind kind, const DeltaState& psi, const AlgebraElement& t, const Matrix& u);

}  // namespace qgraph

#endif  // QGRAPH_GRAPH_FAMILIES_HPP

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

#ifndef QGRAPH_QUANTUM_GRAPH_HPP
#define QGRAPH_QUANTUM_GRAPH_HPP

#include <vector>

#include <Eigen/Dense>

#include "qgraph/core_algebra.hpp"

namespace qgraph {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// A linear map on B, stored as its matrix on standard-unit coordinates.
class LinearMapOnB {
 public:
  LinearMapOnB() = default;
  LinearMapOnB(BlockStructure s, Matrix m);

  static LinearMapOnB identity(const BlockStructure& s);

  const BlockStructure& structure() const { return structure_; }
  const Matrix& matrix() const { return matrix_; }
  AlgebraElement operator()(const AlgebraElement& x) const;

  /// Coefficients in the adapted basis: A(f_p) = sum_q adapted(q, p) f_q.
  Matrix adapted_matrix(const DeltaState& psi) const;

 private:
  BlockStructure structure_;
  Matrix matrix_;
};

/// ||m (A (x) A) m^* - delta^2 A||_F over the standard basis.
double schur_residual(const DeltaState& psi, const LinearMapOnB& a);

class QuantumGraph {
 public:
  QuantumGraph() = default;
  /// Throws NotQuantumAdjacency when the Schur residual exceeds tol.
  QuantumGraph(DeltaState psi, LinearMapOnB adjacency, double tol = kDefaultTolerance);

  const BlockStructure& structure() const { return psi_.structure(); }
  const DeltaState& psi() const { return psi_; }
  const LinearMapOnB& adjacency() const { return adjacency_; }
  double schur_residual() const { return schur_residual_; }
  double tolerance() const { return tol_; }

 private:
  DeltaState psi_;
  LinearMapOnB adjacency_;
  double schur_residual_ = 0;
  double tol_ = kDefaultTolerance;
};

/// delta^{-2} (1 (x) A) m^*(1).
TensorElement edge_indicator(const QuantumGraph& g);

double sharp_idempotency_residual(const TensorElement& xi);
/// ||X - X^dagger|| with X = (sigma_{i/2} (x) 1)(xi).
double modular_self_adjoint_residual(const TensorElement& xi, const DeltaState& psi);

struct IndicatorReport {
  double action = 0;       // max_x ||A(x) - delta^2 (psi (x) 1)(x . eps)||
  double idempotency = 0;  // ||eps # eps - eps||
  double modular = 0;      // modular self-adjointness defect
};

IndicatorReport indicator_properties(const QuantumGraph& g);

struct ChoiReport {
  bool completely_positive = false;
  double min_eigenvalue = 0;
  double max_abs_eigenvalue = 0;
};

/// Per block-pair Choi positivity with cutoff -rel_tol * max |eigenvalue|.
ChoiReport is_completely_positive(const DeltaState& psi, const LinearMapOnB& a, double rel_tol = 1e-10);

/// x -> delta^2 (psi (x) 1)(x . xi), after checking the indicator conditions.
LinearMapOnB adjacency_from_indicator(const TensorElement& xi, const DeltaState& psi,
                                      double tol = kDefaultTolerance);

/// The candidate map with no precondition checks.
LinearMapOnB slice_adjacency(const TensorElement& xi, const DeltaState& psi);

struct SourceSinkReport {
  std::vector<int> sources;
  std::vector<int> sinks;
};

SourceSinkReport quantum_sources_sinks(const QuantumGraph& g);

/// Adjoint with respect to <x, y> = psi(x^* y).
LinearMapOnB adjoint_map(const LinearMapOnB& a, const DeltaState& psi);

/// Blocks where some column of `generators` has a component above tol.
std::vector<int> generated_block_ideal(const BlockStructure& s, const Matrix& generators, double tol);

struct HomomorphismReport {
  double multiplicativity = 0;  // max ||A(xy) - A(x)A(y)||
  double indicator_shift = 0;   // max ||(xy).eps - x.eps.A(y)||
};

/// Throws NotCompletelyPositive.
HomomorphismReport homomorphism_check(const QuantumGraph& g);

/// theta: B1 -> B2 (x) M_h, with theta(e_p) = sum_q e_q (x) block(p, q).
class AmplifiedMap {
 public:
  AmplifiedMap() = default;
  AmplifiedMap(BlockStructure source, BlockStructure target, int h);

  /// theta(x) = alpha(x) (x) 1_h for a linear map alpha : B1 -> B2.
  static AmplifiedMap from_map(const BlockStructure& source, const BlockStructure& target, const Matrix& alpha);

  const BlockStructure& source() const { return source_; }
  const BlockStructure& target() const { return target_; }
  int h() const { return h_; }
  const Matrix& block(Eigen::Index p, Eigen::Index q) const;
  Matrix& block(Eigen::Index p, Eigen::Index q);

 private:
  BlockStructure source_;
  BlockStructure target_;
  int h_ = 1;
  std::vector<Matrix> blocks_;
};

struct IsomorphismReport {
  double homomorphism = 0;  // multiplicativity, unitality and *-preservation
  double state = 0;         // (psi2 (x) id) theta - psi1(.) 1
  double adjacency = 0;     // (A2 (x) id) theta - theta A1
};

IsomorphismReport quantum_isomorphism_residual(const QuantumGraph& g1, const QuantumGraph& g2,
                                               const AmplifiedMap& theta);

/// Same residuals with raw state weights; no delta-form requirement.
IsomorphismReport quantum_isomorphism_residual(const std::vector<std::vector<double>>& psi1, const LinearMapOnB& a1,
                                               const std::vector<std::vector<double>>& psi2, const LinearMapOnB& a2,
                                               const AmplifiedMap& theta);

}  // namespace qgraph

#endif  // QGRAPH_QUANTUM_GRAPH_HPP

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

#ifndef QGRAPH_CORRESPONDENCE_HPP
#define QGRAPH_CORRESPONDENCE_HPP

// Finite-dimensional C*-correspondences over (B, psi).
//
// A module is described by a spanning family v_1..v_m inside some ambient
// coordinate space together with its B-valued semi-inner product and the two
// actions on spanning coordinates. The quotient by the Gram kernel of
// psi(<., .>_B) yields an orthonormal basis, so adjoints of module operators
// are plain conjugate transposes in basis coordinates.

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qgraph/core_algebra.hpp"
#include "qgraph/quantum_graph.hpp"

namespace qgraph {

inline constexpr double kGramCutoff = 1e-10;

struct SpanningSystem {
  DeltaState psi;
  Eigen::Index size = 0;
  std::vector<Matrix> inner;  // per unit t: coordinate t of <v_i, v_j>_B
  std::vector<Matrix> left;   // per unit p: e_p . v_j = sum_i left[p](i, j) v_i
  std::vector<Matrix> right;  // per unit p: v_j . e_p = sum_i right[p](i, j) v_i
};

class Correspondence {
 public:
  Correspondence() = default;

  /// Quotient of span(generators) (all of the spanning space when empty) by
  /// the kernel of psi(<., .>_B), with relative eigenvalue cutoff.
  static Correspondence quotient(const SpanningSystem& sys, const std::optional<Matrix>& generators = std::nullopt,
                                 double cutoff = kGramCutoff);

  /// Assemble directly from basis data; used for interior tensor products.
  Correspondence(DeltaState psi, Matrix embedding, Matrix projection, std::vector<Matrix> inner,
                 std::vector<Matrix> left, std::vector<Matrix> right);

  const DeltaState& psi() const { return psi_; }
  const BlockStructure& structure() const { return psi_.structure(); }
  Eigen::Index dim() const { return embedding_.cols(); }
  Eigen::Index ambient_dim() const { return embedding_.rows(); }

  /// Ambient coordinates of the basis vectors, one per column.
  const Matrix& embedding() const { return embedding_; }
  /// Basis coordinates of an ambient vector lying in the module.
  const Matrix& projection() const { return projection_; }
  Vector coords_of(const Vector& ambient) const { return projection_ * ambient; }

  const Matrix& inner(Eigen::Index t) const { return inner_.at(static_cast<std::size_t>(t)); }
  const Matrix& left(Eigen::Index p) const { return left_.at(static_cast<std::size_t>(p)); }
  const Matrix& right(Eigen::Index p) const { return right_.at(static_cast<std::size_t>(p)); }

  Matrix left_action(const AlgebraElement& x) const;
  Matrix right_action(const AlgebraElement& x) const;
  AlgebraElement b_inner(const Vector& xi, const Vector& eta) const;

 private:
  DeltaState psi_;
  Matrix embedding_;
  Matrix projection_;
  std::vector<Matrix> inner_;
  std::vector<Matrix> left_;
  std::vector<Matrix> right_;
};

struct CorrVector {
  Vector coords;
};

AlgebraElement b_inner(const CorrVector& xi, const CorrVector& eta, const Correspondence& e);

/// theta_{u,v}(xi) = u . <v, xi>_B as a matrix on basis coordinates.
Matrix compact_operator(const Correspondence& e, const Vector& u, const Vector& v);

/// B (x)_psi B with <a (x) b, c (x) d>_B = psi(a^* c) b^* d; ambient index p * dim + q.
SpanningSystem tensor_psi_system(const DeltaState& psi);

/// B as a correspondence over itself, <x, y>_B = x^* y.
Correspondence trivial_correspondence(const DeltaState& psi);

/// E_G inside B (x)_psi B, spanned by e_p . eps . e_q. Throws NotCompletelyPositive.
Correspondence build_edge_correspondence(const QuantumGraph& g);

/// Module generated by an arbitrary tensor inside B (x)_psi B.
Correspondence generated_submodule(const TensorElement& xi, const DeltaState& psi);

/// Basis coordinates of x . t . y for t in the ambient B (x) B.
Vector tensor_coords(const Correspondence& e, const TensorElement& t);

struct LeftKernelReport {
  Matrix kernel;                  // standard coordinates, one basis vector per column
  Eigen::Index kernel_dim = 0;
  std::vector<int> ideal_blocks;  // blocks of B A^*(B) B
  Eigen::Index complement_dim = 0;
  double distance = 0;            // spectral norm of the projector difference
};

LeftKernelReport left_kernel(const QuantumGraph& g);
LeftKernelReport left_kernel(const QuantumGraph& g, const Correspondence& e);

struct FullnessReport {
  std::vector<int> blocks;
  bool full = false;
};

FullnessReport fullness_ideal(const QuantumGraph& g);

double compact_decomposition_residual(const QuantumGraph& g);
double compact_decomposition_residual(const QuantumGraph& g, const Correspondence& e);

struct CpCorrespondenceReport {
  Correspondence model;         // B (x)_A B
  Eigen::Index edge_dim = 0;
  Eigen::Index model_dim = 0;
  Matrix isomorphism;           // E_G basis coordinates -> model basis coordinates
  double residual = 0;
};

/// B (x)_A B with <a (x) b, c (x) d>_B = b^* A(a^* c) d. Throws NotCompletelyPositive.
CpCorrespondenceReport cp_correspondence(const QuantumGraph& g);

struct RecognitionResult {
  QuantumGraph graph;
  Correspondence edge;
  Matrix isomorphism;  // module basis coordinates -> E_G basis coordinates
  double residual = 0;
};

/// A(x) = delta^2 <xi, x . xi>_B for a cyclic vector of a given module.
RecognitionResult recognize(const Correspondence& x, const CorrVector& xi, double tol = kDefaultTolerance);

/// A(x) = delta^2 (psi (x) 1)(x . xi) for a tensor, inside B xi B.
RecognitionResult recognize(const TensorElement& xi, const DeltaState& psi, double tol = kDefaultTolerance);

}  // namespace qgraph

#endif  // QGRAPH_CORRESPONDENCE_HPP

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

#ifndef QGRAPH_QCK_HPP
#define QGRAPH_QCK_HPP

// Quantum Cuntz-Krieger relation residuals for concrete families s : B -> M_k.
//
// Every evaluator accepts an optional window: a list of coordinates of C^k.
// When non-empty, each residual R is replaced by P R P with P the coordinate
// projection onto the window before its norm is taken.

#include <algorithm>
#include <vector>

#include <Eigen/Dense>

#include "qgraph/core_algebra.hpp"
#include "qgraph/quantum_graph.hpp"

namespace qgraph {

using Window = std::vector<Eigen::Index>;

class CKFamily {
 public:
  CKFamily() = default;
  /// images[p] = s(e_p) on the standard units.
  CKFamily(BlockStructure s, Eigen::Index k, std::vector<Matrix> images);

  static CKFamily zero(const BlockStructure& s, Eigen::Index k);

  const BlockStructure& structure() const { return structure_; }
  Eigen::Index k() const { return k_; }
  const std::vector<Matrix>& images() const { return images_; }
  const Matrix& image(Eigen::Index p) const { return images_.at(static_cast<std::size_t>(p)); }

  Matrix operator()(const AlgebraElement& x) const;
  /// s^*(x) = s(x^*)^*.
  Matrix star(const AlgebraElement& x) const;
  /// s(f_p) for the adapted unit f_p.
  Matrix adapted(Eigen::Index p, const DeltaState& psi) const;

 private:
  BlockStructure structure_;
  Eigen::Index k_ = 0;
  std::vector<Matrix> images_;
};

struct QckReport {
  double qck1 = 0;
  double qck2 = 0;
  double qck3 = 0;
  double max() const { return std::max({qck1, qck2, qck3}); }
};

struct LqckReport {
  double lqck1 = 0;     // adapted-unit form, max over index tuples
  double lqck2 = 0;
  double lqck3 = 0;
  double agreement = 0; // adapted versus coordinate-free evaluation
  double max() const { return std::max({lqck1, lqck2, lqck3}); }
};

/// Norm of P r P for a window P (the plain Frobenius norm when empty).
double windowed_norm(const Matrix& r, const Window& window);

/// x -> mu(s (x) s^*) m^*(x), the map underlying several relations.
Matrix comultiplied_square(const CKFamily& s, const DeltaState& psi, Eigen::Index p);

QckReport qck_residuals(const CKFamily& s, const QuantumGraph& g, const Window& window = {});
LqckReport lqck_residuals(const CKFamily& s, const QuantumGraph& g, const Window& window = {});

struct ClassicalReport {
  double partial_isometry = 0;  // max_i ||S_i S_i^* S_i - S_i||
  double cuntz_krieger = 0;     // max_i ||S_i^* S_i - sum_j A(j, i) S_j S_j^*||
  double range_sum = 0;         // ||sum_i S_i S_i^* - 1||
  QckReport qck;                // residuals of the rescaled family s(e_i) = S_i / N
  bool consistent = false;      // CK residuals vanish iff QCK residuals vanish
};

/// S_i = N s(e_i). Requires singleton blocks and uniform psi (NotClassical).
ClassicalReport classical_reduction(const QuantumGraph& g, const CKFamily& s, const Window& window = {},
                                    double tol = kDefaultTolerance);

/// s(e_i) = S_i / N for a Cuntz-Krieger family on the vertices.
CKFamily family_from_ck(const QuantumGraph& g, const std::vector<Matrix>& partial_isometries);

}  // namespace qgraph

#endif  // QGRAPH_QCK_HPP

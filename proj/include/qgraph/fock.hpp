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

#ifndef QGRAPH_FOCK_HPP
#define QGRAPH_FOCK_HPP

// Interior tensor powers of E_G and the truncated Fock module
// F_N = B (+) E (+) E^{(x)2} (+) ... (+) E^{(x)N}, level n = E (x)_B level n-1.

#include <map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qgraph/correspondence.hpp"
#include "qgraph/qck.hpp"
#include "qgraph/quantum_graph.hpp"

namespace qgraph {

inline constexpr Eigen::Index kFockBudget = 5000;
/// Largest spanning family an interior product may materialize densely.
inline constexpr Eigen::Index kSpanningCap = 2048;

/// X (x)_B Y on the spanning family basis(X) x basis(Y), index alpha * dim Y + beta.
Correspondence interior_tensor(const Correspondence& x, const Correspondence& y, double cutoff = kGramCutoff);

/// max_p || xi . e_p (x) eta - xi (x) e_p . eta || in the quotient.
double balanced_residual(const Correspondence& x, const Correspondence& y, const Correspondence& xy);

/// Operator on the truncation, stored as blocks between levels.
class FockOperator {
 public:
  FockOperator() = default;
  explicit FockOperator(std::vector<Eigen::Index> level_dims);

  const std::vector<Eigen::Index>& level_dims() const { return dims_; }
  Eigen::Index total_dim() const;
  const std::map<std::pair<int, int>, Matrix>& blocks() const { return blocks_; }

  /// Block mapping level `from` into level `to`; created as zero on first access.
  Matrix& block(int to, int from);
  const Matrix* find(int to, int from) const;

  Matrix dense() const;
  FockOperator adjoint() const;

  friend FockOperator operator*(const FockOperator& l, const FockOperator& r);
  friend FockOperator operator+(const FockOperator& l, const FockOperator& r);
  friend FockOperator operator-(const FockOperator& l, const FockOperator& r);
  friend FockOperator operator*(std::complex<double> c, FockOperator op);

 private:
  std::vector<Eigen::Index> dims_;
  std::map<std::pair<int, int>, Matrix> blocks_;
};

class FockTruncation {
 public:
  /// Throws HasQuantumSource, NotCompletelyPositive, BudgetExceeded.
  FockTruncation(QuantumGraph g, int levels);

  const QuantumGraph& graph() const { return graph_; }
  int levels() const { return static_cast<int>(levels_.size()) - 1; }
  const Correspondence& edge() const { return edge_; }
  const Correspondence& level(int n) const { return levels_.at(static_cast<std::size_t>(n)); }
  std::vector<Eigen::Index> level_dims() const;
  Eigen::Index total_dim() const;

  /// T(xi) : eta -> xi (x) eta, zero on the top level; xi in E basis coordinates.
  FockOperator creation(const Vector& xi) const;
  FockOperator creation_basis(Eigen::Index alpha) const;
  /// pi(x), the diagonal left action.
  FockOperator left_action(const AlgebraElement& x) const;

  /// Dense coordinates of levels first..last.
  Window window(int first, int last) const;

 private:
  QuantumGraph graph_;
  Correspondence edge_;
  std::vector<Correspondence> levels_;
  std::vector<std::vector<Matrix>> creation_;  // [n][alpha]: level n -> level n+1
};

FockTruncation build_fock(const QuantumGraph& g, int levels);

struct RepresentationReport {
  double inner = 0;             // T(xi)^* T(eta) - pi(<xi, eta>), levels 0..N-1
  double covariance = 0;        // pi(x) - psi_t(phi(x)), levels 1..N-1
  double vacuum_defect = 0;     // the same difference on level 0
  double expansion = 0;         // fit of phi(x) by rank-one compacts
  double unital = 0;            // pi(1) - 1
  double multiplicativity = 0;  // pi(xy) - pi(x) pi(y) and pi(x^*) - pi(x)^*
};

RepresentationReport representation_residuals(const FockTruncation& f);

struct LqckFockReport {
  std::vector<Eigen::Index> level_dims;
  LqckReport interior;
  LqckReport with_vacuum;
  QckReport qck_interior;
  double toeplitz_inner = 0;    // T^*(x) T(y) - delta^-2 pi(A(xy))
  double toeplitz_compact = 0;  // mu(T (x) T^*) m^*(x) - pi(x)
};

/// The family S(x) = delta^-1 T(x . eps) on the truncation as dense matrices.
CKFamily fock_family(const FockTruncation& f);

LqckFockReport lqck_fock_residuals(const QuantumGraph& g, int levels);
LqckFockReport lqck_fock_residuals(const FockTruncation& f);

}  // namespace qgraph

#endif  // QGRAPH_FOCK_HPP

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

#ifndef QGRAPH_TESTS_FIXTURES_HPP
#define QGRAPH_TESTS_FIXTURES_HPP

#include <cmath>
#include <random>
#include <vector>

#include "qgraph/core_algebra.hpp"
#include "qgraph/quantum_graph.hpp"

namespace fixtures {

using qgraph::AlgebraElement;
using qgraph::BlockStructure;
using qgraph::DeltaState;
using qgraph::Matrix;

inline DeltaState uniform(int n) { return qgraph::tracial_delta_form(BlockStructure(std::vector<int>(n, 1))); }
inline DeltaState tracial_m2() { return DeltaState(BlockStructure({2}), {{0.5, 0.5}}); }
/// rho = diag(1/3, 2/3), delta^2 = 9/2.
inline DeltaState skew_m2() { return DeltaState(BlockStructure({2}), {{1.0 / 3, 2.0 / 3}}); }
inline DeltaState tracial_m2_m2() { return DeltaState(BlockStructure({2, 2}), {{0.25, 0.25}, {0.25, 0.25}}); }

/// M_2 (+) C, non-tracial on the matrix block, delta^2 = 6.
inline DeltaState mixed_m2_c() {
  // w1 + w2 = 5/6 and 1/w1 + 1/w2 = 6, so w1 w2 = 5/36
  const double disc = std::sqrt(25.0 / 36 - 20.0 / 36);
  const double w1 = (5.0 / 6 - disc) / 2, w2 = (5.0 / 6 + disc) / 2;
  return DeltaState(BlockStructure({2, 1}), {{w1, w2}, {1.0 / 6}});
}

inline std::mt19937& rng() {
  static std::mt19937 gen(424242u);
  return gen;
}

inline Matrix random_matrix(Eigen::Index r, Eigen::Index c) {
  std::normal_distribution<double> g;
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = {g(rng()), g(rng())};
  return m;
}

inline AlgebraElement random_element(const BlockStructure& s) {
  std::vector<Matrix> blocks;
  for (int n : s.sizes()) blocks.push_back(random_matrix(n, n));
  return AlgebraElement(std::move(blocks));
}

inline Matrix random_unitary(int n) {
  Eigen::HouseholderQR<Matrix> qr(random_matrix(n, n));
  return qr.householderQ() * Matrix::Identity(n, n);
}

}  // namespace fixtures

#endif  // QGRAPH_TESTS_FIXTURES_HPP

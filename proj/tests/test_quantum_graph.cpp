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

#include <catch_amalgamated.hpp>

#include <numeric>

#include "fixtures.hpp"
#include "qgraph/graph_families.hpp"
#include "qgraph/quantum_graph.hpp"

using namespace qgraph;

namespace {

/// Scales T blockwise so that Tr(rho_a^-1 T_a^* T_a) = delta^2.
AlgebraElement normalized(const DeltaState& psi, AlgebraElement t) {
  for (int a = 0; a < psi.structure().num_blocks(); ++a) {
    double tr = 0;
    for (int i = 0; i < psi.structure().size(a); ++i) tr += t.block(a).col(i).squaredNorm() / psi.weight(a, i);
    t.block(a) *= std::sqrt(psi.delta_sq() / tr);
  }
  return t;
}

std::vector<QuantumGraph> family_graphs() {
  std::vector<QuantumGraph> out;
  for (const auto& psi : {fixtures::uniform(3), fixtures::tracial_m2(), fixtures::skew_m2(), fixtures::mixed_m2_c()}) {
    out.push_back(complete_graph(psi));
    out.push_back(trivial_graph(psi));
    out.push_back(rank_one_graph(psi, normalized(psi, fixtures::random_element(psi.structure()))));
  }
  Eigen::MatrixXd cyc(3, 3);
  cyc << 0, 1, 0, 0, 0, 1, 1, 0, 0;
  out.push_back(classical_graph(cyc));
  Eigen::MatrixXd dense(3, 3);
  dense << 1, 1, 0, 1, 0, 1, 0, 1, 1;
  out.push_back(classical_graph(dense));
  AutomorphismSpec swap{{1, 0}, {fixtures::random_unitary(2), fixtures::random_unitary(2)}};
  out.push_back(automorphism_graph(fixtures::tracial_m2_m2(), swap).graph);
  Matrix phase = Matrix::Identity(2, 2);
  phase(1, 1) = std::polar(1.0, 0.7);
  out.push_back(automorphism_graph(fixtures::skew_m2(), AutomorphismSpec{{0}, {phase}}).graph);
  return out;
}

Matrix transpose_map(int n) {
  Matrix m = Matrix::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(j * n + i, i * n + j) = 1.0;
  return m;
}

}  // namespace

TEST_CASE("schur residual examples", "[quantum_graph]") {
  auto psi = fixtures::mixed_m2_c();
  const auto& s = psi.structure();
  CHECK(schur_residual(psi, complete_graph(psi).adjacency()) < 1e-9);
  CHECK(schur_residual(psi, LinearMapOnB::identity(s)) < 1e-9);
  const LinearMapOnB twice(s, 2.0 * Matrix::Identity(s.dim(), s.dim()));
  const double want = 2.0 * psi.delta_sq() * std::sqrt(double(s.dim()));
  CHECK(schur_residual(psi, twice) == Catch::Approx(want).epsilon(1e-9));
  CHECK_THROWS_AS(QuantumGraph(psi, twice), Error);
  CHECK_THROWS_AS(schur_residual(psi, LinearMapOnB::identity(BlockStructure({2}))), Error);
  for (const auto& g : family_graphs()) CHECK(g.schur_residual() < 1e-9);
}

TEST_CASE("edge indicator examples", "[quantum_graph]") {
  SECTION("complete graph gives 1 (x) 1") {
    auto psi = fixtures::mixed_m2_c();
    const auto one = AlgebraElement::identity(psi.structure());
    CHECK((edge_indicator(complete_graph(psi)) - TensorElement::simple(psi.structure(), one, one)).norm() < 1e-12);
  }
  SECTION("classical graph gives the edge set") {
    Eigen::MatrixXd adj(3, 3);
    adj << 0, 1, 1, 0, 0, 1, 1, 0, 0;
    const auto eps = edge_indicator(classical_graph(adj));
    // coefficient of p_v (x) p_w is 1 iff w -> v
    CHECK((eps.coeffs().real() - adj.transpose()).norm() < 1e-12);
    CHECK(eps.coeffs().imag().norm() < 1e-15);
  }
  SECTION("trivial graph gives delta^-2 m^*(1)") {
    auto psi = fixtures::skew_m2();
    const auto want = (1.0 / psi.delta_sq()) * comultiply(AlgebraElement::identity(psi.structure()), psi);
    CHECK((edge_indicator(trivial_graph(psi)) - want).norm() < 1e-12);
  }
}

TEST_CASE("indicator properties", "[quantum_graph]") {
  auto tr = fixtures::tracial_m2();
  AlgebraElement t = AlgebraElement::zero(tr.structure());
  t.block(0)(0, 0) = std::sqrt(2.0);
  const auto r = indicator_properties(rank_one_graph(tr, t));
  CHECK(r.action < 1e-9);
  CHECK(r.idempotency < 1e-9);
  CHECK(r.modular < 1e-9);

  Eigen::MatrixXd adj(2, 2);
  adj << 1, 1, 0, 1;
  const auto c = indicator_properties(classical_graph(adj));
  CHECK(c.action < 1e-12);
  CHECK(c.idempotency < 1e-12);
  CHECK(c.modular < 1e-12);

  for (const auto& g : family_graphs()) {
    const auto p = indicator_properties(g);
    CHECK(p.action < 1e-9);
    CHECK(p.idempotency < 1e-9);
  }
}

TEST_CASE("complete positivity", "[quantum_graph]") {
  auto tr = fixtures::tracial_m2();
  const auto transpose = is_completely_positive(tr, LinearMapOnB(tr.structure(), transpose_map(2)));
  CHECK_FALSE(transpose.completely_positive);
  CHECK(transpose.min_eigenvalue == Catch::Approx(-1.0).margin(1e-12));

  Eigen::MatrixXd adj(3, 3);
  adj << 0, 1, 1, 1, 0, 0, 0, 1, 1;
  CHECK(is_completely_positive(fixtures::uniform(3), classical_graph(adj).adjacency()).completely_positive);

  auto mixed = fixtures::mixed_m2_c();
  CHECK(is_completely_positive(mixed, rank_one_graph(mixed, normalized(mixed, fixtures::random_element(mixed.structure())))
                                          .adjacency())
            .completely_positive);

  // brute-force Choi on M_2 for a Kraus sum, by explicit block assembly
  const Matrix k1 = fixtures::random_matrix(2, 2), k2 = fixtures::random_matrix(2, 2);
  Matrix m(4, 4);
  for (int p = 0; p < 4; ++p) {
    Matrix e = Matrix::Zero(2, 2);
    e(p / 2, p % 2) = 1.0;
    const Matrix img = k1 * e * k1.adjoint() - k2 * e * k2.adjoint();
    for (int q = 0; q < 4; ++q) m(q, p) = img(q / 2, q % 2);
  }
  Matrix choi = Matrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) choi(i * 2 + r, j * 2 + c) = m(r * 2 + c, i * 2 + j);
  const double oracle = Eigen::SelfAdjointEigenSolver<Matrix>(choi).eigenvalues().minCoeff();
  const auto rep = is_completely_positive(tr, LinearMapOnB(tr.structure(), m));
  CHECK(rep.min_eigenvalue == Catch::Approx(oracle).margin(1e-10));
  CHECK(rep.completely_positive == (oracle >= -1e-10 * rep.max_abs_eigenvalue));
}

TEST_CASE("CP test agrees with the modular criterion", "[quantum_graph]") {
  for (const auto& g : family_graphs()) {
    const bool choi = is_completely_positive(g.psi(), g.adjacency()).completely_positive;
    const bool modular = indicator_properties(g).modular < 1e-9;
    CHECK(choi == modular);
  }
}

TEST_CASE("adjacency from indicator", "[quantum_graph]") {
  auto psi = fixtures::mixed_m2_c();
  const auto& s = psi.structure();
  const auto one = AlgebraElement::identity(s);
  const auto complete = adjacency_from_indicator(TensorElement::simple(s, one, one), psi);
  CHECK((complete.matrix() - complete_graph(psi).adjacency().matrix()).norm() < 1e-9);

  for (const auto& g : family_graphs()) {
    const auto eps = edge_indicator(g);
    const auto a = adjacency_from_indicator(eps, g.psi());
    CHECK((a.matrix() - g.adjacency().matrix()).norm() < 1e-9);
    CHECK((edge_indicator(QuantumGraph(g.psi(), a)) - eps).norm() < 1e-9);
  }

  auto tr = fixtures::tracial_m2();
  const auto bad = TensorElement::simple(tr.structure(), AlgebraElement::unit(tr.structure(), 0, 0, 0),
                                         AlgebraElement::unit(tr.structure(), 0, 0, 1));
  try {
    adjacency_from_indicator(bad, tr);
    FAIL("expected NotIdempotent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotIdempotent);
  }
}

TEST_CASE("quantum sources and sinks", "[quantum_graph]") {
  Eigen::MatrixXd adj(2, 2);
  adj << 0, 1, 0, 0;
  const auto r = quantum_sources_sinks(classical_graph(adj));
  CHECK(r.sources == std::vector<int>{0});
  CHECK(r.sinks == std::vector<int>{1});

  const auto c = quantum_sources_sinks(complete_graph(fixtures::mixed_m2_c()));
  CHECK(c.sources.empty());
  CHECK(c.sinks.empty());

  Eigen::MatrixXd loop(2, 2);
  loop << 1, 0, 0, 0;
  const auto l = quantum_sources_sinks(classical_graph(loop));
  CHECK(l.sources == std::vector<int>{1});
  CHECK(l.sinks == std::vector<int>{1});
}

TEST_CASE("adjoint map", "[quantum_graph]") {
  auto psi = fixtures::mixed_m2_c();
  const auto& s = psi.structure();
  const auto id = LinearMapOnB::identity(s);
  CHECK((adjoint_map(id, psi).matrix() - id.matrix()).norm() < 1e-12);
  const auto k = complete_graph(psi).adjacency();
  CHECK((adjoint_map(k, psi).matrix() - k.matrix()).norm() < 1e-9);

  Eigen::MatrixXd adj(3, 3);
  adj << 0, 1, 1, 0, 0, 1, 1, 0, 0;
  const auto g = classical_graph(adj);
  CHECK((adjoint_map(g.adjacency(), g.psi()).matrix() - g.adjacency().matrix().transpose()).norm() < 1e-12);

  const LinearMapOnB a(s, fixtures::random_matrix(s.dim(), s.dim()));
  const auto as = adjoint_map(a, psi);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = fixtures::random_element(s), y = fixtures::random_element(s);
    const auto lhs = gns_inner(a(x), y, psi), rhs = gns_inner(x, as(y), psi);
    CHECK(std::abs(lhs - rhs) < 1e-10 * (1 + std::abs(lhs)));
  }
}

TEST_CASE("generated block ideal", "[quantum_graph]") {
  BlockStructure s({2, 1, 1});
  Matrix gens = Matrix::Zero(s.dim(), 2);
  gens(1, 0) = 1.0;
  gens(5, 1) = 0.5;
  CHECK(generated_block_ideal(s, gens, 1e-9) == std::vector<int>{0, 2});
  CHECK(generated_block_ideal(s, Matrix::Zero(s.dim(), 1), 1e-9).empty());
}

TEST_CASE("homomorphism check", "[quantum_graph]") {
  auto psi = fixtures::mixed_m2_c();
  const auto t = homomorphism_check(trivial_graph(psi));
  CHECK(t.multiplicativity < 1e-12);
  CHECK(t.indicator_shift < 1e-12);

  AutomorphismSpec swap{{1, 0}, {fixtures::random_unitary(2), fixtures::random_unitary(2)}};
  const auto a = homomorphism_check(automorphism_graph(fixtures::tracial_m2_m2(), swap).graph);
  CHECK(a.multiplicativity < 1e-9);
  CHECK(a.indicator_shift < 1e-9);

  const auto k = homomorphism_check(complete_graph(psi));
  CHECK(k.multiplicativity > 1e-3);
  CHECK(k.indicator_shift > 1e-3);

  // the two residuals vanish together
  for (const auto& g : family_graphs()) {
    const auto h = homomorphism_check(g);
    CHECK((h.multiplicativity < 1e-9) == (h.indicator_shift < 1e-9));
  }
}

TEST_CASE("quantum isomorphism covariance", "[quantum_graph]") {
  auto psi = fixtures::mixed_m2_c();
  const auto g = rank_one_graph(psi, normalized(psi, fixtures::random_element(psi.structure())));
  const auto id = AmplifiedMap::from_map(g.structure(), g.structure(), Matrix::Identity(g.structure().dim(), g.structure().dim()));
  const auto same = quantum_isomorphism_residual(g, g, id);
  CHECK(same.homomorphism < 1e-12);
  CHECK(same.state < 1e-12);
  CHECK(same.adjacency < 1e-12);

  Eigen::MatrixXd adj1(4, 4);
  adj1 << 0, 1, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 1, 0;
  const std::vector<int> pi{2, 0, 3, 1};
  Eigen::MatrixXd adj2 = Eigen::MatrixXd::Zero(4, 4);
  Matrix alpha = Matrix::Zero(4, 4);
  for (int x = 0; x < 4; ++x) {
    alpha(pi[x], x) = 1.0;
    for (int y = 0; y < 4; ++y) adj2(pi[x], pi[y]) = adj1(x, y);
  }
  const auto g1 = classical_graph(adj1), g2 = classical_graph(adj2);
  const auto theta = AmplifiedMap::from_map(g1.structure(), g2.structure(), alpha);
  const auto perm = quantum_isomorphism_residual(g1, g2, theta);
  CHECK(perm.homomorphism < 1e-12);
  CHECK(perm.state < 1e-12);
  CHECK(perm.adjacency < 1e-12);

  const std::vector<std::vector<double>> uniform4(4, {0.25});
  const std::vector<std::vector<double>> skewed{{0.1}, {0.2}, {0.3}, {0.4}};
  const auto off = quantum_isomorphism_residual(uniform4, g1.adjacency(), skewed, g2.adjacency(), theta);
  CHECK(off.state > 1e-3);
  CHECK(off.homomorphism < 1e-12);

  // a non-multiplicative theta is flagged
  const auto broken = AmplifiedMap::from_map(g1.structure(), g2.structure(), 2.0 * alpha);
  CHECK(quantum_isomorphism_residual(g1, g2, broken).homomorphism > 0.5);
}

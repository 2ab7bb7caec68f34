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

#include "fixtures.hpp"
#include "qgraph/correspondence.hpp"
#include "qgraph/graph_families.hpp"

using namespace qgraph;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::ParseError;
}

AlgebraElement normalized(const DeltaState& psi, AlgebraElement t) {
  for (int a = 0; a < psi.structure().num_blocks(); ++a) {
    double tr = 0;
    for (int i = 0; i < psi.structure().size(a); ++i) tr += t.block(a).col(i).squaredNorm() / psi.weight(a, i);
    t.block(a) *= std::sqrt(psi.delta_sq() / tr);
  }
  return t;
}

void check_valid(const QuantumGraph& g) {
  CHECK(g.schur_residual() < 1e-9);
  const auto p = indicator_properties(g);
  CHECK(p.action < 1e-9);
  CHECK(p.idempotency < 1e-9);
  CHECK(p.modular < 1e-9);
}

}  // namespace

TEST_CASE("complete graph", "[families]") {
  const auto c3 = complete_graph(fixtures::uniform(3));
  CHECK((c3.adjacency().matrix() - Matrix::Ones(3, 3)).norm() < 1e-12);

  const auto m2 = complete_graph(fixtures::tracial_m2());
  Eigen::FullPivLU<Matrix> lu(m2.adjacency().matrix());
  CHECK(lu.rank() == 1);

  for (const auto& psi : {fixtures::uniform(3), fixtures::skew_m2(), fixtures::mixed_m2_c()}) {
    const auto g = complete_graph(psi);
    check_valid(g);
    const auto one = AlgebraElement::identity(psi.structure());
    CHECK((edge_indicator(g) - TensorElement::simple(psi.structure(), one, one)).norm() < 1e-12);
    CHECK(left_kernel(g).kernel_dim == 0);
    CHECK(fullness_ideal(g).full);
  }
}

TEST_CASE("trivial graph", "[families]") {
  for (const auto& psi : {fixtures::tracial_m2(), fixtures::mixed_m2_c(), fixtures::tracial_m2_m2()}) {
    const auto g = trivial_graph(psi);
    check_valid(g);
    CHECK(build_edge_correspondence(g).dim() == psi.structure().dim());
  }
  const auto report = trivial_structure_report(BlockStructure({2, 1}));
  CHECK(report.find("isomorphic to B⊗C(𝕋)") != std::string::npos);
}

TEST_CASE("rank-one graph", "[families]") {
  auto tr = fixtures::tracial_m2();
  const auto id = rank_one_graph(tr, AlgebraElement::identity(tr.structure()));
  CHECK((id.adjacency().matrix() - Matrix::Identity(4, 4)).norm() < 1e-12);

  AlgebraElement t = AlgebraElement::zero(tr.structure());
  t.block(0)(0, 0) = std::sqrt(2.0);
  check_valid(rank_one_graph(tr, t));

  CHECK(code_of([&] { rank_one_graph(tr, 0.5 * AlgebraElement::identity(tr.structure())); }) ==
        ErrorCode::BadNormalization);

  for (const auto& psi : {fixtures::skew_m2(), fixtures::mixed_m2_c(), fixtures::uniform(2)}) {
    const auto one = AlgebraElement::identity(psi.structure());
    CHECK((rank_one_graph(psi, one).adjacency().matrix() - trivial_graph(psi).adjacency().matrix()).norm() < 1e-12);
    const auto g = rank_one_graph(psi, normalized(psi, fixtures::random_element(psi.structure())));
    check_valid(g);
    CHECK(left_kernel(g).kernel_dim == 0);
    for (int a = 0; a < psi.structure().num_blocks(); ++a) {
      const int n = psi.structure().size(a);
      CHECK(rank_one_kernel_residual(psi, a, fixtures::random_matrix(n, n)) < 1e-12);
    }
  }
}

TEST_CASE("automorphism graph", "[families]") {
  auto tr2 = fixtures::tracial_m2_m2();
  const auto id = automorphism_graph(tr2, AutomorphismSpec{{0, 1}, {}});
  CHECK((id.graph.adjacency().matrix() - Matrix::Identity(8, 8)).norm() < 1e-12);

  const auto swap = automorphism_graph(tr2, AutomorphismSpec{{1, 0}, {fixtures::random_unitary(2), fixtures::random_unitary(2)}});
  CHECK(swap.report == "M₂(ℂ)⊗M₂(ℂ)⊗C(𝕋)");
  CHECK(swap.cycles.size() == 1);
  check_valid(swap.graph);
  const auto h = homomorphism_check(swap.graph);
  CHECK(h.multiplicativity < 1e-12);
  CHECK(h.indicator_shift < 1e-12);

  // C^3 with a 2-cycle and a fixed point
  const auto mixed = automorphism_graph(fixtures::uniform(3), AutomorphismSpec{{1, 0, 2}, {}});
  CHECK(mixed.report == "M₂(ℂ)⊗C(𝕋) ⊕ C(𝕋)");
  check_valid(mixed.graph);

  // the image of x under alpha is U x U^* on the target block
  const Matrix u = fixtures::random_unitary(2);
  const auto inner = automorphism_graph(tr2, AutomorphismSpec{{1, 0}, {u, Matrix::Identity(2, 2)}});
  const auto x = fixtures::random_element(tr2.structure());
  const auto y = inner.graph.adjacency()(x);
  CHECK((y.block(1) - x.block(0)).norm() < 1e-12);
  CHECK((y.block(0) - u * x.block(1) * u.adjoint()).norm() < 1e-12);

  CHECK(code_of([&] { automorphism_graph(tr2, AutomorphismSpec{{0, 0}, {}}); }) == ErrorCode::InvalidPermutation);
  CHECK(code_of([&] { automorphism_graph(fixtures::mixed_m2_c(), AutomorphismSpec{{1, 0}, {}}); }) ==
        ErrorCode::InvalidPermutation);
  Matrix not_unitary = Matrix::Identity(2, 2);
  not_unitary(0, 1) = 1.0;
  CHECK(code_of([&] { automorphism_graph(tr2, AutomorphismSpec{{0, 1}, {not_unitary, not_unitary}}); }) ==
        ErrorCode::NotUnitary);
  // a unitary that moves rho breaks invariance of the skew state
  CHECK(code_of([&] { automorphism_graph(fixtures::skew_m2(), AutomorphismSpec{{0}, {fixtures::random_unitary(2)}}); }) ==
        ErrorCode::StateNotInvariant);
  const auto uneven = DeltaState(BlockStructure({1, 1, 1}), {{1.0 / 3}, {1.0 / 3}, {1.0 / 3}});
  CHECK_NOTHROW(automorphism_graph(uneven, AutomorphismSpec{{2, 0, 1}, {}}));
}

TEST_CASE("classical graph", "[families]") {
  Eigen::MatrixXd cyc(3, 3);
  cyc << 0, 1, 0, 0, 0, 1, 1, 0, 0;
  const auto g = classical_graph(cyc);
  check_valid(g);
  const auto eps = edge_indicator(g);
  int terms = 0;
  for (Eigen::Index i = 0; i < eps.coeffs().size(); ++i)
    if (std::abs(eps.coeffs()(i)) > 1e-12) ++terms;
  CHECK(terms == 3);

  Eigen::MatrixXd half = cyc;
  half(0, 0) = 0.5;
  CHECK(code_of([&] { classical_graph(half); }) == ErrorCode::NotZeroOne);

  const auto all = classical_graph(Eigen::MatrixXd::Ones(2, 2));
  CHECK((all.adjacency().matrix() - complete_graph(fixtures::uniform(2)).adjacency().matrix()).norm() < 1e-12);

  // faithful iff no zero columns, full iff no zero rows
  for (const char* pattern : {"011000110", "100010000", "010010001", "111000000", "000100110"}) {
    Eigen::MatrixXd adj(3, 3);
    for (int i = 0; i < 9; ++i) adj(i / 3, i % 3) = pattern[i] - '0';
    const auto h = classical_graph(adj);
    check_valid(h);
    const bool zero_col = (adj.colwise().sum().array() == 0).any();
    const bool zero_row = (adj.rowwise().sum().array() == 0).any();
    CHECK((left_kernel(h).kernel_dim == 0) == !zero_col);
    CHECK(fullness_ideal(h).full == !zero_row);
  }
}

TEST_CASE("canonical local families", "[families]") {
  auto tr = fixtures::tracial_m2();
  const auto one = AlgebraElement::identity(tr.structure());
  const auto s = canonical_lqck_family(CanonicalKind::Trivial, tr, one, Matrix::Identity(1, 1));
  CHECK(s.k() == 4);
  CHECK(lqck_residuals(s, trivial_graph(tr)).max() < 1e-12);
  // the image of x is x/delta^2 acting on the left regular representation
  const auto x = fixtures::random_element(tr.structure());
  CHECK((s(x) - left_multiplication_matrix<double>(tr.structure(), x.coords()) / tr.delta_sq()).norm() < 1e-12);

  AlgebraElement t = AlgebraElement::zero(tr.structure());
  t.block(0)(0, 0) = std::sqrt(2.0);
  const auto r = canonical_lqck_family(CanonicalKind::RankOne, tr, t, Matrix::Identity(1, 1));
  CHECK(lqck_residuals(r, rank_one_graph(tr, t)).max() < 1e-12);

  for (int trial = 0; trial < 3; ++trial) {
    const auto su = canonical_lqck_family(CanonicalKind::Trivial, tr, one, fixtures::random_unitary(2));
    CHECK(su.k() == 8);
    CHECK(lqck_residuals(su, trivial_graph(tr)).max() < 1e-12);
  }

  Matrix bad = Matrix::Identity(2, 2);
  bad(1, 1) = 2.0;
  CHECK(code_of([&] { canonical_lqck_family(CanonicalKind::Trivial, tr, one, bad); }) == ErrorCode::NotUnitary);
  CHECK(code_of([&] { canonical_lqck_family(CanonicalKind::RankOne, tr, 0.5 * one, Matrix::Identity(1, 1)); }) ==
        ErrorCode::BadNormalization);
}

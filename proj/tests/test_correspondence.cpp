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

AlgebraElement normalized(const DeltaState& psi, AlgebraElement t) {
  for (int a = 0; a < psi.structure().num_blocks(); ++a) {
    double tr = 0;
    for (int i = 0; i < psi.structure().size(a); ++i) tr += t.block(a).col(i).squaredNorm() / psi.weight(a, i);
    t.block(a) *= std::sqrt(psi.delta_sq() / tr);
  }
  return t;
}

/// x . t . y = sum c_pq (x e_p) (x) (e_q y), built from algebra products only.
TensorElement sandwich(const AlgebraElement& x, const TensorElement& t, const AlgebraElement& y) {
  const auto& s = t.structure();
  TensorElement out = TensorElement::zero(s);
  for (Eigen::Index p = 0; p < s.dim(); ++p)
    for (Eigen::Index q = 0; q < s.dim(); ++q)
      if (t.coeffs()(p, q) != 0.0)
        out += t.coeffs()(p, q) *
               TensorElement::simple(s, x * AlgebraElement::unit(s, p), AlgebraElement::unit(s, q) * y);
  return out;
}

/// Rank of span{e_p . eps . e_q} inside B (x) B.
Eigen::Index gram_rank_oracle(const QuantumGraph& g) {
  const auto& s = g.structure();
  const auto eps = edge_indicator(g);
  const Eigen::Index d = s.dim();
  Matrix span(d * d, d * d);
  for (Eigen::Index p = 0; p < d; ++p)
    for (Eigen::Index q = 0; q < d; ++q)
      span.col(p * d + q) = sandwich(AlgebraElement::unit(s, p), eps, AlgebraElement::unit(s, q)).flatten();
  Eigen::BDCSVD<Matrix> svd(span);
  const auto& sv = svd.singularValues();
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-9 * sv(0)) ++r;
  return r;
}

std::vector<QuantumGraph> family_graphs() {
  std::vector<QuantumGraph> out;
  for (const auto& psi : {fixtures::uniform(2), fixtures::tracial_m2(), fixtures::skew_m2(), fixtures::mixed_m2_c()}) {
    out.push_back(complete_graph(psi));
    out.push_back(trivial_graph(psi));
    out.push_back(rank_one_graph(psi, normalized(psi, fixtures::random_element(psi.structure()))));
  }
  for (const char* pattern : {"010001100", "010000000", "110010001", "000000000"}) {
    Eigen::MatrixXd adj(3, 3);
    for (int i = 0; i < 9; ++i) adj(i / 3, i % 3) = pattern[i] - '0';
    out.push_back(classical_graph(adj));
  }
  AutomorphismSpec swap{{1, 0}, {fixtures::random_unitary(2), fixtures::random_unitary(2)}};
  out.push_back(automorphism_graph(fixtures::tracial_m2_m2(), swap).graph);
  return out;
}

Eigen::MatrixXd classical(const char* pattern, int n) {
  Eigen::MatrixXd adj(n, n);
  for (int i = 0; i < n * n; ++i) adj(i / n, i % n) = pattern[i] - '0';
  return adj;
}

}  // namespace

TEST_CASE("edge correspondence dimensions", "[correspondence]") {
  const auto cycle = classical_graph(classical("010001100", 3));
  CHECK(build_edge_correspondence(cycle).dim() == 3);
  CHECK(gram_rank_oracle(cycle) == 3);
  CHECK(build_edge_correspondence(complete_graph(fixtures::tracial_m2())).dim() == 16);
  CHECK(build_edge_correspondence(trivial_graph(fixtures::tracial_m2())).dim() == 4);

  for (const auto& g : family_graphs()) CHECK(build_edge_correspondence(g).dim() == gram_rank_oracle(g));
}

TEST_CASE("correspondence structure invariants", "[correspondence]") {
  for (const auto& g : family_graphs()) {
    const auto e = build_edge_correspondence(g);
    const auto& s = g.structure();
    const Eigen::Index n = e.dim();
    if (n == 0) continue;
    // orthonormal for psi(<., .>_B)
    Matrix scalar = Matrix::Zero(n, n);
    for (Eigen::Index t = 0; t < s.dim(); ++t) scalar += apply_state(AlgebraElement::unit(s, t), g.psi()) * e.inner(t);
    CHECK((scalar - Matrix::Identity(n, n)).norm() < 1e-9);

    const auto x = fixtures::random_element(s), b = fixtures::random_element(s);
    const Matrix lx = e.left_action(x), rb = e.right_action(b);
    CHECK((lx * rb - rb * lx).norm() < 1e-9 * (1 + lx.norm() * rb.norm()));

    const Vector xi = fixtures::random_matrix(n, 1), eta = fixtures::random_matrix(n, 1);
    CHECK((e.b_inner(xi, rb * eta) - e.b_inner(xi, eta) * b).norm() < 1e-9 * (1 + xi.norm() * eta.norm() * b.norm()));

    // <xi, xi>_B is positive semidefinite blockwise
    const auto self = e.b_inner(xi, xi);
    for (int a = 0; a < s.num_blocks(); ++a) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(self.block(a));
      CHECK(es.eigenvalues().minCoeff() > -1e-9 * (1 + xi.squaredNorm()));
    }

    // compacts are right linear
    const Vector u = fixtures::random_matrix(n, 1), v = fixtures::random_matrix(n, 1);
    const Matrix theta = compact_operator(e, u, v);
    CHECK((theta * rb - rb * theta).norm() < 1e-9 * (1 + theta.norm() * rb.norm()));
  }
}

TEST_CASE("B-valued inner product", "[correspondence]") {
  SECTION("complete graph") {
    auto psi = fixtures::mixed_m2_c();
    const auto g = complete_graph(psi);
    const auto e = build_edge_correspondence(g);
    const CorrVector eps{tensor_coords(e, edge_indicator(g))};
    CHECK((b_inner(eps, eps, e) - AlgebraElement::identity(psi.structure())).norm() < 1e-9);
  }
  SECTION("trivial graph") {
    auto psi = fixtures::skew_m2();
    const auto g = trivial_graph(psi);
    const auto e = build_edge_correspondence(g);
    const auto eps = edge_indicator(g);
    const auto one = AlgebraElement::identity(psi.structure());
    for (int trial = 0; trial < 5; ++trial) {
      const auto x = fixtures::random_element(psi.structure()), y = fixtures::random_element(psi.structure());
      const CorrVector xe{tensor_coords(e, sandwich(x, eps, one))}, ye{tensor_coords(e, sandwich(y, eps, one))};
      CHECK((b_inner(xe, ye, e) - (1.0 / psi.delta_sq()) * (x.adjoint() * y)).norm() < 1e-9 * (1 + x.norm() * y.norm()));
    }
  }
  SECTION("inner product formula on a non-tracial rank-one graph") {
    auto psi = fixtures::mixed_m2_c();
    const auto& s = psi.structure();
    const auto g = rank_one_graph(psi, normalized(psi, fixtures::random_element(s)));
    const auto e = build_edge_correspondence(g);
    const auto eps = edge_indicator(g);
    for (int trial = 0; trial < 5; ++trial) {
      const auto x = fixtures::random_element(s), y = fixtures::random_element(s);
      const auto x2 = fixtures::random_element(s), y2 = fixtures::random_element(s);
      const CorrVector u{tensor_coords(e, sandwich(x, eps, y))}, v{tensor_coords(e, sandwich(x2, eps, y2))};
      const auto want = (1.0 / psi.delta_sq()) * (y.adjoint() * g.adjacency()(x.adjoint() * x2) * y2);
      CHECK((b_inner(u, v, e) - want).norm() < 1e-8 * (1 + want.norm()));
    }
  }
  SECTION("different blocks are orthogonal") {
    auto psi = fixtures::mixed_m2_c();
    const auto& s = psi.structure();
    const auto g = complete_graph(psi);
    const auto e = build_edge_correspondence(g);
    const auto eps = edge_indicator(g);
    const auto one = AlgebraElement::identity(s);
    const CorrVector u{tensor_coords(e, sandwich(AlgebraElement::unit(s, 0, 0, 1), eps, one))};
    const CorrVector v{tensor_coords(e, sandwich(AlgebraElement::unit(s, 1, 0, 0), eps, one))};
    CHECK(b_inner(u, v, e).norm() < 1e-12);
  }
}

TEST_CASE("left kernel and fullness", "[correspondence]") {
  const auto source_sink = classical_graph(classical("0100", 2));
  CHECK(left_kernel(source_sink).kernel_dim == 1);
  CHECK_FALSE(fullness_ideal(source_sink).full);
  CHECK(left_kernel(complete_graph(fixtures::mixed_m2_c())).kernel_dim == 0);
  CHECK(left_kernel(trivial_graph(fixtures::tracial_m2())).kernel_dim == 0);
  CHECK(fullness_ideal(complete_graph(fixtures::mixed_m2_c())).full);
  CHECK(fullness_ideal(trivial_graph(fixtures::skew_m2())).full);
  CHECK_FALSE(fullness_ideal(classical_graph(classical("110110000", 3))).full);

  for (const auto& g : family_graphs()) {
    const auto k = left_kernel(g);
    CHECK(k.distance < 1e-9);
    CHECK(k.kernel_dim == k.complement_dim);
    const auto ss = quantum_sources_sinks(g);
    CHECK((k.kernel_dim == 0) == ss.sources.empty());
    const auto f = fullness_ideal(g);
    CHECK(f.full == ss.sinks.empty());
    std::vector<int> complement;
    for (int a = 0; a < g.structure().num_blocks(); ++a)
      if (std::find(ss.sinks.begin(), ss.sinks.end(), a) == ss.sinks.end()) complement.push_back(a);
    CHECK(f.blocks == complement);
  }
}

TEST_CASE("compact operator decomposition", "[correspondence]") {
  CHECK(compact_decomposition_residual(complete_graph(fixtures::uniform(2))) < 1e-9);
  CHECK(compact_decomposition_residual(trivial_graph(fixtures::tracial_m2())) < 1e-9);
  CHECK(compact_decomposition_residual(classical_graph(classical("010001100", 3))) < 1e-9);
  for (const auto& g : family_graphs())
    if (left_kernel(g).kernel_dim == 0) CHECK(compact_decomposition_residual(g) < 1e-9);
}

TEST_CASE("B tensor_A B model", "[correspondence]") {
  const auto k = cp_correspondence(complete_graph(fixtures::tracial_m2()));
  CHECK(k.edge_dim == 16);
  CHECK(k.model_dim == 16);
  CHECK(k.residual < 1e-9);

  const auto adj = classical("011001100", 3);
  const auto c = cp_correspondence(classical_graph(adj));
  CHECK(c.model_dim == static_cast<Eigen::Index>(adj.sum()));

  const auto t = cp_correspondence(trivial_graph(fixtures::mixed_m2_c()));
  CHECK(t.model_dim == fixtures::mixed_m2_c().structure().dim());
  CHECK(t.residual < 1e-9);

  for (const auto& g : family_graphs()) {
    const auto r = cp_correspondence(g);
    CHECK(r.edge_dim == r.model_dim);
    CHECK(r.residual < 1e-9);
  }
}

TEST_CASE("recognition", "[correspondence]") {
  SECTION("cyclic vector of B gives the trivial graph") {
    for (const auto& psi : {fixtures::tracial_m2(), fixtures::mixed_m2_c()}) {
      const auto b = trivial_correspondence(psi);
      const CorrVector xi{b.coords_of((1.0 / psi.delta()) * AlgebraElement::identity(psi.structure()).coords())};
      const auto r = recognize(b, xi);
      const auto id = Matrix::Identity(psi.structure().dim(), psi.structure().dim());
      CHECK((r.graph.adjacency().matrix() - id).norm() < 1e-9);
      CHECK(r.residual < 1e-9);
    }
  }
  SECTION("T^* / delta gives the rank-one graph") {
    auto psi = fixtures::mixed_m2_c();
    const auto t = normalized(psi, fixtures::random_element(psi.structure()));
    const auto b = trivial_correspondence(psi);
    const CorrVector xi{b.coords_of((1.0 / psi.delta()) * t.adjoint().coords())};
    const auto r = recognize(b, xi);
    CHECK((r.graph.adjacency().matrix() - rank_one_graph(psi, t).adjacency().matrix()).norm() < 1e-8);
    CHECK(r.residual < 1e-9);
  }
  SECTION("edge indicator recognizes its own graph") {
    auto psi = fixtures::skew_m2();
    const auto g = rank_one_graph(psi, normalized(psi, fixtures::random_element(psi.structure())));
    const auto r = recognize(edge_indicator(g), psi);
    CHECK((r.graph.adjacency().matrix() - g.adjacency().matrix()).norm() < 1e-9);
  }
  SECTION("rejections") {
    auto tr = fixtures::tracial_m2();
    const auto& s = tr.structure();
    const auto bad = TensorElement::simple(s, AlgebraElement::unit(s, 0, 0, 0), AlgebraElement::unit(s, 0, 0, 1));
    try {
      recognize(bad, tr);
      FAIL("expected NotQuantumAdjacency");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotQuantumAdjacency);
    }
    auto two = fixtures::uniform(2);
    const auto b = trivial_correspondence(two);
    const CorrVector half{b.coords_of(AlgebraElement::unit(two.structure(), 0).coords())};
    try {
      recognize(b, half);
      FAIL("expected NotGenerating");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotGenerating);
    }
  }
}

TEST_CASE("non-CP input is rejected", "[correspondence]") {
  // transpose is positive but not CP, and also fails the Schur test
  auto tr = fixtures::tracial_m2();
  Matrix transpose = Matrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) transpose(j * 2 + i, i * 2 + j) = 1.0;
  CHECK_FALSE(is_completely_positive(tr, LinearMapOnB(tr.structure(), transpose)).completely_positive);
  CHECK_THROWS_AS(QuantumGraph(tr, LinearMapOnB(tr.structure(), transpose)), Error);
}

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

#include "qgraph/quantum_graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace qgraph {

namespace {

AlgebraElement column_element(const LinearMapOnB& a, Eigen::Index q) {
  return AlgebraElement::from_coords(a.structure(), a.matrix().col(q));
}

void require_map_on(const LinearMapOnB& a, const BlockStructure& s) {
  if (a.structure() != s) throw Error(ErrorCode::ShapeMismatch, "map and state live on different algebras");
}

}  // namespace

LinearMapOnB::LinearMapOnB(BlockStructure s, Matrix m) : structure_(std::move(s)), matrix_(std::move(m)) {
  if (matrix_.rows() != structure_.dim() || matrix_.cols() != structure_.dim())
    throw Error(ErrorCode::ShapeMismatch, "map matrix must be dim x dim");
}

LinearMapOnB LinearMapOnB::identity(const BlockStructure& s) {
  return LinearMapOnB(s, Matrix::Identity(s.dim(), s.dim()));
}

AlgebraElement LinearMapOnB::operator()(const AlgebraElement& x) const {
  require_conforms(x, structure_);
  return AlgebraElement::from_coords(structure_, matrix_ * x.coords());
}

Matrix LinearMapOnB::adapted_matrix(const DeltaState& psi) const {
  require_map_on(*this, psi.structure());
  Matrix out = matrix_;
  for (Eigen::Index q = 0; q < out.rows(); ++q)
    for (Eigen::Index p = 0; p < out.cols(); ++p) out(q, p) *= psi.adapted_scale(p) / psi.adapted_scale(q);
  return out;
}

double schur_residual(const DeltaState& psi, const LinearMapOnB& a) {
  const auto& s = psi.structure();
  require_map_on(a, s);
  std::vector<AlgebraElement> images;
  for (Eigen::Index q = 0; q < s.dim(); ++q) images.push_back(column_element(a, q));
  double sq = 0;
  for (Eigen::Index p = 0; p < s.dim(); ++p) {
    const auto& u = s.unit(p);
    AlgebraElement col = (-psi.delta_sq()) * images[p];
    for (int k = 0; k < s.size(u.block); ++k) {
      const auto ik = s.index(u.block, u.row, k), kj = s.index(u.block, k, u.col);
      col += (1.0 / psi.weight(u.block, k)) * (images[ik] * images[kj]);
    }
    sq += col.norm() * col.norm();
  }
  return std::sqrt(sq);
}

QuantumGraph::QuantumGraph(DeltaState psi, LinearMapOnB adjacency, double tol)
    : psi_(std::move(psi)), adjacency_(std::move(adjacency)), tol_(tol) {
  schur_residual_ = qgraph::schur_residual(psi_, adjacency_);
  if (schur_residual_ > tol_)
    throw Error(ErrorCode::NotQuantumAdjacency, "Schur residual " + std::to_string(schur_residual_));
}

TensorElement edge_indicator(const QuantumGraph& g) {
  const auto& s = g.structure();
  const auto& psi = g.psi();
  const Matrix& a = g.adjacency().matrix();
  Matrix c = Matrix::Zero(s.dim(), s.dim());
  for (int b = 0; b < s.num_blocks(); ++b)
    for (int i = 0; i < s.size(b); ++i)
      for (int k = 0; k < s.size(b); ++k)
        c.row(s.index(b, i, k)) = a.col(s.index(b, k, i)).transpose() / (psi.delta_sq() * psi.weight(b, k));
  return TensorElement(s, std::move(c));
}

double sharp_idempotency_residual(const TensorElement& xi) { return (sharp(xi, xi) - xi).norm(); }

double modular_self_adjoint_residual(const TensorElement& xi, const DeltaState& psi) {
  const auto x = modular_first_leg(xi, psi, 0.5);
  return (x - tensor_adjoint(x)).norm();
}

IndicatorReport indicator_properties(const QuantumGraph& g) {
  const auto& s = g.structure();
  const auto eps = edge_indicator(g);
  IndicatorReport r;
  for (Eigen::Index p = 0; p < s.dim(); ++p) {
    const auto x = AlgebraElement::unit(s, p);
    const auto rebuilt = g.psi().delta_sq() * slice_first(left_act(x, eps), g.psi());
    r.action = std::max(r.action, (g.adjacency()(x) - rebuilt).norm());
  }
  r.idempotency = sharp_idempotency_residual(eps);
  r.modular = modular_self_adjoint_residual(eps, g.psi());
  return r;
}

ChoiReport is_completely_positive(const DeltaState& psi, const LinearMapOnB& a, double rel_tol) {
  const auto& s = psi.structure();
  require_map_on(a, s);
  ChoiReport r;
  r.min_eigenvalue = 0;
  bool first = true;
  double herm_defect = 0;
  for (int ba = 0; ba < s.num_blocks(); ++ba) {
    const int na = s.size(ba);
    for (int bb = 0; bb < s.num_blocks(); ++bb) {
      const int nb = s.size(bb);
      Matrix choi(na * nb, na * nb);
      for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j)
          for (int u = 0; u < nb; ++u)
            for (int v = 0; v < nb; ++v) choi(i * nb + u, j * nb + v) = a.matrix()(s.index(bb, u, v), s.index(ba, i, j));
      herm_defect = std::max(herm_defect, (choi - choi.adjoint()).norm());
      const Matrix herm = 0.5 * (choi + choi.adjoint());
      Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
      const auto& ev = es.eigenvalues();
      if (first || ev.minCoeff() < r.min_eigenvalue) r.min_eigenvalue = ev.minCoeff();
      first = false;
      r.max_abs_eigenvalue = std::max(r.max_abs_eigenvalue, ev.cwiseAbs().maxCoeff());
    }
  }
  const double scale = std::max(r.max_abs_eigenvalue, 1e-300);
  r.completely_positive = r.min_eigenvalue >= -rel_tol * scale && herm_defect <= rel_tol * scale;
  return r;
}

LinearMapOnB slice_adjacency(const TensorElement& xi, const DeltaState& psi) {
  const auto& s = psi.structure();
  require_same_structure(xi.structure(), s);
  Matrix m(s.dim(), s.dim());
  for (Eigen::Index p = 0; p < s.dim(); ++p)
    m.col(p) = psi.delta_sq() * slice_first(left_act(AlgebraElement::unit(s, p), xi), psi).coords();
  return LinearMapOnB(s, std::move(m));
}

LinearMapOnB adjacency_from_indicator(const TensorElement& xi, const DeltaState& psi, double tol) {
  require_same_structure(xi.structure(), psi.structure());
  const double idem = sharp_idempotency_residual(xi);
  if (idem > tol) throw Error(ErrorCode::NotIdempotent, "xi # xi - xi has norm " + std::to_string(idem));
  const double mod = modular_self_adjoint_residual(xi, psi);
  if (mod > tol) throw Error(ErrorCode::NotModularSelfAdjoint, "modular defect " + std::to_string(mod));
  auto a = slice_adjacency(xi, psi);
  const double schur = schur_residual(psi, a);
  if (schur > tol) throw Error(ErrorCode::NotQuantumAdjacency, "Schur residual " + std::to_string(schur));
  return a;
}

std::vector<int> generated_block_ideal(const BlockStructure& s, const Matrix& generators, double tol) {
  std::vector<int> blocks;
  for (int b = 0; b < s.num_blocks(); ++b) {
    const Eigen::Index n = static_cast<Eigen::Index>(s.size(b)) * s.size(b);
    const auto seg = generators.middleRows(s.offset(b), n);
    bool hit = false;
    for (Eigen::Index c = 0; c < seg.cols() && !hit; ++c) hit = seg.col(c).norm() > tol;
    if (hit) blocks.push_back(b);
  }
  return blocks;
}

SourceSinkReport quantum_sources_sinks(const QuantumGraph& g) {
  const auto& s = g.structure();
  const Matrix& a = g.adjacency().matrix();
  SourceSinkReport r;
  for (int b = 0; b < s.num_blocks(); ++b) {
    const Eigen::Index n = static_cast<Eigen::Index>(s.size(b)) * s.size(b);
    if (a.middleCols(s.offset(b), n).norm() <= g.tolerance()) r.sources.push_back(b);
    if (a.middleRows(s.offset(b), n).norm() <= g.tolerance()) r.sinks.push_back(b);
  }
  return r;
}

LinearMapOnB adjoint_map(const LinearMapOnB& a, const DeltaState& psi) {
  const auto& s = psi.structure();
  require_map_on(a, s);
  Eigen::VectorXd g(s.dim());
  for (Eigen::Index p = 0; p < s.dim(); ++p) g(p) = psi.gram_weight(p);
  Matrix adj = g.cwiseInverse().asDiagonal() * a.matrix().adjoint() * g.asDiagonal();
  return LinearMapOnB(s, std::move(adj));
}

HomomorphismReport homomorphism_check(const QuantumGraph& g) {
  if (!is_completely_positive(g.psi(), g.adjacency()).completely_positive)
    throw Error(ErrorCode::NotCompletelyPositive, "homomorphism criterion needs a completely positive A");
  const auto& s = g.structure();
  const auto eps = edge_indicator(g);
  std::vector<AlgebraElement> units, images;
  std::vector<TensorElement> shifted;
  for (Eigen::Index p = 0; p < s.dim(); ++p) {
    units.push_back(AlgebraElement::unit(s, p));
    images.push_back(column_element(g.adjacency(), p));
    shifted.push_back(left_act(units.back(), eps));
  }
  HomomorphismReport r;
  for (Eigen::Index p = 0; p < s.dim(); ++p)
    for (Eigen::Index q = 0; q < s.dim(); ++q) {
      const auto prod = s.product(p, q);
      AlgebraElement lhs = AlgebraElement::zero(s);
      TensorElement shift = TensorElement::zero(s);
      if (prod) {
        lhs = images[*prod];
        shift = shifted[*prod];
      }
      r.multiplicativity = std::max(r.multiplicativity, (lhs - images[p] * images[q]).norm());
      r.indicator_shift = std::max(r.indicator_shift, (shift - right_act(shifted[p], images[q])).norm());
    }
  return r;
}

AmplifiedMap::AmplifiedMap(BlockStructure source, BlockStructure target, int h)
    : source_(std::move(source)), target_(std::move(target)), h_(h) {
  if (h_ < 1) throw Error(ErrorCode::ShapeMismatch, "amplification needs h >= 1");
  blocks_.assign(static_cast<std::size_t>(source_.dim() * target_.dim()), Matrix::Zero(h_, h_));
}

AmplifiedMap AmplifiedMap::from_map(const BlockStructure& source, const BlockStructure& target, const Matrix& alpha) {
  if (alpha.rows() != target.dim() || alpha.cols() != source.dim())
    throw Error(ErrorCode::ShapeMismatch, "alpha must be dim(target) x dim(source)");
  AmplifiedMap t(source, target, 1);
  for (Eigen::Index p = 0; p < source.dim(); ++p)
    for (Eigen::Index q = 0; q < target.dim(); ++q) t.block(p, q)(0, 0) = alpha(q, p);
  return t;
}

const Matrix& AmplifiedMap::block(Eigen::Index p, Eigen::Index q) const {
  return blocks_.at(static_cast<std::size_t>(p * target_.dim() + q));
}

Matrix& AmplifiedMap::block(Eigen::Index p, Eigen::Index q) {
  return blocks_.at(static_cast<std::size_t>(p * target_.dim() + q));
}

IsomorphismReport quantum_isomorphism_residual(const QuantumGraph& g1, const QuantumGraph& g2,
                                               const AmplifiedMap& theta) {
  return quantum_isomorphism_residual(g1.psi().weights(), g1.adjacency(), g2.psi().weights(), g2.adjacency(), theta);
}

IsomorphismReport quantum_isomorphism_residual(const std::vector<std::vector<double>>& psi1, const LinearMapOnB& a1,
                                               const std::vector<std::vector<double>>& psi2, const LinearMapOnB& a2,
                                               const AmplifiedMap& theta) {
  const auto& s1 = theta.source();
  const auto& s2 = theta.target();
  if (a1.structure() != s1 || a2.structure() != s2)
    throw Error(ErrorCode::ShapeMismatch, "theta does not map between the two algebras");
  if (static_cast<int>(psi1.size()) != s1.num_blocks() || static_cast<int>(psi2.size()) != s2.num_blocks())
    throw Error(ErrorCode::ShapeMismatch, "state weights do not match the algebras");
  const int h = theta.h();
  const Matrix id = Matrix::Identity(h, h);
  auto state_value = [](const BlockStructure& s, const std::vector<std::vector<double>>& w, Eigen::Index p) {
    const auto& u = s.unit(p);
    return u.row == u.col ? w.at(u.block).at(u.row) : 0.0;
  };
  IsomorphismReport r;

  // multiplicativity and *-preservation on basis pairs
  for (Eigen::Index p = 0; p < s1.dim(); ++p) {
    for (Eigen::Index q = 0; q < s2.dim(); ++q) {
      const Matrix& lhs = theta.block(s1.adjoint_index(p), s2.adjoint_index(q));
      r.homomorphism = std::max(r.homomorphism, (lhs - theta.block(p, q).adjoint()).norm());
    }
    for (Eigen::Index p2 = 0; p2 < s1.dim(); ++p2) {
      std::vector<Matrix> prod(static_cast<std::size_t>(s2.dim()), Matrix::Zero(h, h));
      for (Eigen::Index q = 0; q < s2.dim(); ++q)
        for (Eigen::Index q2 = 0; q2 < s2.dim(); ++q2)
          if (auto u = s2.product(q, q2)) prod[*u] += theta.block(p, q) * theta.block(p2, q2);
      const auto pp = s1.product(p, p2);
      for (Eigen::Index u = 0; u < s2.dim(); ++u) {
        const Matrix lhs = pp ? theta.block(*pp, u) : Matrix::Zero(h, h);
        r.homomorphism = std::max(r.homomorphism, (lhs - prod[u]).norm());
      }
    }
  }
  // unitality: theta(1) = 1 (x) 1_h
  for (Eigen::Index q = 0; q < s2.dim(); ++q) {
    Matrix sum = Matrix::Zero(h, h);
    for (Eigen::Index p = 0; p < s1.dim(); ++p)
      if (s1.is_diagonal(p)) sum += theta.block(p, q);
    const Matrix want = s2.is_diagonal(q) ? id : Matrix::Zero(h, h);
    r.homomorphism = std::max(r.homomorphism, (sum - want).norm());
  }

  for (Eigen::Index p = 0; p < s1.dim(); ++p) {
    Matrix st = -state_value(s1, psi1, p) * id;
    for (Eigen::Index q = 0; q < s2.dim(); ++q) st += state_value(s2, psi2, q) * theta.block(p, q);
    r.state = std::max(r.state, st.norm());

    for (Eigen::Index u = 0; u < s2.dim(); ++u) {
      Matrix diff = Matrix::Zero(h, h);
      for (Eigen::Index q = 0; q < s2.dim(); ++q) diff += a2.matrix()(u, q) * theta.block(p, q);
      for (Eigen::Index t = 0; t < s1.dim(); ++t) diff -= a1.matrix()(t, p) * theta.block(t, u);
      r.adjacency = std::max(r.adjacency, diff.norm());
    }
  }
  return r;
}

}  // namespace qgraph

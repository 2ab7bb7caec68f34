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

#include "qgraph/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qgraph {

namespace {

Eigen::Index numerical_rank(const Matrix& m, double rel) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel * sv(0)) ++r;
  return r;
}

/// Columns indexed p * dim + q hold the coordinates of e_p . xi . e_q.
Matrix generator_images(const Correspondence& x, const Vector& xi) {
  const Eigen::Index d = x.structure().dim();
  Matrix y(x.dim(), d * d);
  for (Eigen::Index p = 0; p < d; ++p) {
    const Vector left = x.left(p) * xi;
    for (Eigen::Index q = 0; q < d; ++q) y.col(p * d + q) = x.right(q) * left;
  }
  return y;
}

Matrix generator_tensors(const TensorElement& xi, const DeltaState& psi) {
  const auto& s = psi.structure();
  const Eigen::Index d = s.dim();
  Matrix z(d * d, d * d);
  for (Eigen::Index p = 0; p < d; ++p) {
    const auto lp = left_act(AlgebraElement::unit(s, p), xi);
    for (Eigen::Index q = 0; q < d; ++q) z.col(p * d + q) = right_act(lp, AlgebraElement::unit(s, q)).flatten();
  }
  return z;
}

/// U with U y_from = y_to, plus the defect of U as a correspondence map.
double module_map_residual(const Correspondence& from, const Matrix& y_from, const Correspondence& to,
                           const Matrix& y_to, Matrix& u) {
  if (from.dim() == 0 || y_from.cols() == 0) {
    u = Matrix::Zero(to.dim(), from.dim());
  } else {
    const Matrix yf_h = y_from.adjoint();
    const Matrix yt_h = y_to.adjoint();
    u = yf_h.completeOrthogonalDecomposition().solve(yt_h).adjoint();
  }
  double r = (u * y_from - y_to).norm();
  const Eigen::Index d = from.structure().dim();
  for (Eigen::Index t = 0; t < d; ++t) {
    r = std::max(r, (u.adjoint() * to.inner(t) * u - from.inner(t)).norm());
    r = std::max(r, (u * from.left(t) - to.left(t) * u).norm());
    r = std::max(r, (u * from.right(t) - to.right(t) * u).norm());
  }
  return r;
}

}  // namespace

Correspondence Correspondence::quotient(const SpanningSystem& sys, const std::optional<Matrix>& generators,
                                        double cutoff) {
  const auto& s = sys.psi.structure();
  const Eigen::Index m = sys.size;
  Matrix kscalar = Matrix::Zero(m, m);
  for (Eigen::Index t = 0; t < s.dim(); ++t) {
    const double w = sys.psi.value_on_unit(t);
    if (w != 0.0) kscalar += w * sys.inner[static_cast<std::size_t>(t)];
  }
  const Matrix z = generators ? *generators : Matrix::Identity(m, m);
  if (z.rows() != m) throw Error(ErrorCode::ShapeMismatch, "generators must live in the spanning space");
  Matrix kz = z.adjoint() * kscalar * z;
  kz = 0.5 * (kz + kz.adjoint()).eval();

  Matrix w(z.cols(), 0);
  if (kz.size() > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(kz);
    const auto& ev = es.eigenvalues();
    const double top = std::max(ev.maxCoeff(), 0.0);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = ev.size() - 1; i >= 0; --i)
      if (top > 0 && ev(i) > cutoff * top) keep.push_back(i);
    w.resize(z.cols(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c)
      w.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]) / std::sqrt(ev(keep[c]));
  }
  Matrix embedding = z * w;
  Matrix projection = embedding.adjoint() * kscalar;

  std::vector<Matrix> inner, left, right;
  for (Eigen::Index t = 0; t < s.dim(); ++t) {
    const auto i = static_cast<std::size_t>(t);
    inner.push_back(embedding.adjoint() * sys.inner[i] * embedding);
    left.push_back(projection * sys.left[i] * embedding);
    right.push_back(projection * sys.right[i] * embedding);
  }
  return Correspondence(sys.psi, std::move(embedding), std::move(projection), std::move(inner), std::move(left),
                        std::move(right));
}

Correspondence::Correspondence(DeltaState psi, Matrix embedding, Matrix projection, std::vector<Matrix> inner,
                               std::vector<Matrix> left, std::vector<Matrix> right)
    : psi_(std::move(psi)),
      embedding_(std::move(embedding)),
      projection_(std::move(projection)),
      inner_(std::move(inner)),
      left_(std::move(left)),
      right_(std::move(right)) {
  const auto d = static_cast<std::size_t>(psi_.structure().dim());
  if (inner_.size() != d || left_.size() != d || right_.size() != d)
    throw Error(ErrorCode::ShapeMismatch, "one inner/action matrix per matrix unit is required");
}

Matrix Correspondence::left_action(const AlgebraElement& x) const {
  require_conforms(x, structure());
  const Vector c = x.coords();
  Matrix out = Matrix::Zero(dim(), dim());
  for (Eigen::Index p = 0; p < c.size(); ++p)
    if (c(p) != 0.0) out += c(p) * left(p);
  return out;
}

Matrix Correspondence::right_action(const AlgebraElement& x) const {
  require_conforms(x, structure());
  const Vector c = x.coords();
  Matrix out = Matrix::Zero(dim(), dim());
  for (Eigen::Index p = 0; p < c.size(); ++p)
    if (c(p) != 0.0) out += c(p) * right(p);
  return out;
}

AlgebraElement Correspondence::b_inner(const Vector& xi, const Vector& eta) const {
  if (xi.size() != dim() || eta.size() != dim()) throw Error(ErrorCode::ShapeMismatch, "vector is not in the module");
  Vector c(structure().dim());
  for (Eigen::Index t = 0; t < c.size(); ++t) c(t) = xi.dot(inner(t) * eta);
  return AlgebraElement::from_coords(structure(), c);
}

AlgebraElement b_inner(const CorrVector& xi, const CorrVector& eta, const Correspondence& e) {
  return e.b_inner(xi.coords, eta.coords);
}

Matrix compact_operator(const Correspondence& e, const Vector& u, const Vector& v) {
  Matrix out = Matrix::Zero(e.dim(), e.dim());
  for (Eigen::Index t = 0; t < e.structure().dim(); ++t)
    out += (e.right(t) * u) * (v.adjoint() * e.inner(t));
  return out;
}

SpanningSystem tensor_psi_system(const DeltaState& psi) {
  const auto& s = psi.structure();
  const Eigen::Index d = s.dim();
  SpanningSystem sys{psi, d * d, {}, {}, {}};
  for (Eigen::Index t = 0; t < d; ++t) {
    sys.inner.push_back(Matrix::Zero(d * d, d * d));
    sys.left.push_back(Matrix::Zero(d * d, d * d));
    sys.right.push_back(Matrix::Zero(d * d, d * d));
  }
  for (Eigen::Index p = 0; p < d; ++p)
    for (Eigen::Index q = 0; q < d; ++q)
      for (Eigen::Index q2 = 0; q2 < d; ++q2)
        if (auto t = s.product(s.adjoint_index(q), q2)) sys.inner[*t](p * d + q, p * d + q2) = psi.gram_weight(p);
  for (Eigen::Index r = 0; r < d; ++r)
    for (Eigen::Index p = 0; p < d; ++p)
      for (Eigen::Index q = 0; q < d; ++q) {
        if (auto rp = s.product(r, p)) sys.left[r](*rp * d + q, p * d + q) = 1.0;
        if (auto qr = s.product(q, r)) sys.right[r](p * d + *qr, p * d + q) = 1.0;
      }
  return sys;
}

Correspondence trivial_correspondence(const DeltaState& psi) {
  const auto& s = psi.structure();
  const Eigen::Index d = s.dim();
  SpanningSystem sys{psi, d, {}, {}, {}};
  for (Eigen::Index t = 0; t < d; ++t) sys.inner.push_back(Matrix::Zero(d, d));
  for (Eigen::Index p = 0; p < d; ++p)
    for (Eigen::Index q = 0; q < d; ++q)
      if (auto t = s.product(s.adjoint_index(p), q)) sys.inner[*t](p, q) = 1.0;
  for (Eigen::Index r = 0; r < d; ++r) {
    const Vector unit = AlgebraElement::unit(s, r).coords();
    sys.left.push_back(left_multiplication_matrix<double>(s, unit));
    sys.right.push_back(right_multiplication_matrix<double>(s, unit));
  }
  return Correspondence::quotient(sys);
}

Correspondence generated_submodule(const TensorElement& xi, const DeltaState& psi) {
  require_same_structure(xi.structure(), psi.structure());
  return Correspondence::quotient(tensor_psi_system(psi), generator_tensors(xi, psi));
}

Correspondence build_edge_correspondence(const QuantumGraph& g) {
  const auto choi = is_completely_positive(g.psi(), g.adjacency());
  if (!choi.completely_positive)
    throw Error(ErrorCode::NotCompletelyPositive,
                "Choi matrix has eigenvalue " + std::to_string(choi.min_eigenvalue));
  return generated_submodule(edge_indicator(g), g.psi());
}

Vector tensor_coords(const Correspondence& e, const TensorElement& t) {
  if (e.ambient_dim() != t.structure().dim() * t.structure().dim())
    throw Error(ErrorCode::ShapeMismatch, "module does not live in B (x) B");
  return e.coords_of(t.flatten());
}

LeftKernelReport left_kernel(const QuantumGraph& g) { return left_kernel(g, build_edge_correspondence(g)); }

LeftKernelReport left_kernel(const QuantumGraph& g, const Correspondence& e) {
  const auto& s = g.structure();
  const Eigen::Index d = s.dim();
  const Eigen::Index n = e.dim();
  Eigen::VectorXd root(d);
  for (Eigen::Index p = 0; p < d; ++p) root(p) = std::sqrt(g.psi().gram_weight(p));

  // x -> (x . v_beta)_beta in psi-whitened coordinates y = G^{1/2} x
  Matrix stack(n * n, d);
  for (Eigen::Index p = 0; p < d; ++p)
    stack.col(p) = Eigen::Map<const Vector>(e.left(p).data(), n * n) / root(p);
  Matrix whitened_kernel;
  if (n == 0) {
    whitened_kernel = Matrix::Identity(d, d);
  } else {
    Eigen::BDCSVD<Matrix> svd(stack, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-9 * sv(0)) ++rank;
    whitened_kernel = svd.matrixV().rightCols(d - rank);
  }

  LeftKernelReport r;
  r.kernel_dim = whitened_kernel.cols();
  r.kernel = root.cwiseInverse().asDiagonal() * whitened_kernel;
  r.ideal_blocks = generated_block_ideal(s, adjoint_map(g.adjacency(), g.psi()).matrix(), g.tolerance());

  Matrix complement = Matrix::Zero(d, d);
  for (int b = 0; b < s.num_blocks(); ++b) {
    if (std::find(r.ideal_blocks.begin(), r.ideal_blocks.end(), b) != r.ideal_blocks.end()) continue;
    const Eigen::Index nb = static_cast<Eigen::Index>(s.size(b)) * s.size(b);
    complement.block(s.offset(b), s.offset(b), nb, nb).setIdentity();
    r.complement_dim += nb;
  }
  const Matrix diff = whitened_kernel * whitened_kernel.adjoint() - complement;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
  r.distance = es.eigenvalues().cwiseAbs().maxCoeff();
  return r;
}

FullnessReport fullness_ideal(const QuantumGraph& g) {
  FullnessReport r;
  r.blocks = generated_block_ideal(g.structure(), g.adjacency().matrix(), g.tolerance());
  r.full = static_cast<int>(r.blocks.size()) == g.structure().num_blocks();
  return r;
}

double compact_decomposition_residual(const QuantumGraph& g) {
  return compact_decomposition_residual(g, build_edge_correspondence(g));
}

double compact_decomposition_residual(const QuantumGraph& g, const Correspondence& e) {
  const auto& s = g.structure();
  const auto eps = edge_indicator(g);
  double worst = 0;
  for (int a = 0; a < s.num_blocks(); ++a) {
    const int n = s.size(a);
    std::vector<Vector> shifted;  // f_ik . eps, indexed i * n + k
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) shifted.push_back(tensor_coords(e, left_act(adapted_unit(a, i, k, g.psi()), eps)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Matrix diff = e.left_action(adapted_unit(a, i, j, g.psi()));
        for (int k = 0; k < n; ++k) diff -= compact_operator(e, shifted[i * n + k], shifted[j * n + k]);
        for (Eigen::Index c = 0; c < diff.cols(); ++c) worst = std::max(worst, diff.col(c).norm());
      }
  }
  return worst;
}

CpCorrespondenceReport cp_correspondence(const QuantumGraph& g) {
  const auto& psi = g.psi();
  const auto& s = g.structure();
  const Eigen::Index d = s.dim();
  const Matrix& a = g.adjacency().matrix();
  auto edge = build_edge_correspondence(g);

  SpanningSystem sys = tensor_psi_system(psi);
  for (auto& k : sys.inner) k.setZero();
  for (Eigen::Index p = 0; p < d; ++p)
    for (Eigen::Index p2 = 0; p2 < d; ++p2) {
      const auto r = s.product(s.adjoint_index(p), p2);
      if (!r) continue;
      for (Eigen::Index u = 0; u < d; ++u) {
        const auto coeff = a(u, *r);
        if (coeff == 0.0) continue;
        for (Eigen::Index q = 0; q < d; ++q) {
          const auto qu = s.product(s.adjoint_index(q), u);
          if (!qu) continue;
          for (Eigen::Index q2 = 0; q2 < d; ++q2)
            if (auto t = s.product(*qu, q2)) sys.inner[*t](p * d + q, p2 * d + q2) += coeff;
        }
      }
    }
  CpCorrespondenceReport rep;
  rep.model = Correspondence::quotient(sys);
  rep.edge_dim = edge.dim();
  rep.model_dim = rep.model.dim();

  const Matrix y_edge = generator_images(edge, tensor_coords(edge, edge_indicator(g)));
  const Matrix y_model = rep.model.projection() / psi.delta();
  rep.residual = module_map_residual(edge, y_edge, rep.model, y_model, rep.isomorphism);
  return rep;
}

namespace {

RecognitionResult finish_recognition(const Correspondence& x, const Vector& xi, QuantumGraph g) {
  auto edge = build_edge_correspondence(g);
  const Matrix y_x = generator_images(x, xi);
  const Matrix y_e = generator_images(edge, tensor_coords(edge, edge_indicator(g)));
  RecognitionResult r{std::move(g), std::move(edge), Matrix(), 0.0};
  r.residual = module_map_residual(x, y_x, r.edge, y_e, r.isomorphism);
  return r;
}

}  // namespace

RecognitionResult recognize(const Correspondence& x, const CorrVector& xi, double tol) {
  if (xi.coords.size() != x.dim()) throw Error(ErrorCode::ShapeMismatch, "vector is not in the module");
  const auto& psi = x.psi();
  const auto& s = psi.structure();
  const Eigen::Index d = s.dim();
  const Eigen::Index rank = numerical_rank(generator_images(x, xi.coords), 1e-9);
  if (rank < x.dim())
    throw Error(ErrorCode::NotGenerating,
                "B xi B has dimension " + std::to_string(rank) + " of " + std::to_string(x.dim()));
  Matrix a(d, d);
  for (Eigen::Index p = 0; p < d; ++p)
    a.col(p) = psi.delta_sq() * x.b_inner(xi.coords, x.left(p) * xi.coords).coords();
  QuantumGraph g(psi, LinearMapOnB(s, std::move(a)), tol);
  return finish_recognition(x, xi.coords, std::move(g));
}

RecognitionResult recognize(const TensorElement& xi, const DeltaState& psi, double tol) {
  QuantumGraph g(psi, slice_adjacency(xi, psi), tol);
  const auto x = generated_submodule(xi, psi);
  return finish_recognition(x, tensor_coords(x, xi), std::move(g));
}

}  // namespace qgraph

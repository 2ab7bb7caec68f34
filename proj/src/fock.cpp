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

#include "qgraph/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

namespace qgraph {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

void require_same_base(const Correspondence& x, const Correspondence& y) {
  if (x.structure() != y.structure() || x.psi().weights() != y.psi().weights())
    throw Error(ErrorCode::MismatchedBase, "correspondences live over different quantum spaces");
}

}  // namespace

Correspondence interior_tensor(const Correspondence& x, const Correspondence& y, double cutoff) {
  require_same_base(x, y);
  const auto& psi = x.psi();
  const Eigen::Index d = x.structure().dim();
  const Eigen::Index ny = y.dim();
  const Eigen::Index m = x.dim() * ny;
  if (m > kSpanningCap)
    throw Error(ErrorCode::BudgetExceeded, "interior product spans " + std::to_string(m) + " vectors");

  // <xi1 (x) eta1, xi2 (x) eta2> = sum_u <xi1, xi2>_u <eta1, e_u . eta2>
  std::vector<Matrix> yl;  // psi(<eta1, e_u . eta2>)
  for (Eigen::Index u = 0; u < d; ++u) {
    Matrix g = Matrix::Zero(ny, ny);
    for (Eigen::Index t = 0; t < d; ++t) {
      const double w = psi.value_on_unit(t);
      if (w != 0.0) g += w * y.inner(t);
    }
    yl.push_back(g * y.left(u));
  }
  Matrix kscalar = Matrix::Zero(m, m);
  for (Eigen::Index u = 0; u < d; ++u) kscalar += kron(x.inner(u), yl[u]);
  kscalar = 0.5 * (kscalar + kscalar.adjoint()).eval();

  Matrix embedding(m, 0);
  if (m > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(kscalar);
    const auto& ev = es.eigenvalues();
    const double top = std::max(ev.maxCoeff(), 0.0);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = ev.size() - 1; i >= 0; --i)
      if (top > 0 && ev(i) > cutoff * top) keep.push_back(i);
    embedding.resize(m, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c)
      embedding.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]) / std::sqrt(ev(keep[c]));
  }
  Matrix projection = embedding.adjoint() * kscalar;

  const Matrix ix = Matrix::Identity(x.dim(), x.dim());
  const Matrix iy = Matrix::Identity(ny, ny);
  std::vector<Matrix> inner, left, right;
  for (Eigen::Index t = 0; t < d; ++t) {
    Matrix k = Matrix::Zero(m, m);
    for (Eigen::Index u = 0; u < d; ++u) {
      if (x.inner(u).isZero(0.0)) continue;
      k += kron(x.inner(u), y.inner(t) * y.left(u));
    }
    inner.push_back(embedding.adjoint() * k * embedding);
    left.push_back(projection * kron(x.left(t), iy) * embedding);
    right.push_back(projection * kron(ix, y.right(t)) * embedding);
  }
  return Correspondence(psi, std::move(embedding), std::move(projection), std::move(inner), std::move(left),
                        std::move(right));
}

double balanced_residual(const Correspondence& x, const Correspondence& y, const Correspondence& xy) {
  const Matrix ix = Matrix::Identity(x.dim(), x.dim());
  const Matrix iy = Matrix::Identity(y.dim(), y.dim());
  double r = 0;
  for (Eigen::Index p = 0; p < x.structure().dim(); ++p)
    r = std::max(r, (xy.projection() * (kron(x.right(p), iy) - kron(ix, y.left(p)))).norm());
  return r;
}

// ---------------------------------------------------------------------------

FockOperator::FockOperator(std::vector<Eigen::Index> level_dims) : dims_(std::move(level_dims)) {}

Eigen::Index FockOperator::total_dim() const { return std::accumulate(dims_.begin(), dims_.end(), Eigen::Index{0}); }

Matrix& FockOperator::block(int to, int from) {
  auto it = blocks_.find({to, from});
  if (it == blocks_.end())
    it = blocks_.emplace(std::make_pair(to, from), Matrix::Zero(dims_.at(to), dims_.at(from))).first;
  return it->second;
}

const Matrix* FockOperator::find(int to, int from) const {
  auto it = blocks_.find({to, from});
  return it == blocks_.end() ? nullptr : &it->second;
}

Matrix FockOperator::dense() const {
  std::vector<Eigen::Index> off(dims_.size() + 1, 0);
  for (std::size_t n = 0; n < dims_.size(); ++n) off[n + 1] = off[n] + dims_[n];
  Matrix out = Matrix::Zero(off.back(), off.back());
  for (const auto& [key, m] : blocks_) out.block(off[key.first], off[key.second], m.rows(), m.cols()) = m;
  return out;
}

FockOperator FockOperator::adjoint() const {
  FockOperator out(dims_);
  for (const auto& [key, m] : blocks_) out.blocks_.emplace(std::make_pair(key.second, key.first), m.adjoint());
  return out;
}

FockOperator operator*(const FockOperator& l, const FockOperator& r) {
  if (l.dims_ != r.dims_) throw Error(ErrorCode::ShapeMismatch, "Fock operators on different truncations");
  FockOperator out(l.dims_);
  for (const auto& [lk, lm] : l.blocks_)
    for (const auto& [rk, rm] : r.blocks_)
      if (lk.second == rk.first) out.block(lk.first, rk.second) += lm * rm;
  return out;
}

FockOperator operator+(const FockOperator& l, const FockOperator& r) {
  if (l.dims_ != r.dims_) throw Error(ErrorCode::ShapeMismatch, "Fock operators on different truncations");
  FockOperator out = l;
  for (const auto& [k, m] : r.blocks_) out.block(k.first, k.second) += m;
  return out;
}

FockOperator operator-(const FockOperator& l, const FockOperator& r) { return l + std::complex<double>(-1.0) * r; }

FockOperator operator*(std::complex<double> c, FockOperator op) {
  for (auto& [k, m] : op.blocks_) m *= c;
  return op;
}

// ---------------------------------------------------------------------------

FockTruncation::FockTruncation(QuantumGraph g, int levels) : graph_(std::move(g)) {
  if (levels < 1) throw Error(ErrorCode::ShapeMismatch, "the truncation needs at least one level");
  const auto ss = quantum_sources_sinks(graph_);
  if (!ss.sources.empty())
    throw Error(ErrorCode::HasQuantumSource,
                "block " + std::to_string(ss.sources.front()) +
                    " lies in ker A; the Fock model requires a graph without quantum sources");
  edge_ = build_edge_correspondence(graph_);
  levels_.push_back(trivial_correspondence(graph_.psi()));
  Eigen::Index total = levels_.back().dim();
  for (int n = 1; n <= levels; ++n) {
    levels_.push_back(interior_tensor(edge_, levels_.back()));
    total += levels_.back().dim();
    if (total > kFockBudget)
      throw Error(ErrorCode::BudgetExceeded, "Fock truncation exceeds " + std::to_string(kFockBudget) + " coordinates");
  }
  for (int n = 0; n < levels; ++n) {
    const Eigen::Index dn = levels_[n].dim();
    std::vector<Matrix> ops;
    for (Eigen::Index a = 0; a < edge_.dim(); ++a) ops.push_back(levels_[n + 1].projection().middleCols(a * dn, dn));
    creation_.push_back(std::move(ops));
  }
}

std::vector<Eigen::Index> FockTruncation::level_dims() const {
  std::vector<Eigen::Index> d;
  for (const auto& l : levels_) d.push_back(l.dim());
  return d;
}

Eigen::Index FockTruncation::total_dim() const {
  const auto d = level_dims();
  return std::accumulate(d.begin(), d.end(), Eigen::Index{0});
}

FockOperator FockTruncation::creation(const Vector& xi) const {
  if (xi.size() != edge_.dim()) throw Error(ErrorCode::ShapeMismatch, "vector is not in E");
  FockOperator op(level_dims());
  for (int n = 0; n < levels(); ++n) {
    Matrix& b = op.block(n + 1, n);
    for (Eigen::Index a = 0; a < xi.size(); ++a)
      if (xi(a) != 0.0) b += xi(a) * creation_[n][a];
  }
  return op;
}

FockOperator FockTruncation::creation_basis(Eigen::Index alpha) const {
  FockOperator op(level_dims());
  for (int n = 0; n < levels(); ++n) op.block(n + 1, n) = creation_[n].at(static_cast<std::size_t>(alpha));
  return op;
}

FockOperator FockTruncation::left_action(const AlgebraElement& x) const {
  FockOperator op(level_dims());
  for (int n = 0; n <= levels(); ++n) op.block(n, n) = levels_[n].left_action(x);
  return op;
}

Window FockTruncation::window(int first, int last) const {
  const auto d = level_dims();
  Window w;
  Eigen::Index off = 0;
  for (int n = 0; n <= levels(); ++n) {
    if (n >= first && n <= last)
      for (Eigen::Index i = 0; i < d[n]; ++i) w.push_back(off + i);
    off += d[n];
  }
  return w;
}

FockTruncation build_fock(const QuantumGraph& g, int levels) { return FockTruncation(g, levels); }

// ---------------------------------------------------------------------------

namespace {

double compressed(const Matrix& r, const Window& w) { return w.empty() ? 0.0 : windowed_norm(r, w); }

}  // namespace

RepresentationReport representation_residuals(const FockTruncation& f) {
  const auto& s = f.graph().structure();
  const auto& e = f.edge();
  const Eigen::Index d = s.dim();
  const Eigen::Index ne = e.dim();
  const int top = f.levels();
  const Window lower = f.window(0, top - 1);
  const Window interior = f.window(1, top - 1);
  const Window vacuum = f.window(0, 0);

  std::vector<Matrix> t, pi;
  for (Eigen::Index a = 0; a < ne; ++a) t.push_back(f.creation_basis(a).dense());
  for (Eigen::Index p = 0; p < d; ++p) pi.push_back(f.left_action(AlgebraElement::unit(s, p)).dense());
  auto pi_of = [&](const AlgebraElement& x) {
    const Vector c = x.coords();
    Matrix out = Matrix::Zero(f.total_dim(), f.total_dim());
    for (Eigen::Index p = 0; p < d; ++p)
      if (c(p) != 0.0) out += c(p) * pi[p];
    return out;
  };

  RepresentationReport r;
  for (Eigen::Index a = 0; a < ne; ++a)
    for (Eigen::Index b = 0; b < ne; ++b) {
      const Matrix diff = t[a].adjoint() * t[b] - pi_of(e.b_inner(Vector::Unit(ne, a), Vector::Unit(ne, b)));
      r.inner = std::max(r.inner, compressed(diff, lower));
    }

  // phi(e_p) as a combination of theta_{v_a, v_b}, solved in the space of module maps
  Matrix thetas(ne * ne, ne * ne);
  for (Eigen::Index a = 0; a < ne; ++a)
    for (Eigen::Index b = 0; b < ne; ++b) {
      const Matrix th = compact_operator(e, Vector::Unit(ne, a), Vector::Unit(ne, b));
      thetas.col(a * ne + b) = Eigen::Map<const Vector>(th.data(), ne * ne);
    }
  const auto solver = thetas.completeOrthogonalDecomposition();
  for (Eigen::Index p = 0; p < d; ++p) {
    const Vector target = Eigen::Map<const Vector>(e.left(p).data(), ne * ne);
    const Vector c = solver.solve(target);
    r.expansion = std::max(r.expansion, (thetas * c - target).norm());
    Matrix psi_t = Matrix::Zero(f.total_dim(), f.total_dim());
    for (Eigen::Index a = 0; a < ne; ++a)
      for (Eigen::Index b = 0; b < ne; ++b)
        if (c(a * ne + b) != 0.0) psi_t += c(a * ne + b) * t[a] * t[b].adjoint();
    const Matrix diff = pi[p] - psi_t;
    r.covariance = std::max(r.covariance, compressed(diff, interior));
    r.vacuum_defect = std::max(r.vacuum_defect, compressed(diff, vacuum));
  }

  r.unital = (pi_of(AlgebraElement::identity(s)) - Matrix::Identity(f.total_dim(), f.total_dim())).norm();
  for (Eigen::Index p = 0; p < d; ++p) {
    r.multiplicativity = std::max(r.multiplicativity, (pi[s.adjoint_index(p)] - pi[p].adjoint()).norm());
    for (Eigen::Index q = 0; q < d; ++q) {
      Matrix diff = pi[p] * pi[q];
      if (auto pq = s.product(p, q)) diff -= pi[*pq];
      r.multiplicativity = std::max(r.multiplicativity, diff.norm());
    }
  }
  return r;
}

CKFamily fock_family(const FockTruncation& f) {
  const auto& g = f.graph();
  const auto& s = g.structure();
  const auto eps = edge_indicator(g);
  std::vector<Matrix> images;
  for (Eigen::Index p = 0; p < s.dim(); ++p) {
    const Vector xi = tensor_coords(f.edge(), left_act(AlgebraElement::unit(s, p), eps));
    images.push_back(f.creation(xi).dense() / g.psi().delta());
  }
  return CKFamily(s, f.total_dim(), std::move(images));
}

LqckFockReport lqck_fock_residuals(const QuantumGraph& g, int levels) {
  return lqck_fock_residuals(build_fock(g, levels));
}

LqckFockReport lqck_fock_residuals(const FockTruncation& f) {
  const auto& g = f.graph();
  const auto& psi = g.psi();
  const auto& s = g.structure();
  const Eigen::Index d = s.dim();
  const int top = f.levels();
  const Window interior = f.window(1, top - 1);
  const auto family = fock_family(f);

  LqckFockReport r;
  r.level_dims = f.level_dims();
  if (!interior.empty()) {
    r.interior = lqck_residuals(family, g, interior);
    r.qck_interior = qck_residuals(family, g, interior);
  }
  r.with_vacuum = lqck_residuals(family, g, f.window(0, top - 1));

  std::vector<Matrix> t, pi;
  for (Eigen::Index p = 0; p < d; ++p) {
    t.push_back(psi.delta() * family.image(p));
    pi.push_back(f.left_action(AlgebraElement::unit(s, p)).dense());
  }
  const Matrix& a = g.adjacency().matrix();
  for (Eigen::Index p = 0; p < d; ++p) {
    for (Eigen::Index q = 0; q < d; ++q) {
      Matrix diff = t[s.adjoint_index(p)].adjoint() * t[q];
      if (auto pq = s.product(p, q))
        for (Eigen::Index u = 0; u < d; ++u)
          if (a(u, *pq) != 0.0) diff -= a(u, *pq) * pi[u] / psi.delta_sq();
      r.toeplitz_inner = std::max(r.toeplitz_inner, compressed(diff, interior));
    }
    const auto& u = s.unit(p);
    Matrix diff = -pi[p];
    for (int k = 0; k < s.size(u.block); ++k)
      diff += t[s.index(u.block, u.row, k)] * t[s.index(u.block, u.col, k)].adjoint() / psi.weight(u.block, k);
    r.toeplitz_compact = std::max(r.toeplitz_compact, compressed(diff, interior));
  }
  return r;
}

}  // namespace qgraph

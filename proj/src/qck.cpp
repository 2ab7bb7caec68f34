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

#include "qgraph/qck.hpp"

#include <algorithm>
#include <cmath>

namespace qgraph {

CKFamily::CKFamily(BlockStructure s, Eigen::Index k, std::vector<Matrix> images)
    : structure_(std::move(s)), k_(k), images_(std::move(images)) {
  if (static_cast<Eigen::Index>(images_.size()) != structure_.dim())
    throw Error(ErrorCode::ShapeMismatch, "one image per matrix unit is required");
  for (const auto& m : images_)
    if (m.rows() != k_ || m.cols() != k_) throw Error(ErrorCode::ShapeMismatch, "images must be k x k");
}

CKFamily CKFamily::zero(const BlockStructure& s, Eigen::Index k) {
  return CKFamily(s, k, std::vector<Matrix>(static_cast<std::size_t>(s.dim()), Matrix::Zero(k, k)));
}

Matrix CKFamily::operator()(const AlgebraElement& x) const {
  require_conforms(x, structure_);
  const Vector c = x.coords();
  Matrix out = Matrix::Zero(k_, k_);
  for (Eigen::Index p = 0; p < c.size(); ++p)
    if (c(p) != 0.0) out += c(p) * image(p);
  return out;
}

Matrix CKFamily::star(const AlgebraElement& x) const { return (*this)(x.adjoint()).adjoint(); }

Matrix CKFamily::adapted(Eigen::Index p, const DeltaState& psi) const { return psi.adapted_scale(p) * image(p); }

double windowed_norm(const Matrix& r, const Window& window) {
  if (window.empty()) return r.norm();
  double sq = 0;
  for (auto i : window)
    for (auto j : window) sq += std::norm(r(i, j));
  return std::sqrt(sq);
}

Matrix comultiplied_square(const CKFamily& s, const DeltaState& psi, Eigen::Index p) {
  const auto& bs = psi.structure();
  const auto& u = bs.unit(p);
  Matrix out = Matrix::Zero(s.k(), s.k());
  for (int n = 0; n < bs.size(u.block); ++n)
    out += s.image(bs.index(u.block, u.row, n)) * s.image(bs.index(u.block, u.col, n)).adjoint() /
           psi.weight(u.block, n);
  return out;
}

namespace {

void require_family_on(const CKFamily& s, const QuantumGraph& g) {
  if (s.structure() != g.structure()) throw Error(ErrorCode::ShapeMismatch, "family and graph live on different algebras");
}

std::vector<Matrix> all_squares(const CKFamily& s, const DeltaState& psi) {
  std::vector<Matrix> q;
  for (Eigen::Index p = 0; p < psi.structure().dim(); ++p) q.push_back(comultiplied_square(s, psi, p));
  return q;
}

Matrix square_of(const std::vector<Matrix>& squares, const Vector& x, Eigen::Index k) {
  Matrix out = Matrix::Zero(k, k);
  for (Eigen::Index u = 0; u < x.size(); ++u)
    if (x(u) != 0.0) out += x(u) * squares[static_cast<std::size_t>(u)];
  return out;
}

double unit_relation(const std::vector<Matrix>& squares, const QuantumGraph& g, Eigen::Index k, const Window& w) {
  Matrix r = -Matrix::Identity(k, k) / g.psi().delta_sq();
  const auto& bs = g.structure();
  for (Eigen::Index p = 0; p < bs.dim(); ++p)
    if (bs.is_diagonal(p)) r += squares[static_cast<std::size_t>(p)];
  return windowed_norm(r, w);
}

}  // namespace

QckReport qck_residuals(const CKFamily& s, const QuantumGraph& g, const Window& window) {
  require_family_on(s, g);
  const auto& psi = g.psi();
  const auto& bs = g.structure();
  const auto squares = all_squares(s, psi);
  const Matrix& a = g.adjacency().matrix();
  QckReport r;
  for (Eigen::Index p = 0; p < bs.dim(); ++p) {
    const auto& u = bs.unit(p);
    const int n = bs.size(u.block);
    // (m^* (x) 1) m^*(e_ij) = sum_{k,l} e_il (x) e_lk (x) e_kj / (w_k w_l)
    Matrix r1 = -s.image(p);
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        r1 += s.image(bs.index(u.block, u.row, l)) * s.image(bs.index(u.block, k, l)).adjoint() *
              s.image(bs.index(u.block, k, u.col)) / (psi.weight(u.block, k) * psi.weight(u.block, l));
    r.qck1 = std::max(r.qck1, windowed_norm(r1, window));

    Matrix r2 = -square_of(squares, a.col(p), s.k());
    for (int k = 0; k < n; ++k)
      r2 += s.image(bs.index(u.block, k, u.row)).adjoint() * s.image(bs.index(u.block, k, u.col)) /
            psi.weight(u.block, k);
    r.qck2 = std::max(r.qck2, windowed_norm(r2, window));
  }
  r.qck3 = unit_relation(squares, g, s.k(), window);
  return r;
}

LqckReport lqck_residuals(const CKFamily& s, const QuantumGraph& g, const Window& window) {
  require_family_on(s, g);
  const auto& psi = g.psi();
  const auto& bs = g.structure();
  const Eigen::Index d = bs.dim();
  const Eigen::Index k = s.k();
  const double dsq = psi.delta_sq();
  const auto squares = all_squares(s, psi);
  const Matrix& a = g.adjacency().matrix();
  const Matrix adapted_a = g.adjacency().adapted_matrix(psi);

  std::vector<Matrix> sf;  // s(f_p)
  for (Eigen::Index p = 0; p < d; ++p) sf.push_back(s.adapted(p, psi));
  // sum_n s_ln (s_mn)^* for the adapted unit f_lm
  std::vector<Matrix> adapted_square(static_cast<std::size_t>(d), Matrix::Zero(k, k));
  for (Eigen::Index p = 0; p < d; ++p) {
    const auto& u = bs.unit(p);
    for (int n = 0; n < bs.size(u.block); ++n)
      adapted_square[p] += sf[bs.index(u.block, u.row, n)] * sf[bs.index(u.block, u.col, n)].adjoint();
  }

  LqckReport r;
  for (Eigen::Index p = 0; p < d; ++p) {
    const auto& u = bs.unit(p);
    const int na = bs.size(u.block);
    for (Eigen::Index q = 0; q < d; ++q) {
      const auto& v = bs.unit(q);
      const bool same = u.block == v.block;

      // QCP1 on (f_ij, f_rs)
      Matrix e1 = Matrix::Zero(k, k);
      for (int kk = 0; kk < na; ++kk)
        e1 += sf[bs.index(u.block, u.row, kk)] * sf[bs.index(u.block, u.col, kk)].adjoint() * sf[q];
      if (same && u.col == v.row) e1 -= sf[bs.index(u.block, u.row, v.col)] / (dsq * psi.weight(u.block, u.col));
      r.lqck1 = std::max(r.lqck1, windowed_norm(e1, window));

      // LQCK1 on (e_p, e_q), rescaled to the adapted pair
      Matrix c1 = squares[p] * s.image(q);
      if (auto pq = bs.product(p, q)) c1 -= s.image(*pq) / dsq;
      c1 *= psi.adapted_scale(p) * psi.adapted_scale(q);
      r.agreement = std::max(r.agreement, (e1 - c1).norm());

      // QCP2 on (f_ij, f_rs)
      Matrix e2 = sf[p].adjoint() * sf[q];
      if (same && u.row == v.row) {
        const auto js = bs.index(u.block, u.col, v.col);
        Matrix rhs = Matrix::Zero(k, k);
        for (Eigen::Index lm = 0; lm < d; ++lm)
          if (adapted_a(lm, js) != 0.0) rhs += adapted_a(lm, js) * adapted_square[lm];
        e2 -= rhs / (dsq * psi.weight(u.block, u.row));
      }
      r.lqck2 = std::max(r.lqck2, windowed_norm(e2, window));

      // LQCK2 on (f_ji, f_rs): s^*(e_ji) s(e_rs) - delta^-2 Q(A(e_ji e_rs))
      const auto ji = bs.adjoint_index(p);
      Matrix c2 = s.image(p).adjoint() * s.image(q);
      if (auto prod = bs.product(ji, q)) c2 -= square_of(squares, a.col(*prod), k) / dsq;
      c2 *= psi.adapted_scale(ji) * psi.adapted_scale(q);
      r.agreement = std::max(r.agreement, (e2 - c2).norm());
    }
  }

  // QCP3: sum_c sum_lm psi(e_ll^(c)) s_lm^(c) (s_lm^(c))^*
  Matrix e3 = -Matrix::Identity(k, k) / dsq;
  for (Eigen::Index p = 0; p < d; ++p) {
    const auto& u = bs.unit(p);
    e3 += psi.weight(u.block, u.row) * sf[p] * sf[p].adjoint();
  }
  r.lqck3 = windowed_norm(e3, window);
  Matrix c3 = -Matrix::Identity(k, k) / dsq;
  for (Eigen::Index p = 0; p < d; ++p)
    if (bs.is_diagonal(p)) c3 += squares[p];
  r.agreement = std::max(r.agreement, (e3 - c3).norm());
  return r;
}

namespace {

void require_classical(const QuantumGraph& g) {
  if (!g.structure().commutative()) throw Error(ErrorCode::NotClassical, "classical reduction needs singleton blocks");
  if (!g.psi().tracial()) throw Error(ErrorCode::NotClassical, "classical reduction needs the uniform state");
}

}  // namespace

ClassicalReport classical_reduction(const QuantumGraph& g, const CKFamily& s, const Window& window, double tol) {
  require_classical(g);
  require_family_on(s, g);
  const Eigen::Index n = g.structure().dim();
  const Matrix& a = g.adjacency().matrix();
  std::vector<Matrix> big;
  for (Eigen::Index i = 0; i < n; ++i) big.push_back(static_cast<double>(n) * s.image(i));

  ClassicalReport r;
  Matrix sum = -Matrix::Identity(s.k(), s.k());
  for (Eigen::Index i = 0; i < n; ++i) {
    r.partial_isometry = std::max(r.partial_isometry, windowed_norm(big[i] * big[i].adjoint() * big[i] - big[i], window));
    Matrix ck = big[i].adjoint() * big[i];
    for (Eigen::Index j = 0; j < n; ++j)
      if (a(j, i) != 0.0) ck -= a(j, i) * big[j] * big[j].adjoint();
    r.cuntz_krieger = std::max(r.cuntz_krieger, windowed_norm(ck, window));
    sum += big[i] * big[i].adjoint();
  }
  r.range_sum = windowed_norm(sum, window);
  r.qck = qck_residuals(s, g, window);
  const bool ck_ok = std::max({r.partial_isometry, r.cuntz_krieger, r.range_sum}) <= tol;
  const bool qck_ok = r.qck.max() <= tol / static_cast<double>(n);
  r.consistent = ck_ok == qck_ok;
  return r;
}

CKFamily family_from_ck(const QuantumGraph& g, const std::vector<Matrix>& partial_isometries) {
  require_classical(g);
  const Eigen::Index n = g.structure().dim();
  if (static_cast<Eigen::Index>(partial_isometries.size()) != n)
    throw Error(ErrorCode::ShapeMismatch, "one operator per vertex is required");
  std::vector<Matrix> images;
  for (const auto& m : partial_isometries) images.push_back(m / static_cast<double>(n));
  return CKFamily(g.structure(), partial_isometries.front().rows(), std::move(images));
}

}  // namespace qgraph

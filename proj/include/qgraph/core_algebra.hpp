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

#ifndef QGRAPH_CORE_ALGEBRA_HPP
#define QGRAPH_CORE_ALGEBRA_HPP

// Finite quantum spaces (B, psi) with B = M_{N_1} (+) ... (+) M_{N_d}.
//
// Coordinates: every element of B is a vector over the standard matrix units
// e_ij^{(a)}, ordered by block, then row-major inside the block. Elements of
// B (x) B are dim x dim coefficient matrices over pairs of units in that order.
// All types are templated on the real scalar; the rest of the library uses the
// double aliases at the bottom of this file.

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qgraph/error.hpp"

namespace qgraph {

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr double kAlgebraicTolerance = 1e-12;

struct UnitIndex {
  int block = 0;
  int row = 0;
  int col = 0;
};

class BlockStructure {
 public:
  BlockStructure() = default;

  explicit BlockStructure(std::vector<int> sizes) : sizes_(std::move(sizes)) {
    if (sizes_.empty()) throw Error(ErrorCode::ShapeMismatch, "block structure needs at least one block");
    for (int a = 0; a < num_blocks(); ++a) {
      if (sizes_[a] < 1) throw Error(ErrorCode::ShapeMismatch, "block sizes must be positive");
      offsets_.push_back(dim_);
      for (int i = 0; i < sizes_[a]; ++i)
        for (int j = 0; j < sizes_[a]; ++j) units_.push_back({a, i, j});
      dim_ += static_cast<Eigen::Index>(sizes_[a]) * sizes_[a];
    }
  }

  int num_blocks() const { return static_cast<int>(sizes_.size()); }
  int size(int a) const { return sizes_.at(a); }
  const std::vector<int>& sizes() const { return sizes_; }
  Eigen::Index dim() const { return dim_; }
  Eigen::Index offset(int a) const { return offsets_.at(a); }
  bool commutative() const {
    for (int n : sizes_)
      if (n != 1) return false;
    return true;
  }

  Eigen::Index index(int a, int i, int j) const {
    if (a < 0 || a >= num_blocks() || i < 0 || j < 0 || i >= sizes_[a] || j >= sizes_[a])
      throw Error(ErrorCode::IndexOutOfRange, "matrix unit index out of range");
    return offsets_[a] + static_cast<Eigen::Index>(i) * sizes_[a] + j;
  }

  const UnitIndex& unit(Eigen::Index p) const { return units_[static_cast<std::size_t>(p)]; }

  /// e_p^* = e_{adjoint_index(p)}.
  Eigen::Index adjoint_index(Eigen::Index p) const {
    const auto& u = unit(p);
    return offsets_[u.block] + static_cast<Eigen::Index>(u.col) * sizes_[u.block] + u.row;
  }

  /// e_p e_r is either zero or another matrix unit.
  std::optional<Eigen::Index> product(Eigen::Index p, Eigen::Index r) const {
    const auto& u = unit(p);
    const auto& v = unit(r);
    if (u.block != v.block || u.col != v.row) return std::nullopt;
    return offsets_[u.block] + static_cast<Eigen::Index>(u.row) * sizes_[u.block] + v.col;
  }

  bool is_diagonal(Eigen::Index p) const { return unit(p).row == unit(p).col; }

  friend bool operator==(const BlockStructure& l, const BlockStructure& r) { return l.sizes_ == r.sizes_; }
  friend bool operator!=(const BlockStructure& l, const BlockStructure& r) { return !(l == r); }

 private:
  std::vector<int> sizes_;
  std::vector<Eigen::Index> offsets_;
  std::vector<UnitIndex> units_;
  Eigen::Index dim_ = 0;
};

inline void require_same_structure(const BlockStructure& l, const BlockStructure& r) {
  if (l != r) throw Error(ErrorCode::ShapeMismatch, "block structures differ");
}

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

// ---------------------------------------------------------------------------
// psi as diagonal per-block densities

template <typename Real>
class DeltaStateT {
 public:
  DeltaStateT() = default;

  /// Validates that `weights` (the diagonal of each rho_a) define a faithful
  /// state whose per-block Tr(rho_a^{-1}) all coincide.
  DeltaStateT(BlockStructure structure, std::vector<std::vector<Real>> weights,
              Real tol = Real(kDefaultTolerance))
      : structure_(std::move(structure)), weights_(std::move(weights)) {
    if (static_cast<int>(weights_.size()) != structure_.num_blocks())
      throw Error(ErrorCode::ShapeMismatch, "one weight list per block is required");
    Real total = 0;
    for (int a = 0; a < structure_.num_blocks(); ++a) {
      if (static_cast<int>(weights_[a].size()) != structure_.size(a))
        throw Error(ErrorCode::ShapeMismatch, "weight list length must equal the block size");
      for (Real w : weights_[a]) {
        if (!(w > 0)) throw Error(ErrorCode::NonPositiveWeight, "state weights must be strictly positive");
        total += w;
      }
    }
    if (std::abs(total - 1) > tol)
      throw Error(ErrorCode::NotState, "weights sum to " + std::to_string(static_cast<double>(total)));
    delta_sq_ = inverse_trace(0);
    for (int a = 1; a < structure_.num_blocks(); ++a) {
      const Real t = inverse_trace(a);
      if (std::abs(t - delta_sq_) > tol * delta_sq_)
        throw Error(ErrorCode::NotDeltaForm, "Tr(rho^-1) of block " + std::to_string(a) + " is " +
                                                 std::to_string(static_cast<double>(t)) + ", block 0 has " +
                                                 std::to_string(static_cast<double>(delta_sq_)));
    }
  }

  const BlockStructure& structure() const { return structure_; }
  const std::vector<std::vector<Real>>& weights() const { return weights_; }
  Real weight(int a, int i) const { return weights_.at(a).at(i); }
  Real delta_sq() const { return delta_sq_; }
  Real delta() const { return std::sqrt(delta_sq_); }

  /// psi(e_p).
  Real value_on_unit(Eigen::Index p) const {
    const auto& u = structure_.unit(p);
    return u.row == u.col ? weights_[u.block][u.row] : Real(0);
  }

  /// psi(e_p^* e_p); the GNS Gram matrix of the standard units is diagonal.
  Real gram_weight(Eigen::Index p) const {
    const auto& u = structure_.unit(p);
    return weights_[u.block][u.col];
  }

  /// 1 / sqrt(psi(e_ii) psi(e_jj)), the factor with f_ij = factor * e_ij.
  Real adapted_scale(Eigen::Index p) const {
    const auto& u = structure_.unit(p);
    return Real(1) / std::sqrt(weights_[u.block][u.row] * weights_[u.block][u.col]);
  }

  CVector<Real> functional() const {
    CVector<Real> v(structure_.dim());
    for (Eigen::Index p = 0; p < structure_.dim(); ++p) v(p) = value_on_unit(p);
    return v;
  }

  bool tracial(Real tol = Real(kAlgebraicTolerance)) const {
    for (const auto& block : weights_)
      for (Real w : block)
        if (std::abs(w - block.front()) > tol) return false;
    return true;
  }

 private:
  Real inverse_trace(int a) const {
    Real t = 0;
    for (Real w : weights_[a]) t += Real(1) / w;
    return t;
  }

  BlockStructure structure_;
  std::vector<std::vector<Real>> weights_;
  Real delta_sq_ = 0;
};

template <typename Real = double>
DeltaStateT<Real> validate_delta_form(const BlockStructure& sizes, std::vector<std::vector<Real>> weights,
                                      Real tol = Real(kDefaultTolerance)) {
  return DeltaStateT<Real>(sizes, std::move(weights), tol);
}

/// The unique tracial delta-form: rho_a = (N_a / dim B) 1, delta^2 = dim B.
template <typename Real = double>
DeltaStateT<Real> tracial_delta_form(const BlockStructure& sizes) {
  std::vector<std::vector<Real>> w;
  for (int n : sizes.sizes()) w.emplace_back(n, Real(n) / Real(sizes.dim()));
  return DeltaStateT<Real>(sizes, std::move(w));
}

// ---------------------------------------------------------------------------
// elements of B

template <typename Real>
class AlgebraElementT {
 public:
  using Scalar = std::complex<Real>;
  using Matrix = CMatrix<Real>;
  using Vector = CVector<Real>;

  AlgebraElementT() = default;
  explicit AlgebraElementT(std::vector<Matrix> blocks) : blocks_(std::move(blocks)) {
    for (const auto& b : blocks_)
      if (b.rows() != b.cols()) throw Error(ErrorCode::ShapeMismatch, "blocks must be square");
  }

  static AlgebraElementT zero(const BlockStructure& s) {
    std::vector<Matrix> blocks;
    for (int n : s.sizes()) blocks.push_back(Matrix::Zero(n, n));
    return AlgebraElementT(std::move(blocks));
  }

  static AlgebraElementT identity(const BlockStructure& s) {
    std::vector<Matrix> blocks;
    for (int n : s.sizes()) blocks.push_back(Matrix::Identity(n, n));
    return AlgebraElementT(std::move(blocks));
  }

  static AlgebraElementT unit(const BlockStructure& s, int a, int i, int j) {
    s.index(a, i, j);
    auto x = zero(s);
    x.blocks_[a](i, j) = Scalar(1);
    return x;
  }

  static AlgebraElementT unit(const BlockStructure& s, Eigen::Index p) {
    const auto& u = s.unit(p);
    return unit(s, u.block, u.row, u.col);
  }

  static AlgebraElementT from_coords(const BlockStructure& s, const Vector& c) {
    if (c.size() != s.dim()) throw Error(ErrorCode::ShapeMismatch, "coordinate vector has wrong length");
    auto x = zero(s);
    for (int a = 0; a < s.num_blocks(); ++a)
      for (int i = 0; i < s.size(a); ++i)
        for (int j = 0; j < s.size(a); ++j) x.blocks_[a](i, j) = c(s.index(a, i, j));
    return x;
  }

  const std::vector<Matrix>& blocks() const { return blocks_; }
  const Matrix& block(int a) const { return blocks_.at(a); }
  Matrix& block(int a) { return blocks_.at(a); }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }

  bool conforms_to(const BlockStructure& s) const {
    if (num_blocks() != s.num_blocks()) return false;
    for (int a = 0; a < s.num_blocks(); ++a)
      if (blocks_[a].rows() != s.size(a)) return false;
    return true;
  }

  Vector coords() const {
    Eigen::Index n = 0;
    for (const auto& b : blocks_) n += b.size();
    Vector c(n);
    Eigen::Index k = 0;
    for (const auto& b : blocks_)
      for (Eigen::Index i = 0; i < b.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j) c(k++) = b(i, j);
    return c;
  }

  AlgebraElementT adjoint() const {
    std::vector<Matrix> blocks;
    for (const auto& b : blocks_) blocks.push_back(b.adjoint());
    return AlgebraElementT(std::move(blocks));
  }

  Real norm() const {
    Real s = 0;
    for (const auto& b : blocks_) s += b.squaredNorm();
    return std::sqrt(s);
  }

  AlgebraElementT& operator+=(const AlgebraElementT& o) { return combine(o, [](Matrix& l, const Matrix& r) { l += r; }); }
  AlgebraElementT& operator-=(const AlgebraElementT& o) { return combine(o, [](Matrix& l, const Matrix& r) { l -= r; }); }
  AlgebraElementT& operator*=(Scalar c) {
    for (auto& b : blocks_) b *= c;
    return *this;
  }

  friend AlgebraElementT operator+(AlgebraElementT l, const AlgebraElementT& r) { return l += r; }
  friend AlgebraElementT operator-(AlgebraElementT l, const AlgebraElementT& r) { return l -= r; }
  friend AlgebraElementT operator*(Scalar c, AlgebraElementT x) { return x *= c; }
  friend AlgebraElementT operator*(const AlgebraElementT& l, const AlgebraElementT& r) {
    l.require_conformal(r);
    std::vector<Matrix> blocks;
    for (int a = 0; a < l.num_blocks(); ++a) blocks.push_back(l.blocks_[a] * r.blocks_[a]);
    return AlgebraElementT(std::move(blocks));
  }

 private:
  void require_conformal(const AlgebraElementT& o) const {
    if (num_blocks() != o.num_blocks()) throw Error(ErrorCode::ShapeMismatch, "block counts differ");
    for (int a = 0; a < num_blocks(); ++a)
      if (blocks_[a].rows() != o.blocks_[a].rows()) throw Error(ErrorCode::ShapeMismatch, "block sizes differ");
  }

  template <typename Op>
  AlgebraElementT& combine(const AlgebraElementT& o, Op op) {
    require_conformal(o);
    for (int a = 0; a < num_blocks(); ++a) op(blocks_[a], o.blocks_[a]);
    return *this;
  }

  std::vector<Matrix> blocks_;
};

// ---------------------------------------------------------------------------
// elements of B (x) B

template <typename Real>
class TensorElementT {
 public:
  using Scalar = std::complex<Real>;
  using Matrix = CMatrix<Real>;
  using Vector = CVector<Real>;

  TensorElementT() = default;
  TensorElementT(BlockStructure s, Matrix coeffs) : structure_(std::move(s)), coeffs_(std::move(coeffs)) {
    if (coeffs_.rows() != structure_.dim() || coeffs_.cols() != structure_.dim())
      throw Error(ErrorCode::ShapeMismatch, "tensor coefficient matrix must be dim x dim");
  }

  static TensorElementT zero(const BlockStructure& s) { return TensorElementT(s, Matrix::Zero(s.dim(), s.dim())); }

  static TensorElementT simple(const BlockStructure& s, const AlgebraElementT<Real>& x,
                               const AlgebraElementT<Real>& y) {
    if (!x.conforms_to(s) || !y.conforms_to(s)) throw Error(ErrorCode::ShapeMismatch, "factor shapes");
    return TensorElementT(s, x.coords() * y.coords().transpose());
  }

  /// Inverse of flatten(): coordinate (p, q) sits at p * dim + q.
  static TensorElementT from_flat(const BlockStructure& s, const Vector& flat) {
    if (flat.size() != s.dim() * s.dim()) throw Error(ErrorCode::ShapeMismatch, "flat tensor length");
    Matrix c(s.dim(), s.dim());
    for (Eigen::Index p = 0; p < s.dim(); ++p) c.row(p) = flat.segment(p * s.dim(), s.dim()).transpose();
    return TensorElementT(s, std::move(c));
  }

  const BlockStructure& structure() const { return structure_; }
  const Matrix& coeffs() const { return coeffs_; }
  Matrix& coeffs() { return coeffs_; }

  /// Coefficients of e_ij^{(a)} (x) e_rs^{(b)} indexed by ((i,j), (r,s)).
  Matrix pair_block(int a, int b) const {
    const Eigen::Index na = structure_.size(a) * structure_.size(a);
    const Eigen::Index nb = structure_.size(b) * structure_.size(b);
    return coeffs_.block(structure_.offset(a), structure_.offset(b), na, nb);
  }

  Vector flatten() const {
    const Eigen::Index n = structure_.dim();
    Vector flat(n * n);
    for (Eigen::Index p = 0; p < n; ++p) flat.segment(p * n, n) = coeffs_.row(p).transpose();
    return flat;
  }

  Real norm() const { return coeffs_.norm(); }

  TensorElementT& operator+=(const TensorElementT& o) {
    require_same_structure(structure_, o.structure_);
    coeffs_ += o.coeffs_;
    return *this;
  }
  TensorElementT& operator-=(const TensorElementT& o) {
    require_same_structure(structure_, o.structure_);
    coeffs_ -= o.coeffs_;
    return *this;
  }
  friend TensorElementT operator+(TensorElementT l, const TensorElementT& r) { return l += r; }
  friend TensorElementT operator-(TensorElementT l, const TensorElementT& r) { return l -= r; }
  friend TensorElementT operator*(Scalar c, TensorElementT t) {
    t.coeffs_ *= c;
    return t;
  }

 private:
  BlockStructure structure_;
  Matrix coeffs_;
};

// ---------------------------------------------------------------------------
// free functions

template <typename Real>
void require_conforms(const AlgebraElementT<Real>& x, const BlockStructure& s) {
  if (!x.conforms_to(s)) throw Error(ErrorCode::ShapeMismatch, "element does not match the block structure");
}

/// Matrix of y -> x y on coordinates.
template <typename Real>
CMatrix<Real> left_multiplication_matrix(const BlockStructure& s, const CVector<Real>& x) {
  CMatrix<Real> m = CMatrix<Real>::Zero(s.dim(), s.dim());
  for (Eigen::Index p = 0; p < s.dim(); ++p) {
    if (x(p) == std::complex<Real>(0)) continue;
    for (Eigen::Index r = 0; r < s.dim(); ++r)
      if (auto pr = s.product(p, r)) m(*pr, r) += x(p);
  }
  return m;
}

/// Matrix of y -> y x on coordinates.
template <typename Real>
CMatrix<Real> right_multiplication_matrix(const BlockStructure& s, const CVector<Real>& x) {
  CMatrix<Real> m = CMatrix<Real>::Zero(s.dim(), s.dim());
  for (Eigen::Index p = 0; p < s.dim(); ++p) {
    if (x(p) == std::complex<Real>(0)) continue;
    for (Eigen::Index r = 0; r < s.dim(); ++r)
      if (auto rp = s.product(r, p)) m(*rp, r) += x(p);
  }
  return m;
}

/// psi(x).
template <typename Real>
std::complex<Real> apply_state(const AlgebraElementT<Real>& x, const DeltaStateT<Real>& psi) {
  require_conforms(x, psi.structure());
  std::complex<Real> v = 0;
  for (int a = 0; a < x.num_blocks(); ++a)
    for (int i = 0; i < psi.structure().size(a); ++i) v += psi.weight(a, i) * x.block(a)(i, i);
  return v;
}

/// <x, y>_psi = psi(x^* y).
template <typename Real>
std::complex<Real> gns_inner(const AlgebraElementT<Real>& x, const AlgebraElementT<Real>& y,
                             const DeltaStateT<Real>& psi) {
  require_conforms(x, psi.structure());
  require_conforms(y, psi.structure());
  return apply_state(AlgebraElementT<Real>(x.adjoint() * y), psi);
}

/// m^*: the adjoint of multiplication for the psi inner products, from the
/// closed formula m^*(e_ij) = sum_k psi(e_kk)^{-1} e_ik (x) e_kj.
template <typename Real>
TensorElementT<Real> comultiply(const AlgebraElementT<Real>& x, const DeltaStateT<Real>& psi) {
  const auto& s = psi.structure();
  require_conforms(x, s);
  CMatrix<Real> c = CMatrix<Real>::Zero(s.dim(), s.dim());
  for (int a = 0; a < s.num_blocks(); ++a) {
    const int n = s.size(a);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const auto xij = x.block(a)(i, j);
        if (xij == std::complex<Real>(0)) continue;
        for (int k = 0; k < n; ++k) c(s.index(a, i, k), s.index(a, k, j)) += xij / psi.weight(a, k);
      }
  }
  return TensorElementT<Real>(s, std::move(c));
}

/// m: B (x) B -> B.
template <typename Real>
AlgebraElementT<Real> multiply(const TensorElementT<Real>& t) {
  const auto& s = t.structure();
  CVector<Real> out = CVector<Real>::Zero(s.dim());
  for (Eigen::Index p = 0; p < s.dim(); ++p)
    for (Eigen::Index r = 0; r < s.dim(); ++r)
      if (auto pr = s.product(p, r)) out(*pr) += t.coeffs()(p, r);
  return AlgebraElementT<Real>::from_coords(s, out);
}

/// (a (x) b) # (c (x) d) = (ac) (x) (db), extended bilinearly.
template <typename Real>
TensorElementT<Real> sharp(const TensorElementT<Real>& u, const TensorElementT<Real>& v) {
  require_same_structure(u.structure(), v.structure());
  const auto& s = u.structure();
  const auto& C = u.coeffs();
  const auto& D = v.coeffs();
  CMatrix<Real> out = CMatrix<Real>::Zero(s.dim(), s.dim());
  // first factor: e_{ij} e_{jl} = e_{il}; second factor: e_{uv} e_{vw} = e_{uw}
  for (int a = 0; a < s.num_blocks(); ++a) {
    const int na = s.size(a);
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < na; ++j)
        for (int l = 0; l < na; ++l) {
          const auto p = s.index(a, i, j), r = s.index(a, j, l), first = s.index(a, i, l);
          for (int b = 0; b < s.num_blocks(); ++b) {
            const int nb = s.size(b);
            for (int x = 0; x < nb; ++x)
              for (int y = 0; y < nb; ++y)
                for (int w = 0; w < nb; ++w) {
                  const auto q = s.index(b, y, w), t = s.index(b, x, y);
                  out(first, s.index(b, x, w)) += C(p, q) * D(r, t);
                }
          }
        }
  }
  return TensorElementT<Real>(s, std::move(out));
}

/// x . t, multiplying the first leg on the left.
template <typename Real>
TensorElementT<Real> left_act(const AlgebraElementT<Real>& x, const TensorElementT<Real>& t) {
  require_conforms(x, t.structure());
  return TensorElementT<Real>(t.structure(), left_multiplication_matrix(t.structure(), x.coords()) * t.coeffs());
}

/// t . y, multiplying the second leg on the right.
template <typename Real>
TensorElementT<Real> right_act(const TensorElementT<Real>& t, const AlgebraElementT<Real>& y) {
  require_conforms(y, t.structure());
  return TensorElementT<Real>(t.structure(),
                              t.coeffs() * right_multiplication_matrix(t.structure(), y.coords()).transpose());
}

/// a (x) b -> a^* (x) b^*, conjugate-linear.
template <typename Real>
TensorElementT<Real> tensor_adjoint(const TensorElementT<Real>& t) {
  const auto& s = t.structure();
  CMatrix<Real> out(s.dim(), s.dim());
  for (Eigen::Index p = 0; p < s.dim(); ++p)
    for (Eigen::Index q = 0; q < s.dim(); ++q)
      out(s.adjoint_index(p), s.adjoint_index(q)) = std::conj(t.coeffs()(p, q));
  return TensorElementT<Real>(s, std::move(out));
}

/// sigma_{i s}(x) = rho^{-s} x rho^{s}; s = 1/2 is sigma_{i/2}, s = -1 is sigma_{-i}.
template <typename Real>
AlgebraElementT<Real> modular_imaginary(const AlgebraElementT<Real>& x, const DeltaStateT<Real>& psi, Real s) {
  const auto& bs = psi.structure();
  require_conforms(x, bs);
  auto out = x;
  for (int a = 0; a < bs.num_blocks(); ++a)
    for (int i = 0; i < bs.size(a); ++i)
      for (int j = 0; j < bs.size(a); ++j)
        out.block(a)(i, j) *= std::pow(psi.weight(a, j), s) / std::pow(psi.weight(a, i), s);
  return out;
}

template <typename Real>
AlgebraElementT<Real> modular_half(const AlgebraElementT<Real>& x, const DeltaStateT<Real>& psi) {
  return modular_imaginary(x, psi, Real(0.5));
}

/// (sigma_{i s} (x) id)(t).
template <typename Real>
TensorElementT<Real> modular_first_leg(const TensorElementT<Real>& t, const DeltaStateT<Real>& psi, Real s) {
  require_same_structure(t.structure(), psi.structure());
  auto out = t;
  for (Eigen::Index p = 0; p < t.structure().dim(); ++p) {
    const auto& u = t.structure().unit(p);
    out.coeffs().row(p) *= std::pow(psi.weight(u.block, u.col), s) / std::pow(psi.weight(u.block, u.row), s);
  }
  return out;
}

/// (psi (x) id)(t).
template <typename Real>
AlgebraElementT<Real> slice_first(const TensorElementT<Real>& t, const DeltaStateT<Real>& psi) {
  require_same_structure(t.structure(), psi.structure());
  return AlgebraElementT<Real>::from_coords(t.structure(), t.coeffs().transpose() * psi.functional());
}

/// (id (x) M)(t) for a linear map given by its coordinate matrix.
template <typename Real>
TensorElementT<Real> apply_second(const CMatrix<Real>& map, const TensorElementT<Real>& t) {
  return TensorElementT<Real>(t.structure(), t.coeffs() * map.transpose());
}

/// (M (x) id)(t).
template <typename Real>
TensorElementT<Real> apply_first(const CMatrix<Real>& map, const TensorElementT<Real>& t) {
  return TensorElementT<Real>(t.structure(), map * t.coeffs());
}

/// <u, v> for psi (x) psi.
template <typename Real>
std::complex<Real> tensor_inner(const TensorElementT<Real>& u, const TensorElementT<Real>& v,
                                const DeltaStateT<Real>& psi) {
  require_same_structure(u.structure(), v.structure());
  const auto& s = u.structure();
  std::complex<Real> acc = 0;
  for (Eigen::Index p = 0; p < s.dim(); ++p)
    for (Eigen::Index q = 0; q < s.dim(); ++q)
      acc += psi.gram_weight(p) * psi.gram_weight(q) * std::conj(u.coeffs()(p, q)) * v.coeffs()(p, q);
  return acc;
}

/// f_ij^{(a)} = e_ij^{(a)} / sqrt(psi(e_ii) psi(e_jj)).
template <typename Real>
AlgebraElementT<Real> adapted_unit(int a, int i, int j, const DeltaStateT<Real>& psi) {
  auto f = AlgebraElementT<Real>::unit(psi.structure(), a, i, j);
  return (Real(1) / std::sqrt(psi.weight(a, i) * psi.weight(a, j))) * f;
}

using DeltaState = DeltaStateT<double>;
using AlgebraElement = AlgebraElementT<double>;
using TensorElement = TensorElementT<double>;

}  // namespace qgraph

#endif  // QGRAPH_CORE_ALGEBRA_HPP

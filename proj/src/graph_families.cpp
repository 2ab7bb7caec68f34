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

#include "qgraph/graph_families.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace qgraph {

namespace {

std::string subscript(int n) {
  static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  std::string out;
  for (char c : std::to_string(n)) out += digits[c - '0'];
  return out;
}

std::string matrix_algebra(int n) { return n == 1 ? "ℂ" : "M" + subscript(n) + "(ℂ)"; }

void require_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols() || (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm() > tol)
    throw Error(ErrorCode::NotUnitary, "matrix is not unitary");
}

}  // namespace

QuantumGraph complete_graph(const DeltaState& psi) {
  const auto& s = psi.structure();
  const Vector one = AlgebraElement::identity(s).coords();
  Matrix a = psi.delta_sq() * one * psi.functional().transpose();
  return QuantumGraph(psi, LinearMapOnB(s, std::move(a)));
}

QuantumGraph trivial_graph(const DeltaState& psi) {
  return QuantumGraph(psi, LinearMapOnB::identity(psi.structure()));
}

std::string trivial_structure_report(const BlockStructure& s) {
  std::string b;
  for (int a = 0; a < s.num_blocks(); ++a) b += (a ? " ⊕ " : "") + matrix_algebra(s.size(a));
  return "O(E_T) is isomorphic to B⊗C(𝕋) with B = " + b;
}

double rank_one_kernel_residual(const DeltaState& psi, int block, const Matrix& s) {
  const auto& bs = psi.structure();
  const int n = bs.size(block);
  if (s.rows() != n || s.cols() != n) throw Error(ErrorCode::ShapeMismatch, "S must match the block");
  std::vector<AlgebraElement> f;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) f.push_back(adapted_unit(block, i, j, psi));
  auto x = AlgebraElement::zero(bs);
  x.block(block) = s;
  std::complex<double> tr = 0;
  for (int i = 0; i < n; ++i) tr += s(i, i) / psi.weight(block, i);
  double worst = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto lhs = (-tr) * f[i * n + j];
      for (int k = 0; k < n; ++k) lhs += f[i * n + k] * x * f[k * n + j];
      worst = std::max(worst, lhs.norm());
    }
  return worst;
}

QuantumGraph rank_one_graph(const DeltaState& psi, const AlgebraElement& t, double tol) {
  const auto& s = psi.structure();
  require_conforms(t, s);
  for (int a = 0; a < s.num_blocks(); ++a) {
    std::complex<double> tr = 0;
    const Matrix tt = t.block(a).adjoint() * t.block(a);
    for (int i = 0; i < s.size(a); ++i) tr += tt(i, i) / psi.weight(a, i);
    if (std::abs(tr - psi.delta_sq()) > tol * psi.delta_sq())
      throw Error(ErrorCode::BadNormalization, "Tr(rho^-1 T^* T) on block " + std::to_string(a) + " is " +
                                                   std::to_string(tr.real()) + ", expected " +
                                                   std::to_string(psi.delta_sq()));
  }
  std::mt19937 rng(20260917u);
  std::normal_distribution<double> gauss;
  for (int a = 0; a < s.num_blocks(); ++a) {
    Matrix probe(s.size(a), s.size(a));
    for (Eigen::Index i = 0; i < probe.size(); ++i) probe(i) = {gauss(rng), gauss(rng)};
    if (rank_one_kernel_residual(psi, a, probe) > tol * (1.0 + probe.norm()) * psi.delta_sq())
      throw Error(ErrorCode::BadNormalization, "kernel identity self-check failed");
  }
  Matrix a(s.dim(), s.dim());
  for (Eigen::Index p = 0; p < s.dim(); ++p) {
    const auto x = AlgebraElement::unit(s, p);
    a.col(p) = (t * x * t.adjoint()).coords();
  }
  return QuantumGraph(psi, LinearMapOnB(s, std::move(a)), tol);
}

Matrix automorphism_matrix(const BlockStructure& s, const AutomorphismSpec& spec) {
  const int d = s.num_blocks();
  const auto& perm = spec.block_permutation;
  if (static_cast<int>(perm.size()) != d) throw Error(ErrorCode::InvalidPermutation, "permutation has wrong length");
  std::vector<int> seen(static_cast<std::size_t>(d), 0);
  for (int a = 0; a < d; ++a) {
    if (perm[a] < 0 || perm[a] >= d || seen[perm[a]]++)
      throw Error(ErrorCode::InvalidPermutation, "block map is not a permutation");
    if (s.size(perm[a]) != s.size(a))
      throw Error(ErrorCode::InvalidPermutation, "permutation must preserve block sizes");
  }
  std::vector<Matrix> u = spec.unitaries;
  if (u.empty())
    for (int a = 0; a < d; ++a) u.push_back(Matrix::Identity(s.size(a), s.size(a)));
  if (static_cast<int>(u.size()) != d) throw Error(ErrorCode::InvalidPermutation, "one unitary per block is required");
  for (int a = 0; a < d; ++a) {
    if (u[a].rows() != s.size(a)) throw Error(ErrorCode::NotUnitary, "unitary does not match its block");
    require_unitary(u[a], kAlgebraicTolerance * 100);
  }
  Matrix m = Matrix::Zero(s.dim(), s.dim());
  for (int a = 0; a < d; ++a) {
    const int b = perm[a];
    for (int i = 0; i < s.size(a); ++i)
      for (int j = 0; j < s.size(a); ++j) {
        const Matrix img = u[b].col(i) * u[b].col(j).adjoint();
        for (int r = 0; r < s.size(b); ++r)
          for (int c = 0; c < s.size(b); ++c) m(s.index(b, r, c), s.index(a, i, j)) = img(r, c);
      }
  }
  return m;
}

AutomorphismResult automorphism_graph(const DeltaState& psi, const AutomorphismSpec& spec, double tol) {
  const auto& s = psi.structure();
  Matrix m = automorphism_matrix(s, spec);
  const auto& perm = spec.block_permutation;
  for (int a = 0; a < s.num_blocks(); ++a) {
    const int b = perm[a];
    const Matrix u = spec.unitaries.empty() ? Matrix::Identity(s.size(b), s.size(b)) : spec.unitaries[b];
    Matrix rho_a = Matrix::Zero(s.size(a), s.size(a));
    Matrix rho_b = Matrix::Zero(s.size(b), s.size(b));
    for (int i = 0; i < s.size(a); ++i) {
      rho_a(i, i) = psi.weight(a, i);
      rho_b(i, i) = psi.weight(b, i);
    }
    if ((u.adjoint() * rho_b * u - rho_a).norm() > tol)
      throw Error(ErrorCode::StateNotInvariant, "psi is not invariant on block " + std::to_string(a));
  }

  AutomorphismResult r{QuantumGraph(psi, LinearMapOnB(s, std::move(m)), tol), {}, {}};
  std::vector<bool> done(static_cast<std::size_t>(s.num_blocks()), false);
  for (int a = 0; a < s.num_blocks(); ++a) {
    if (done[a]) continue;
    std::vector<int> cycle;
    for (int b = a; !done[b]; b = perm[b]) {
      done[b] = true;
      cycle.push_back(b);
    }
    const int n = s.size(a);
    const int k = static_cast<int>(cycle.size());
    std::string term;
    if (n > 1) term += matrix_algebra(n) + "⊗";
    if (k > 1) term += matrix_algebra(k) + "⊗";
    term += "C(𝕋)";
    r.report += (r.cycles.empty() ? "" : " ⊕ ") + term;
    r.cycles.push_back(std::move(cycle));
  }
  return r;
}

QuantumGraph classical_graph(const Eigen::MatrixXd& adj) {
  if (adj.rows() != adj.cols() || adj.rows() == 0) throw Error(ErrorCode::ShapeMismatch, "adjacency must be square");
  for (Eigen::Index i = 0; i < adj.size(); ++i)
    if (adj(i) != 0.0 && adj(i) != 1.0) throw Error(ErrorCode::NotZeroOne, "adjacency entries must be 0 or 1");
  const int n = static_cast<int>(adj.rows());
  const BlockStructure s(std::vector<int>(static_cast<std::size_t>(n), 1));
  return QuantumGraph(tracial_delta_form(s), LinearMapOnB(s, adj.cast<std::complex<double>>()));
}

CKFamily canonical_lqck_family(CanonicalKind kind, const DeltaState& psi, const AlgebraElement& t, const Matrix& u) {
  const auto& s = psi.structure();
  require_conforms(t, s);
  require_unitary(u, 1e-10);
  QuantumGraph g;
  if (kind == CanonicalKind::Trivial) {
    if ((t - AlgebraElement::identity(s)).norm() > kAlgebraicTolerance)
      throw Error(ErrorCode::BadNormalization, "the trivial family uses T = 1");
    g = trivial_graph(psi);
  } else {
    g = rank_one_graph(psi, t);
  }
  const AlgebraElement t_star = t.adjoint();
  std::vector<Matrix> images;
  for (Eigen::Index p = 0; p < s.dim(); ++p) {
    const Vector xt = (AlgebraElement::unit(s, p) * t_star).coords();
    const Matrix left = left_multiplication_matrix<double>(s, xt);
    Matrix img(left.rows() * u.rows(), left.cols() * u.cols());
    for (Eigen::Index i = 0; i < left.rows(); ++i)
      for (Eigen::Index j = 0; j < left.cols(); ++j) img.block(i * u.rows(), j * u.cols(), u.rows(), u.cols()) = left(i, j) * u;
    images.push_back(img / psi.delta_sq());
  }
  CKFamily fam(s, s.dim() * u.rows(), std::move(images));
  const auto rep = lqck_residuals(fam, g);
  if (rep.max() > kDefaultTolerance)
    throw Error(ErrorCode::BadNormalization, "canonical family misses the local relations by " + std::to_string(rep.max()));
  return fam;
}

}  // namespace qgraph

// Copyright 2026 The cartan-synth Authors
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

#include "cartan/involutions.hpp"

#include <cmath>
#include <random>

#include "cartan/kernels.hpp"

namespace cartan {

std::string_view to_string(CartanType t) {
  switch (t) {
    case CartanType::AI: return "AI";
    case CartanType::AII: return "AII";
    case CartanType::AIII: return "AIII";
  }
  return "?";
}

CartanType Involution::type(double tol) const {
  if (!conjugate_entries) return CartanType::AIII;
  const double scale = std::max(1.0, max_abs(w));
  if (max_abs(CMatrix(w - w.transpose())) <= tol * scale) return CartanType::AI;
  if (max_abs(CMatrix(w + w.transpose())) <= tol * scale) return CartanType::AII;
  throw Error(ErrorCode::InvalidInput, "antiunitary involution with W neither symmetric nor antisymmetric");
}

namespace {

Complex square_scalar(const CMatrix& w) {
  const CMatrix w2 = w * w;
  return w2.trace() / static_cast<double>(w.rows());
}

}  // namespace

std::pair<Eigen::Index, Eigen::Index> Involution::pq(double tol) const {
  if (conjugate_entries) throw Error(ErrorCode::TypeMismatch, "pq is defined for linear involutions");
  const CMatrix wn = w / std::sqrt(square_scalar(w));
  const double tr = wn.trace().real();
  if (std::abs(wn.trace().imag()) > std::sqrt(tol) * n)
    throw Error(ErrorCode::InvalidInput, "normalized W has non-real trace");
  const auto p = static_cast<Eigen::Index>(std::llround((tr + static_cast<double>(n)) / 2.0));
  return {p, n - p};
}

double Involution::involutivity_residual() const {
  if (conjugate_entries) {
    const CMatrix m = w * w.conjugate();
    const double sign = m(0, 0).real() >= 0 ? 1.0 : -1.0;
    return max_abs(CMatrix(m - sign * identity(n)));
  }
  const Complex c = square_scalar(w);
  return std::max(max_abs(CMatrix(w * w - c * identity(n))), std::abs(std::abs(c) - 1.0));
}

Involution standard(CartanType kind, Eigen::Index n, Eigen::Index p) {
  if (n < 1) throw Error(ErrorCode::BadParams, "dimension must be positive");
  Involution t;
  t.n = n;
  switch (kind) {
    case CartanType::AI:
      t.conjugate_entries = true;
      t.w = identity(n);
      t.tag = "AI";
      break;
    case CartanType::AII: {
      if (n % 2 != 0) throw Error(ErrorCode::BadParams, "AII needs even dimension");
      const Eigen::Index m = n / 2;
      t.conjugate_entries = true;
      t.w = CMatrix::Zero(n, n);
      t.w.topRightCorner(m, m) = identity(m);
      t.w.bottomLeftCorner(m, m) = -identity(m);
      t.tag = "AII";
      break;
    }
    case CartanType::AIII: {
      if (p < 1 || p >= n) throw Error(ErrorCode::BadParams, "AIII needs p, q >= 1");
      t.conjugate_entries = false;
      t.w = identity(n);
      for (Eigen::Index k = p; k < n; ++k) t.w(k, k) = -1.0;
      t.tag = "AIII";
      break;
    }
  }
  return t;
}

Involution conjugate(const Involution& theta, const CMatrix& s) {
  if (!is_unitary(s, 1e-8)) throw Error(ErrorCode::NotUnitary, "conjugate: S is not unitary");
  Involution out = theta;
  out.w = theta.conjugate_entries ? CMatrix(s * theta.w * s.transpose())
                                  : CMatrix(s * theta.w * s.adjoint());
  return out;
}

CMatrix apply(const Involution& theta, const CMatrix& x, Level level, double tol) {
  if (x.rows() != theta.n || x.cols() != theta.n)
    throw Error(ErrorCode::DimensionMismatch, "apply: dimension mismatch");
  const double scale = std::max(1.0, max_abs(x));
  if (level == Level::Algebra && skew_hermitian_residual(x) > tol * scale)
    throw Error(ErrorCode::TypeMismatch, "apply: algebra level needs a skew-Hermitian argument");
  if (level == Level::Group && unitarity_residual(x) > tol)
    throw Error(ErrorCode::TypeMismatch, "apply: group level needs a unitary argument");
  if (theta.conjugate_entries) return theta.w * x.conjugate() * theta.w.adjoint();
  return theta.w * x * theta.w.adjoint();
}

RMatrix involution_matrix(const Involution& theta, const AlgebraBasis& basis) {
  return kernels::involution_matrix(theta, basis, kernels::Exec::Parallel);
}

std::pair<RMatrix, RMatrix> split_invariant(const RMatrix& t, const RMatrix& q) {
  const RMatrix m = q.transpose() * t * q;
  const Eigen::Index k = m.rows();
  const RMatrix off = m - RMatrix(m.diagonal().asDiagonal());
  bool diagonal = k == 0 || max_abs(off) <= 1e-10;
  if (diagonal) {
    for (Eigen::Index i = 0; i < k; ++i)
      if (std::abs(std::abs(m(i, i)) - 1.0) > 1e-10) diagonal = false;
  }
  if (diagonal) {
    std::vector<Eigen::Index> plus, minus;
    for (Eigen::Index i = 0; i < k; ++i) (m(i, i) > 0 ? plus : minus).push_back(i);
    RMatrix qp(q.rows(), static_cast<Eigen::Index>(plus.size()));
    RMatrix qm(q.rows(), static_cast<Eigen::Index>(minus.size()));
    for (std::size_t i = 0; i < plus.size(); ++i) qp.col(i) = q.col(plus[i]);
    for (std::size_t i = 0; i < minus.size(); ++i) qm.col(i) = q.col(minus[i]);
    return {qp, qm};
  }
  Eigen::SelfAdjointEigenSolver<RMatrix> es((m + m.transpose()) / 2.0);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NoConvergence, "split: eigensolver failed");
  const RVector& ev = es.eigenvalues();
  std::vector<Eigen::Index> plus, minus;
  for (Eigen::Index i = 0; i < k; ++i) {
    if (std::abs(ev(i) - 1.0) <= 1e-8) {
      plus.push_back(i);
    } else if (std::abs(ev(i) + 1.0) <= 1e-8) {
      minus.push_back(i);
    } else {
      throw Error(ErrorCode::NonCommutingInvolutions,
                  "split: subspace is not invariant under the involution");
    }
  }
  RMatrix vp(k, static_cast<Eigen::Index>(plus.size()));
  RMatrix vm(k, static_cast<Eigen::Index>(minus.size()));
  for (std::size_t i = 0; i < plus.size(); ++i) vp.col(i) = es.eigenvectors().col(plus[i]);
  for (std::size_t i = 0; i < minus.size(); ++i) vm.col(i) = es.eigenvectors().col(minus[i]);
  return {canonical_basis(q * vp), canonical_basis(q * vm)};
}

std::pair<Subspace, Subspace> split(const Involution& theta) {
  auto basis = AlgebraBasis::for_dimension(theta.n);
  const RMatrix t = involution_matrix(theta, *basis);
  auto [qp, qm] = split_invariant(t, RMatrix::Identity(basis->size(), basis->size()));
  return {Subspace{"K", basis, qp}, Subspace{"P", basis, qm}};
}

CMatrix random_skew_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
  return (a - a.adjoint()) / 2.0;
}

double automorphism_residual(const Involution& theta, int samples, std::mt19937_64& rng) {
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const CMatrix x = random_skew_hermitian(theta.n, rng);
    const CMatrix y = random_skew_hermitian(theta.n, rng);
    const CMatrix lhs = cartan::apply(theta, commutator(x, y));
    const CMatrix rhs = commutator(cartan::apply(theta, x), cartan::apply(theta, y));
    worst = std::max(worst, max_abs(CMatrix(lhs - rhs)));
  }
  return worst;
}

}  // namespace cartan

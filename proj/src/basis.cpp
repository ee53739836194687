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

#include "cartan/basis.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace cartan {

std::shared_ptr<const AlgebraBasis> AlgebraBasis::for_dimension(Eigen::Index n) {
  if (n < 1) throw Error(ErrorCode::BadParams, "basis dimension must be positive");
  static std::mutex mu;
  static std::map<Eigen::Index, std::shared_ptr<const AlgebraBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  auto b = std::make_shared<AlgebraBasis>();
  b->n_ = n;
  const bool qubits = (n & (n - 1)) == 0;
  if (qubits) {
    int sites = 0;
    while ((Eigen::Index{1} << sites) < n) ++sites;
    b->strings_ = all_pauli_strings(sites);
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (const PauliString& s : b->strings_)
      b->elements_.push_back(Complex(0.0, norm) * pauli_matrix(s));
  } else {
    const double r = 1.0 / std::sqrt(2.0);
    for (Eigen::Index k = 0; k < n; ++k) {
      CMatrix e = CMatrix::Zero(n, n);
      e(k, k) = Complex(0.0, 1.0);
      b->elements_.push_back(e);
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index k = j + 1; k < n; ++k) {
        CMatrix a = CMatrix::Zero(n, n);
        a(j, k) = r;
        a(k, j) = -r;
        b->elements_.push_back(a);
        CMatrix s = CMatrix::Zero(n, n);
        s(j, k) = Complex(0.0, r);
        s(k, j) = Complex(0.0, r);
        b->elements_.push_back(s);
      }
    }
  }
  cache.emplace(n, b);
  return b;
}

RVector AlgebraBasis::coords(const CMatrix& x) const {
  RVector c(size());
  if (is_pauli()) {
    const double root = std::sqrt(static_cast<double>(n_));
    for (Eigen::Index k = 0; k < size(); ++k)
      c(k) = root * pauli_coefficient(x, strings_[k]);
    return c;
  }
  for (Eigen::Index k = 0; k < size(); ++k)
    c(k) = (x.array() * elements_[k].conjugate().array()).sum().real();
  return c;
}

CMatrix AlgebraBasis::matrix(const RVector& coords) const {
  CMatrix m = CMatrix::Zero(n_, n_);
  for (Eigen::Index k = 0; k < size(); ++k)
    if (coords(k) != 0.0) m += coords(k) * elements_[k];
  return m;
}

std::vector<CMatrix> Subspace::elements() const {
  std::vector<CMatrix> out;
  out.reserve(dim());
  for (Eigen::Index k = 0; k < dim(); ++k) out.push_back(element(k));
  return out;
}

CMatrix Subspace::project(const CMatrix& x) const {
  const RVector c = ambient->coords(x);
  return ambient->matrix(basis * (basis.transpose() * c));
}

double Subspace::residual(const CMatrix& x) const {
  const RVector c = ambient->coords(x);
  // Anti-Hermitian part only: the Hermitian part is outside u(n) entirely.
  const CMatrix herm = (x + x.adjoint()) / 2.0;
  const double outside = herm.norm();
  const RVector rest = c - basis * (basis.transpose() * c);
  return std::sqrt(rest.squaredNorm() + outside * outside);
}

std::optional<std::vector<PauliString>> Subspace::pauli_support(double tol) const {
  if (!ambient->is_pauli()) return std::nullopt;
  const RVector diag = (basis * basis.transpose()).diagonal();
  std::vector<PauliString> out;
  for (Eigen::Index k = 0; k < diag.size(); ++k) {
    if (std::abs(diag(k) - 1.0) <= tol) {
      out.push_back(ambient->strings()[k]);
    } else if (std::abs(diag(k)) > tol) {
      return std::nullopt;
    }
  }
  return out;
}

RMatrix orthonormalize(const RMatrix& cols, double rel) {
  if (cols.cols() == 0) return RMatrix(cols.rows(), 0);
  Eigen::BDCSVD<RMatrix> svd(cols, Eigen::ComputeThinU);
  const RVector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return RMatrix(cols.rows(), 0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > rel * s(0)) ++rank;
  return canonical_basis(svd.matrixU().leftCols(rank));
}

RMatrix null_space(const RMatrix& m, double rel) {
  const Eigen::Index d = m.cols();
  if (d == 0) return RMatrix(0, 0);
  if (m.rows() == 0) return RMatrix::Identity(d, d);
  Eigen::BDCSVD<RMatrix> svd(m, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  const double cut = rel * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  return svd.matrixV().rightCols(d - rank);
}

RMatrix canonical_basis(const RMatrix& v) {
  const Eigen::Index dim = v.rows();
  const Eigen::Index k = v.cols();
  RMatrix out(dim, k);
  if (k == 0) return out;
  // Residual columns of the projector V V^T after removing chosen directions.
  RMatrix coeff = v.transpose();  // k x dim: column c = V^T e_c
  RVector norms = coeff.colwise().squaredNorm().transpose();
  RMatrix chosen_coeff(k, k);
  for (Eigen::Index j = 0; j < k; ++j) {
    Eigen::Index best = 0;
    double best_norm = -1.0;
    for (Eigen::Index c = 0; c < dim; ++c) {
      if (norms(c) > best_norm + 1e-12) {
        best_norm = norms(c);
        best = c;
      }
    }
    RVector dir = coeff.col(best) / std::sqrt(best_norm);
    chosen_coeff.col(j) = dir;
    const RVector proj = dir.transpose() * coeff;
    coeff -= dir * proj.transpose();
    norms = coeff.colwise().squaredNorm().transpose();
  }
  out = v * chosen_coeff;
  return out;
}

Subspace span_of(std::string label, std::shared_ptr<const AlgebraBasis> ambient,
                 const std::vector<CMatrix>& elements) {
  RMatrix cols(ambient->size(), static_cast<Eigen::Index>(elements.size()));
  for (std::size_t k = 0; k < elements.size(); ++k)
    cols.col(static_cast<Eigen::Index>(k)) = ambient->coords(elements[k]);
  return Subspace{std::move(label), ambient, orthonormalize(cols)};
}

Subspace span_of_strings(std::string label, std::shared_ptr<const AlgebraBasis> ambient,
                         const std::vector<PauliString>& strings) {
  std::vector<CMatrix> elements;
  elements.reserve(strings.size());
  for (const PauliString& s : strings) elements.push_back(Complex(0.0, 1.0) * pauli_matrix(s));
  return span_of(std::move(label), std::move(ambient), elements);
}

Subspace direct_sum(std::string label, const std::vector<const Subspace*>& parts) {
  if (parts.empty()) throw Error(ErrorCode::BadParams, "direct_sum of nothing");
  auto ambient = parts.front()->ambient;
  Eigen::Index total = 0;
  for (const Subspace* s : parts) total += s->dim();
  RMatrix cols(ambient->size(), total);
  Eigen::Index at = 0;
  for (const Subspace* s : parts) {
    cols.middleCols(at, s->dim()) = s->basis;
    at += s->dim();
  }
  return Subspace{std::move(label), ambient, cols};
}

double projector_distance(const Subspace& a, const Subspace& b) {
  return max_abs(RMatrix(a.projector() - b.projector()));
}

}  // namespace cartan

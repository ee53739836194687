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

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cartan/matcore.hpp"
#include "cartan/pauli.hpp"

namespace cartan {

// Orthonormal basis of u(n) under <A, B> = Re tr(A B^dag). For n = 2^N the
// basis is {i P_s / sqrt(n)} in lexicographic string order; otherwise the
// matrix-unit basis {i E_kk, (E_jk - E_kj)/sqrt2, i(E_jk + E_kj)/sqrt2}.
class AlgebraBasis {
 public:
  static std::shared_ptr<const AlgebraBasis> for_dimension(Eigen::Index n);

  Eigen::Index n() const { return n_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(elements_.size()); }
  const CMatrix& element(Eigen::Index k) const { return elements_[k]; }

  bool is_pauli() const { return !strings_.empty(); }
  const std::vector<PauliString>& strings() const { return strings_; }

  RVector coords(const CMatrix& x) const;
  CMatrix matrix(const RVector& coords) const;

 private:
  Eigen::Index n_ = 0;
  std::vector<CMatrix> elements_;
  std::vector<PauliString> strings_;
};

// Real subspace of u(n) held as orthonormal coordinate columns.
struct Subspace {
  std::string label;
  std::shared_ptr<const AlgebraBasis> ambient;
  RMatrix basis;  // ambient->size() x dim

  Eigen::Index dim() const { return basis.cols(); }
  CMatrix element(Eigen::Index k) const { return ambient->matrix(basis.col(k)); }
  std::vector<CMatrix> elements() const;

  CMatrix project(const CMatrix& x) const;
  // Frobenius norm of the component of x orthogonal to the subspace.
  double residual(const CMatrix& x) const;
  RMatrix projector() const { return basis * basis.transpose(); }

  // Pauli strings spanning the subspace when it is coordinate-aligned with
  // the Pauli basis; empty optional otherwise.
  std::optional<std::vector<PauliString>> pauli_support(double tol = 1e-10) const;
};

// Orthonormal basis of span(cols); singular values below rel * largest are
// dropped.
RMatrix orthonormalize(const RMatrix& cols, double rel = 1e-8);

// Orthonormal basis of the null space of m; singular values at or below
// rel * max(1, largest) count as zero.
RMatrix null_space(const RMatrix& m, double rel = 1e-8);

// Deterministic orthonormal basis of range(V) for V with orthonormal
// columns: pivoted Gram-Schmidt over the projected standard basis, ties
// broken by lowest index. Coordinate-aligned subspaces come back as unit
// vectors in index order.
RMatrix canonical_basis(const RMatrix& v);

Subspace span_of(std::string label, std::shared_ptr<const AlgebraBasis> ambient,
                 const std::vector<CMatrix>& elements);
Subspace span_of_strings(std::string label, std::shared_ptr<const AlgebraBasis> ambient,
                         const std::vector<PauliString>& strings);
// Parts must be mutually orthogonal; their bases are concatenated.
Subspace direct_sum(std::string label, const std::vector<const Subspace*>& parts);

// max |<P_a - P_b>| between the orthogonal projectors of two subspaces.
double projector_distance(const Subspace& a, const Subspace& b);

}  // namespace cartan

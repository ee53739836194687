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

#include <string>
#include <utility>

#include "cartan/basis.hpp"
#include "cartan/matcore.hpp"

namespace cartan {

enum class CartanType { AI, AII, AIII };

std::string_view to_string(CartanType t);

// theta(X) = W g(X) W^dag, g = entrywise conjugation if conjugate_entries.
struct Involution {
  Eigen::Index n = 0;
  bool conjugate_entries = false;
  CMatrix w;
  // Descriptive tag used in catalogs and reports ("AI", "CCD", "KG", ...).
  std::string tag;

  // AI / AII for antiunitary types by symmetry of W; AIII for linear types.
  CartanType type(double tol = kDefaultTol) const;
  // Eigen counts (p, q) of the normalized W; linear types only.
  std::pair<Eigen::Index, Eigen::Index> pq(double tol = kDefaultTol) const;

  double involutivity_residual() const;
};

Involution standard(CartanType kind, Eigen::Index n, Eigen::Index p = 0);

Involution conjugate(const Involution& theta, const CMatrix& s);

enum class Level { Algebra, Group };

CMatrix apply(const Involution& theta, const CMatrix& x, Level level = Level::Algebra,
              double tol = kDefaultTol);

// Matrix of theta acting on the real coordinates of `basis`.
RMatrix involution_matrix(const Involution& theta, const AlgebraBasis& basis);

// +1 and -1 eigenspaces of theta.
std::pair<Subspace, Subspace> split(const Involution& theta);

// Eigenspaces of a real symmetric involution matrix T restricted to the
// columns of Q (orthonormal, T-invariant). Returns (Q_plus, Q_minus).
std::pair<RMatrix, RMatrix> split_invariant(const RMatrix& t, const RMatrix& q);

// max-entry residual of theta([X,Y]) - [theta X, theta Y] on random pairs.
double automorphism_residual(const Involution& theta, int samples, std::mt19937_64& rng);

// Random element of u(n) with Gaussian coordinates.
CMatrix random_skew_hermitian(Eigen::Index n, std::mt19937_64& rng);

}  // namespace cartan

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

#include <cstdint>
#include <vector>

#include "cartan/basis.hpp"
#include "cartan/involutions.hpp"
#include "cartan/schemes.hpp"

namespace cartan {

// X = K1 * A * K2 with K_i fixed by Theta and A = exp(log_a), log_a in P.
struct KakResult {
  CMatrix k1, a, k2;
  CMatrix log_a;
  // Commuting rank-one pieces summing to log_a (the torus coordinates).
  std::vector<CMatrix> torus;
};

struct KakCheck {
  double reconstruction = 0.0;
  double k_fixed = 0.0;       // max over K1, K2 of |Theta(K) - K|
  double log_a_in_p = 0.0;    // |theta(log A) + log A|
  double torus_commute = 0.0; // max pairwise commutator of torus pieces
  double exp_log_a = 0.0;     // |exp(log A) - A|
  double worst() const;
};

KakCheck check_kak(const Involution& theta, const CMatrix& x, const KakResult& r);

// Standard-coordinate solvers. Theta is conj(X), J conj(X) J^dag and
// Z X Z with Z = diag(1_p, -1_q) respectively.
KakResult kak_AI(const CMatrix& x, double tol = kDefaultTol);
KakResult kak_AII(const CMatrix& x, double tol = kDefaultTol);
KakResult kak_AIII(const CMatrix& x, Eigen::Index p, double tol = kDefaultTol);

// Any involution: standardize, solve, conjugate back.
KakResult kak_general(const Involution& theta, const CMatrix& x, double tol = kDefaultTol);

// Block solve for X real orthogonal 4x4 in the image of U(2) -> SO(4),
// U + iV -> [[U, V], [-V, U]], with K2' = 1:
// X = [[A, B], [-B, A]] * diag(E, E^-1).
struct EmbeddedU2 {
  CMatrix e_squared;
  CMatrix e;
  CMatrix k1;  // [[A, B], [-B, A]]
  CMatrix a;   // diag(E, E^-1)
};
EmbeddedU2 solve_embedded_u2(const CMatrix& x, double tol = kDefaultTol);

// Tabulated maximal abelian subspace of a level (new scheme only).
Subspace cartan_subalgebra(const Scheme& scheme, int level);

struct SignedInvolution {
  Involution theta;
  int sign = 1;
};

// Skew-Hermitian x with exp(x) = g and theta_i(x) = s_i x for every
// constraint. Off the -1 eigenspace of g this is the principal log; on it
// the branch i*pi*sign(h) is taken with h a generic admissible Hermitian
// matrix (drawn from `seed`). Throws LogOutsideSubspace if none exists.
CMatrix log_constrained(const CMatrix& g, const std::vector<SignedInvolution>& constraints,
                        double tol = kDefaultTol, std::uint64_t seed = 17);

double constraint_residual(const CMatrix& x, const std::vector<SignedInvolution>& constraints);

}  // namespace cartan

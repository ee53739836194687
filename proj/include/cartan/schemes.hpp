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

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "cartan/involutions.hpp"
#include "cartan/pauli.hpp"

namespace cartan {

enum class LocalType { AI, AII };

struct LocalChoice {
  LocalType type;
  CMatrix w;
};

struct LevelHint {
  // AI, AII, AIII, DIII or CI.
  std::string expected_type;
  // Known maximal abelian subspace of the level's -1 part, when tabulated.
  std::vector<PauliString> cartan;
};

struct Scheme {
  std::string name;
  std::vector<Eigen::Index> dims;
  std::vector<Involution> involutions;
  std::vector<LevelHint> hints;  // hints[j] describes the split of L_{0^j}

  Eigen::Index n() const;
  int p() const { return static_cast<int>(involutions.size()); }
};

Involution build_ccd(int n_sites);

// Tensor product of local antiunitary involutions; W = W_1 x ... x W_N.
Involution build_oed(const std::vector<LocalChoice>& local);

struct AiiiOed {
  Involution theta;
  // Permutation sorting the +1 eigenvectors of W first (order preserved).
  CMatrix r;
  Eigen::Index p = 0;
  Eigen::Index q = 0;
};
AiiiOed build_aiii_oed(const std::vector<std::pair<Eigen::Index, Eigen::Index>>& local_pq);

Scheme build_kg_sequence(int n_sites);
Scheme build_new_scheme(int n_sites);

// One (p1, p2) pair per round.
using PqSchedule = std::vector<std::array<Eigen::Index, 2>>;
PqSchedule default_bipartite_schedule(Eigen::Index n1, Eigen::Index n2);
Scheme build_bipartite_recursion(Eigen::Index n1, Eigen::Index n2, const PqSchedule& schedule);

// Maximal abelian subspace tabulated for level j of the new scheme.
std::vector<PauliString> new_scheme_cartan(int n_sites, int level);

struct Standardizer {
  CartanType kind;
  Eigen::Index p = 0;  // AIII only
  CMatrix f;
};

// F with conjugate(theta, F^dag) equal (as a map) to standard(kind).
Standardizer build_standardizer(const Involution& theta, double tol = kDefaultTol);

// Residual of conjugate(theta, F^dag) against standard(kind, n, p), up to a
// global phase of W (which does not change the map).
double standardizer_residual(const Involution& theta, const CMatrix& f, CartanType kind,
                             Eigen::Index p = 0);

Scheme build_scheme(const std::string& name, const std::vector<Eigen::Index>& dims,
                    const PqSchedule& schedule = {});

}  // namespace cartan

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
#include <string>
#include <vector>

#include "cartan/basis.hpp"
#include "cartan/involutions.hpp"
#include "cartan/kernels.hpp"
#include "cartan/schemes.hpp"

namespace cartan {

// Label bits: bit j (LSB first) is the sign index k_{j+1} of involution j+1.
std::string block_label(unsigned mask, int p);
// "L_" followed by the given prefix bits, e.g. prefix_label(0, 2) = "L_00".
std::string prefix_label(unsigned mask, int length);

struct Grading {
  int p = 0;
  Eigen::Index n = 0;
  std::shared_ptr<const AlgebraBasis> basis;
  std::vector<Involution> involutions;
  std::vector<RMatrix> t;        // involution matrices on basis coordinates
  std::vector<Subspace> blocks;  // 2^p entries, indexed by label mask

  const Subspace& block(unsigned mask) const { return blocks[mask]; }
};

// Sum of the blocks whose first `length` label bits equal those of `mask`.
Subspace prefix_subspace(const Grading& g, unsigned mask, int length);

Grading build_grading(const std::vector<Involution>& involutions,
                      kernels::Exec exec = kernels::Exec::Parallel);

// Maximal graded-commutation violation over all basis pairs.
kernels::CommutationReport validate_grading(const Grading& g,
                                            kernels::Exec exec = kernels::Exec::Parallel);

struct LevelInfo {
  int level = 0;          // splits L_{0^level}
  Subspace whole;         // L_{0^level}
  Subspace k;             // L_{0^{level+1}}
  Subspace p;             // L_{0^level 1}
  Subspace center;        // center of L_{0^level}
  std::string expected_type;
  Subspace cartan;        // maximal abelian subspace of p
  Eigen::Index rank() const { return cartan.dim(); }
  double cartan_residual = 0.0;  // worst Cartan-pair relation residual
};

struct RecursiveSequence {
  std::vector<LevelInfo> levels;  // p entries
  Subspace bottom;                // L_{0^p}

  const Subspace& s0(int k) const { return k < static_cast<int>(levels.size()) ? levels[k].whole : bottom; }
  const Subspace& s1(int k) const { return levels[k - 1].p; }
};

// Recursive sequence of the grading; hints (may be empty) supply expected
// types. Throws CartanRelationViolated when a level fails the relations.
RecursiveSequence recursive_sequences(const Grading& g, const std::vector<LevelHint>& hints = {},
                                      double tol = 1e-9);

struct CenterSplit {
  Subspace semisimple;
  Subspace center;
};
CenterSplit center_split(const Subspace& s, double tol = 1e-9);

// Centralizer of a generic element of p inside p.
Subspace maximal_abelian(const Subspace& p, std::uint64_t seed = 7);

// Worst projection residual of [a, b] onto `target` over basis pairs.
double bracket_residual(const Subspace& a, const Subspace& b, const Subspace& target);

}  // namespace cartan

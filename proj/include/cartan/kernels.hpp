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

#include <vector>

#include "cartan/basis.hpp"
#include "cartan/involutions.hpp"

// Hot loops of the grading engine. Each kernel has a serial reference and an
// OpenMP version producing identical results.
namespace cartan::kernels {

enum class Exec { Serial, Parallel };

RMatrix involution_matrix(const Involution& theta, const AlgebraBasis& basis, Exec exec);

struct CommutationReport {
  double max_residual = 0.0;
  long long pairs = 0;
};

// Exhaustive check of [S_a, S_b] in S_{a xor b} over all basis pairs of the
// blocks (blocks[label] holds orthonormal coordinate columns). The blocks may
// span a subalgebra only; a bracket leaving their sum counts as a violation.
// Pauli-aligned blocks use structure constants; anything else goes through
// matrices.
CommutationReport graded_commutation(const AlgebraBasis& basis,
                                     const std::vector<RMatrix>& blocks, Exec exec);

// Structure constant of the Pauli basis: [B_k, B_l] = coeff * B_m.
struct PauliBracket {
  Eigen::Index m = 0;
  double coeff = 0.0;
};
PauliBracket pauli_bracket(Eigen::Index k, Eigen::Index l, int sites);

}  // namespace cartan::kernels

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
#include <map>
#include <string>
#include <vector>

#include "cartan/grading.hpp"
#include "cartan/kak.hpp"
#include "cartan/schemes.hpp"

namespace cartan {

struct Leaf {
  std::string label;    // graded subspace, e.g. "L_001"
  CMatrix generator;    // skew-Hermitian, inside the labeled subspace
  CMatrix matrix;       // exp(generator)
  std::string path;     // position in the recursion tree
  double residual = 0.0; // distance to the labeled subspace before projection
};

struct Factorization {
  std::string scheme;
  std::vector<Eigen::Index> dims;
  std::string input_hash;
  std::vector<Leaf> leaves;  // matrix-product order, left to right
  int pruned = 0;
  // KP splits that needed the continuation fallback.
  int continuations = 0;
  double max_leaf_residual = 0.0;
  double reconstruction_error = 0.0;
};

struct SynthOptions {
  double tol = kDefaultTol;
  double prune_tol = 1e-10;
  // Seeds the generic branch choice on -1 eigenspaces.
  std::uint64_t seed = 17;
};

// The graded subspaces leaves may be labeled with: L_{0^j 1} for every
// level and the bottom L_{0^p}.
struct SchemeContext {
  Scheme scheme;
  Grading grading;
  std::map<std::string, Subspace> subspaces;
};

SchemeContext prepare(const Scheme& scheme);

Factorization decompose(const CMatrix& x, const SchemeContext& ctx, const SynthOptions& opts = {});
Factorization decompose(const CMatrix& x, const Scheme& scheme, const SynthOptions& opts = {});

// Generator of U inside `s`: principal log projected onto s. The projection
// must be lossless within tol.
CMatrix factor_generator(const CMatrix& u, const Subspace& s, double tol = kDefaultTol);
AlgebraElement factor_to_exponential(const CMatrix& u, const Subspace& s, double tol = kDefaultTol);

struct VerifyReport {
  double reconstruction_error = 0.0;
  std::vector<double> leaf_residuals;
  std::vector<double> leaf_norms;
  std::size_t leaf_count = 0;
  double reconstruction_tol = 1e-8;
  double leaf_tol = 1e-9;
  bool pass = false;
};

// Re-exponentiates every leaf generator, multiplies in order and compares
// with x; leaf residuals are measured against the labeled subspaces.
VerifyReport reconstruct_and_verify(const Factorization& f, const CMatrix& x,
                                    const std::map<std::string, Subspace>& subspaces,
                                    double reconstruction_tol = 1e-8, double leaf_tol = 1e-9);

std::string hash_matrix(const CMatrix& x);

}  // namespace cartan

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

#include <filesystem>
#include <string>
#include <vector>

#include "cartan/grading.hpp"
#include "cartan/synth.hpp"

namespace cartan {

// Matrix files: {"n": N, "entries": [[re, im], ...]} in row-major order.
CMatrix parse_matrix(const std::string& text);
std::string format_matrix(const CMatrix& m);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);
CMatrix read_matrix(const std::filesystem::path& path);

struct SerializeOptions {
  bool emit_matrices = false;
  double tol = kDefaultTol;
  double prune_tol = 1e-10;
  PqSchedule pq_schedule;
  const VerifyReport* report = nullptr;
};

// Qubit leaves carry Pauli terms; other dimensions carry the generator matrix.
std::string serialize_factorization(const Factorization& f, const SerializeOptions& opts = {});
Factorization parse_factorization(const std::string& text);

std::string scheme_catalog(const std::vector<Scheme>& schemes);

std::string grading_report(const Scheme& scheme, const Grading& g, const RecursiveSequence& seq);

}  // namespace cartan

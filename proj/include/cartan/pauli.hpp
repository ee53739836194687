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

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cartan/matcore.hpp"

namespace cartan {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

// One Pauli letter per qubit; site 0 is the leftmost tensor factor (most
// significant bit of the computational basis index).
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<Pauli> letters) : letters_(std::move(letters)) {}
  // Accepts "IXYZ"-style text; throws InvalidInput on any other letter.
  static PauliString parse(std::string_view text);
  static PauliString identity(int n_sites);

  int size() const { return static_cast<int>(letters_.size()); }
  Pauli operator[](int site) const { return letters_[site]; }
  const std::vector<Pauli>& letters() const { return letters_; }

  int weight() const;
  bool commutes_with(const PauliString& other) const;
  std::string str() const;

  // Lexicographic with I < X < Y < Z.
  auto operator<=>(const PauliString&) const = default;

  PauliString tensor(const PauliString& right) const;

 private:
  std::vector<Pauli> letters_;
};

// Real coefficients over the basis {i * P_s}: element = sum_s c_s * i * P_s.
struct AlgebraElement {
  int n_sites = 0;
  std::map<PauliString, double> terms;

  bool empty() const { return terms.empty(); }
  double norm() const;
};

CMatrix pauli_matrix(const PauliString& s);

// sum_s c_s * i * P_s; always skew-Hermitian.
CMatrix assemble(const AlgebraElement& e);

// Coefficients c_s = Re tr(M (i P_s)^dag) / 2^N. Coefficients with modulus
// below `drop_below` are omitted.
AlgebraElement expand(const CMatrix& m, double tol = kDefaultTol,
                      double drop_below = 1e-13);

// Real coefficient c_s for one string, without validation.
double pauli_coefficient(const CMatrix& m, const PauliString& s);

std::vector<PauliString> all_pauli_strings(int n_sites);

// Odd-weight and even-weight strings (identity included in the even list).
std::pair<std::vector<PauliString>, std::vector<PauliString>> parity_split(int n_sites);

// The l-fold tensor power of {XX, YY, ZZ, II}: 4^l pairwise commuting
// strings on 2l sites.
std::vector<PauliString> commuting_family(int l);

}  // namespace cartan

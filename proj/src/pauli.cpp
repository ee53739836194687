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

#include "cartan/pauli.hpp"

#include <cmath>

namespace cartan {

namespace {

constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};

// Column c of P has a single nonzero entry at row c ^ flip_mask.
struct SparsePauli {
  std::size_t flip_mask = 0;
  std::vector<Complex> phase;  // indexed by column
};

SparsePauli sparse(const PauliString& s) {
  const int n = s.size();
  const std::size_t dim = std::size_t{1} << n;
  SparsePauli out;
  out.phase.assign(dim, Complex(1.0, 0.0));
  for (int site = 0; site < n; ++site) {
    const std::size_t bit = std::size_t{1} << (n - 1 - site);
    const Pauli p = s[site];
    if (p == Pauli::X || p == Pauli::Y) out.flip_mask |= bit;
    if (p == Pauli::I || p == Pauli::X) continue;
    for (std::size_t c = 0; c < dim; ++c) {
      const bool one = (c & bit) != 0;
      if (p == Pauli::Z) {
        if (one) out.phase[c] = -out.phase[c];
      } else {  // Y|0> = i|1>, Y|1> = -i|0>
        out.phase[c] *= one ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
      }
    }
  }
  return out;
}

}  // namespace

PauliString PauliString::parse(std::string_view text) {
  std::vector<Pauli> letters;
  letters.reserve(text.size());
  for (char ch : text) {
    switch (ch) {
      case 'I': letters.push_back(Pauli::I); break;
      case 'X': letters.push_back(Pauli::X); break;
      case 'Y': letters.push_back(Pauli::Y); break;
      case 'Z': letters.push_back(Pauli::Z); break;
      default:
        throw Error(ErrorCode::InvalidInput,
                    "bad Pauli letter '" + std::string(1, ch) + "' in " + std::string(text));
    }
  }
  return PauliString(std::move(letters));
}

PauliString PauliString::identity(int n_sites) {
  return PauliString(std::vector<Pauli>(n_sites, Pauli::I));
}

int PauliString::weight() const {
  int w = 0;
  for (Pauli p : letters_) w += p != Pauli::I;
  return w;
}

bool PauliString::commutes_with(const PauliString& other) const {
  int anti = 0;
  for (int i = 0; i < size(); ++i) {
    const Pauli a = letters_[i];
    const Pauli b = other.letters_[i];
    anti += a != Pauli::I && b != Pauli::I && a != b;
  }
  return anti % 2 == 0;
}

std::string PauliString::str() const {
  std::string out;
  for (Pauli p : letters_) out.push_back(kLetters[static_cast<int>(p)]);
  return out;
}

PauliString PauliString::tensor(const PauliString& right) const {
  std::vector<Pauli> letters = letters_;
  letters.insert(letters.end(), right.letters_.begin(), right.letters_.end());
  return PauliString(std::move(letters));
}

double AlgebraElement::norm() const {
  double sum = 0.0;
  for (const auto& [s, c] : terms) sum += c * c;
  return std::sqrt(sum);
}

CMatrix pauli_matrix(const PauliString& s) {
  const SparsePauli sp = sparse(s);
  const auto dim = static_cast<Eigen::Index>(sp.phase.size());
  CMatrix m = CMatrix::Zero(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c)
    m(static_cast<Eigen::Index>(static_cast<std::size_t>(c) ^ sp.flip_mask), c) = sp.phase[c];
  return m;
}

CMatrix assemble(const AlgebraElement& e) {
  const Eigen::Index dim = Eigen::Index{1} << e.n_sites;
  CMatrix m = CMatrix::Zero(dim, dim);
  for (const auto& [s, c] : e.terms) {
    const SparsePauli sp = sparse(s);
    for (Eigen::Index col = 0; col < dim; ++col) {
      const auto row = static_cast<Eigen::Index>(static_cast<std::size_t>(col) ^ sp.flip_mask);
      m(row, col) += Complex(0.0, c) * sp.phase[col];
    }
  }
  return m;
}

double pauli_coefficient(const CMatrix& m, const PauliString& s) {
  const SparsePauli sp = sparse(s);
  Complex tr = 0.0;
  for (std::size_t c = 0; c < sp.phase.size(); ++c)
    tr += m(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c ^ sp.flip_mask)) * sp.phase[c];
  // tr(M (iP)^dag) = -i tr(M P)
  return (Complex(0.0, -1.0) * tr).real() / static_cast<double>(sp.phase.size());
}

AlgebraElement expand(const CMatrix& m, double tol, double drop_below) {
  if (m.rows() != m.cols() || m.rows() == 0 || (m.rows() & (m.rows() - 1)) != 0)
    throw Error(ErrorCode::InvalidInput, "expand requires a 2^N x 2^N matrix");
  if (skew_hermitian_residual(m) > tol * std::max(1.0, max_abs(m)))
    throw Error(ErrorCode::NotSkewHermitian, "expand requires a skew-Hermitian input");
  int n = 0;
  while ((Eigen::Index{1} << n) < m.rows()) ++n;
  AlgebraElement out;
  out.n_sites = n;
  for (const PauliString& s : all_pauli_strings(n)) {
    const double c = pauli_coefficient(m, s);
    if (std::abs(c) > drop_below) out.terms.emplace(s, c);
  }
  return out;
}

std::vector<PauliString> all_pauli_strings(int n_sites) {
  std::vector<PauliString> out;
  const std::size_t count = std::size_t{1} << (2 * n_sites);
  out.reserve(count);
  for (std::size_t code = 0; code < count; ++code) {
    std::vector<Pauli> letters(n_sites);
    for (int site = 0; site < n_sites; ++site)
      letters[site] = static_cast<Pauli>((code >> (2 * (n_sites - 1 - site))) & 3u);
    out.emplace_back(std::move(letters));
  }
  return out;
}

std::pair<std::vector<PauliString>, std::vector<PauliString>> parity_split(int n_sites) {
  if (n_sites < 1) throw Error(ErrorCode::BadParams, "parity_split needs N >= 1");
  std::pair<std::vector<PauliString>, std::vector<PauliString>> out;
  for (PauliString& s : all_pauli_strings(n_sites))
    (s.weight() % 2 ? out.first : out.second).push_back(std::move(s));
  return out;
}

std::vector<PauliString> commuting_family(int l) {
  if (l < 0) throw Error(ErrorCode::BadParams, "commuting_family needs l >= 0");
  static const std::vector<PauliString> pairs = {
      PauliString::parse("XX"), PauliString::parse("YY"), PauliString::parse("ZZ"),
      PauliString::parse("II")};
  std::vector<PauliString> out = {PauliString()};
  for (int k = 0; k < l; ++k) {
    std::vector<PauliString> next;
    next.reserve(out.size() * 4);
    for (const PauliString& s : out)
      for (const PauliString& p : pairs) next.push_back(s.tensor(p));
    out = std::move(next);
  }
  return out;
}

}  // namespace cartan

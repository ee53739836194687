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


#include <random>

#include "cartan/basis.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace cartan;

namespace {

// Trace inner product on skew-Hermitian matrices.
double inner(const CMatrix& a, const CMatrix& b) { return (a.adjoint() * b).trace().real(); }

}  // namespace

TEST_SUITE("basis") {

TEST_CASE("ambient bases are orthonormal and complete") {
  for (Eigen::Index n : {2, 3, 4, 6}) {
    const auto b = AlgebraBasis::for_dimension(n);
    CHECK(b->size() == n * n);
    CHECK(b->is_pauli() == ((n & (n - 1)) == 0));
    for (Eigen::Index j = 0; j < b->size(); ++j) {
      CHECK(skew_hermitian_residual(b->element(j)) == 0.0);
      for (Eigen::Index k = 0; k < b->size(); ++k)
        CHECK(inner(b->element(j), b->element(k)) == doctest::Approx(j == k ? 1.0 : 0.0));
    }
  }
  CHECK(AlgebraBasis::for_dimension(4) == AlgebraBasis::for_dimension(4));
}

TEST_CASE("coordinates round trip and match the Pauli oracle") {
  std::mt19937_64 rng(12);
  const auto b = AlgebraBasis::for_dimension(8);
  const CMatrix x = oracle::random_skew(8, rng);
  const RVector c = b->coords(x);
  CHECK((c - oracle::pauli_coords(x, 3)).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(oracle::maxabs(b->matrix(c) - x) < 1e-13);
  const auto b3 = AlgebraBasis::for_dimension(3);
  const CMatrix y = oracle::random_skew(3, rng);
  CHECK(oracle::maxabs(b3->matrix(b3->coords(y)) - y) < 1e-14);
}

TEST_CASE("subspace projection, residual and Pauli support") {
  const auto b = AlgebraBasis::for_dimension(4);
  const Subspace s = span_of_strings("zz", b, {PauliString::parse("ZZ"), PauliString::parse("XI")});
  CHECK(s.dim() == 2);
  const CMatrix zz = oracle::C(0, 1) * oracle::pauli("ZZ");
  const CMatrix yy = oracle::C(0, 1) * oracle::pauli("YY");
  CHECK(s.residual(zz) < 1e-14);
  CHECK(s.residual(yy) == doctest::Approx(2.0));
  CHECK(oracle::maxabs(s.project(CMatrix(zz + yy)) - zz) < 1e-14);
  // Hermitian parts are counted as outside the subspace.
  CHECK(s.residual(oracle::pauli("ZZ")) > 1.0);
  const auto support = s.pauli_support();
  REQUIRE(support.has_value());
  CHECK(support->size() == 2);
  const Subspace mixed = span_of("mix", b, {CMatrix(zz + yy)});
  CHECK_FALSE(mixed.pauli_support().has_value());
  CHECK((s.projector() * s.projector() - s.projector()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("span, direct sum and projector distance") {
  const auto b = AlgebraBasis::for_dimension(4);
  const Subspace a = span_of_strings("a", b, {PauliString::parse("XX")});
  const Subspace y = span_of_strings("y", b, {PauliString::parse("YY")});
  const Subspace c = span_of_strings("c", b, {PauliString::parse("YY"), PauliString::parse("XX")});
  const Subspace sum = direct_sum("s", {&a, &y});
  CHECK(sum.dim() == 2);
  CHECK(projector_distance(sum, c) < 1e-12);
  CHECK(projector_distance(a, c) > 0.5);
  // Repeated elements collapse.
  const CMatrix xx = oracle::C(0, 1) * oracle::pauli("XX");
  CHECK(span_of("r", b, {xx, CMatrix(2.0 * xx)}).dim() == 1);
}

TEST_CASE("null space, orthonormalize and canonical basis") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g;
  RMatrix m(3, 6);
  for (auto& v : m.reshaped()) v = g(rng);
  const RMatrix ns = null_space(m);
  CHECK(ns.cols() == 3);
  CHECK((m * ns).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((ns.transpose() * ns - RMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
  RMatrix cols(6, 4);
  cols.leftCols(3) = ns;
  cols.col(3) = ns.col(0) + ns.col(1);
  const RMatrix q = orthonormalize(cols);
  CHECK(q.cols() == 3);
  CHECK((oracle::real_projector(q) - oracle::real_projector(ns)).cwiseAbs().maxCoeff() < 1e-12);
  // Canonical basis depends only on the span.
  Eigen::MatrixXd rot(3, 3);
  for (auto& v : rot.reshaped()) v = g(rng);
  const RMatrix q2 = Eigen::HouseholderQR<RMatrix>(rot).householderQ();
  const RMatrix c1 = canonical_basis(ns);
  const RMatrix c2 = canonical_basis(RMatrix(ns * q2));
  CHECK((c1 - c2).cwiseAbs().maxCoeff() < 1e-12);
}

}  // TEST_SUITE

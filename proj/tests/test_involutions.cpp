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

#include "cartan/errors.hpp"
#include "cartan/involutions.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace cartan;

namespace {

oracle::M apply_oracle(const Involution& t, const oracle::M& x) {
  return t.w * (t.conjugate_entries ? oracle::M(x.conjugate()) : x) * t.w.adjoint();
}

// K dimension inside u(n) for each standard type.
Eigen::Index fixed_dim(CartanType kind, Eigen::Index n, Eigen::Index p) {
  switch (kind) {
    case CartanType::AI: return n * (n - 1) / 2;
    case CartanType::AII: return (n / 2) * (n + 1);
    case CartanType::AIII: return p * p + (n - p) * (n - p);
  }
  return -1;
}

}  // namespace

TEST_SUITE("involutions") {

TEST_CASE("standard involutions: type, involutivity and split dimensions") {
  struct Case {
    CartanType kind;
    Eigen::Index n, p;
  };
  for (const Case c : {Case{CartanType::AI, 3, 0}, Case{CartanType::AI, 4, 0},
                       Case{CartanType::AII, 4, 0}, Case{CartanType::AII, 6, 0},
                       Case{CartanType::AIII, 5, 2}, Case{CartanType::AIII, 4, 1}}) {
    const Involution t = standard(c.kind, c.n, c.p);
    CHECK(t.type() == c.kind);
    CHECK(t.involutivity_residual() < 1e-15);
    const auto [k, p] = split(t);
    CHECK(k.dim() == fixed_dim(c.kind, c.n, c.p));
    CHECK(k.dim() + p.dim() == c.n * c.n);
    if (c.kind == CartanType::AIII) CHECK(t.pq() == std::pair<Eigen::Index, Eigen::Index>{c.p, c.n - c.p});
  }
  CHECK_THROWS_AS(standard(CartanType::AII, 3), Error);
  CHECK_THROWS_AS(standard(CartanType::AIII, 3, 3), Error);
  CHECK_THROWS_AS(standard(CartanType::AI, 4).pq(), Error);
}

TEST_CASE("apply matches the defining formula at both levels") {
  std::mt19937_64 rng(21);
  for (CartanType kind : {CartanType::AI, CartanType::AII, CartanType::AIII}) {
    const Involution t = conjugate(standard(kind, 4, 2), oracle::haar(4, rng));
    const CMatrix x = oracle::random_skew(4, rng);
    CHECK(oracle::maxabs(cartan::apply(t, x) - apply_oracle(t, x)) < 1e-13);
    const CMatrix u = oracle::expm(x);
    CHECK(oracle::maxabs(cartan::apply(t, u, Level::Group) - apply_oracle(t, u)) < 1e-12);
    CHECK(oracle::maxabs(cartan::apply(t, cartan::apply(t, x)) - x) < 1e-12);
  }
  const Involution t = standard(CartanType::AI, 4);
  CHECK_THROWS_AS(cartan::apply(t, CMatrix::Identity(3, 3)), Error);
  CHECK_THROWS_AS(cartan::apply(t, CMatrix(CMatrix::Identity(4, 4))), Error);
  CHECK_THROWS_AS(cartan::apply(t, CMatrix(2.0 * CMatrix::Identity(4, 4)), Level::Group), Error);
}

TEST_CASE("conjugation intertwines and preserves type") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    for (CartanType kind : {CartanType::AI, CartanType::AII, CartanType::AIII}) {
      const Involution t = standard(kind, 6, 2);
      const CMatrix s = oracle::haar(6, rng);
      const Involution ts = conjugate(t, s);
      CHECK(ts.type() == kind);
      const CMatrix x = oracle::random_skew(6, rng);
      const CMatrix lhs = cartan::apply(ts, CMatrix(s * x * s.adjoint()));
      const CMatrix rhs = s * cartan::apply(t, x) * s.adjoint();
      CHECK(oracle::maxabs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("automorphism property on random brackets") {
  std::mt19937_64 rng(23);
  for (CartanType kind : {CartanType::AI, CartanType::AII, CartanType::AIII}) {
    const Involution t = conjugate(standard(kind, 4, 1), oracle::haar(4, rng));
    CHECK(automorphism_residual(t, 20, rng) < 1e-12);
  }
}

TEST_CASE("involution matrix is orthogonal and squares to one") {
  std::mt19937_64 rng(24);
  for (Eigen::Index n : {3, 4}) {
    const Involution t = conjugate(standard(CartanType::AI, n), oracle::haar(n, rng));
    const auto basis = AlgebraBasis::for_dimension(n);
    const RMatrix m = involution_matrix(t, *basis);
    const RMatrix id = RMatrix::Identity(m.rows(), m.cols());
    CHECK((m * m - id).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((m.transpose() * m - id).cwiseAbs().maxCoeff() < 1e-12);
    const CMatrix x = oracle::random_skew(n, rng);
    const RVector lhs = m * basis->coords(x);
    const RVector rhs = basis->coords(apply_oracle(t, x));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("split_invariant refines commuting involutions") {
  const auto basis = AlgebraBasis::for_dimension(4);
  const RMatrix t1 = involution_matrix(standard(CartanType::AI, 4), *basis);
  const RMatrix t2 = involution_matrix(standard(CartanType::AIII, 4, 2), *basis);
  const RMatrix all = RMatrix::Identity(16, 16);
  const auto [k1, p1] = split_invariant(t1, all);
  CHECK(k1.cols() == 6);
  CHECK(p1.cols() == 10);
  const auto [kk, kp] = split_invariant(t2, k1);
  // so(4) cut by the p = q = 2 block split: so(2) + so(2) and the rest.
  CHECK(kk.cols() == 2);
  CHECK(kp.cols() == 4);
  CHECK(((t2 * kk) - kk).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(((t2 * kp) + kp).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("random_skew_hermitian is skew-Hermitian") {
  std::mt19937_64 rng(25);
  CHECK(skew_hermitian_residual(random_skew_hermitian(5, rng)) < 1e-15);
}

}  // TEST_SUITE

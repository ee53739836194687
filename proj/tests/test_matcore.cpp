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


#include <numbers>
#include <random>

#include "cartan/errors.hpp"
#include "cartan/matcore.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace cartan;

namespace {

bool throws_code(ErrorCode code, auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST_SUITE("matcore") {

TEST_CASE("kron agrees with the loop oracle") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix a = oracle::random_skew(2 + trial % 2, rng);
    const CMatrix b = oracle::random_skew(3, rng);
    CHECK(max_abs(CMatrix(kron(a, b) - oracle::kron(a, b))) < 1e-15);
  }
}

TEST_CASE("commutator and residual helpers") {
  std::mt19937_64 rng(2);
  const CMatrix a = oracle::random_skew(4, rng);
  const CMatrix b = oracle::random_skew(4, rng);
  CHECK(max_abs(CMatrix(commutator(a, b) - (a * b - b * a))) < 1e-14);
  CHECK(skew_hermitian_residual(a) < 1e-15);
  CHECK(hermitian_residual(CMatrix(Complex(0, 1) * a)) < 1e-15);
  CHECK(hermitian_residual(a) > 0.1);
  CHECK(identity(3).isIdentity());
}

TEST_CASE("haar_unitary is unitary and seed-deterministic") {
  std::mt19937_64 r1(9), r2(9);
  const CMatrix u = haar_unitary(6, r1);
  CHECK(unitarity_residual(u) < 1e-13);
  CHECK(is_unitary(u));
  CHECK(max_abs(CMatrix(u - haar_unitary(6, r2))) == 0.0);
}

TEST_CASE("eig_normal diagonalizes normal matrices") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix u = oracle::haar(5, rng);
    const EigenSystem es = eig_normal(u);
    CHECK(unitarity_residual(es.vectors) < 1e-12);
    const CMatrix back = es.vectors * es.values.asDiagonal() * es.vectors.adjoint();
    CHECK(max_abs(CMatrix(back - u)) < 1e-12);
    for (Eigen::Index j = 0; j < 5; ++j) {
      // First sizable entry of each eigenvector is real and positive.
      Eigen::Index k = 0;
      while (std::abs(es.vectors(k, j)) <= 1e-8) ++k;
      CHECK(std::abs(es.vectors(k, j).imag()) < 1e-12);
      CHECK(es.vectors(k, j).real() > 0.0);
    }
  }
}

TEST_CASE("eig_normal handles degenerate spectra") {
  std::mt19937_64 rng(4);
  const CMatrix q = oracle::haar(6, rng);
  CVector d(6);
  d << 1.0, 1.0, 1.0, -1.0, -1.0, Complex(0, 1);
  const CMatrix u = q * d.asDiagonal() * q.adjoint();
  const EigenSystem es = eig_normal(u);
  CHECK(unitarity_residual(es.vectors) < 1e-12);
  CHECK(max_abs(CMatrix(es.vectors * es.values.asDiagonal() * es.vectors.adjoint() - u)) < 1e-12);
}

TEST_CASE("eig_normal rejects non-normal input") {
  CMatrix m(2, 2);
  m << 1, 1, 0, 1;
  CHECK(throws_code(ErrorCode::NotNormal, [&] { eig_normal(m); }));
}

TEST_CASE("simdiag on commuting real symmetric pairs") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 10; ++trial) {
    // Random orthogonal Q with repeated eigenvalues in each factor.
    RMatrix r(6, 6);
    for (auto& v : r.reshaped()) v = g(rng);
    const RMatrix q = Eigen::HouseholderQR<RMatrix>(r).householderQ();
    RVector da(6), db(6);
    da << 1, 1, 2, 2, 3, 3;
    db << 5, 6, 5, 6, 7, 7;
    const RMatrix a = q * da.asDiagonal() * q.transpose();
    const RMatrix b = q * db.asDiagonal() * q.transpose();
    const RMatrix p = simdiag_commuting_symmetric(a, b);
    CHECK((p.transpose() * p - RMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-12);
    RMatrix da2 = p.transpose() * a * p, db2 = p.transpose() * b * p;
    da2.diagonal().setZero();
    db2.diagonal().setZero();
    CHECK(da2.cwiseAbs().maxCoeff() < 1e-10);
    CHECK(db2.cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("simdiag input validation") {
  RMatrix a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b.setIdentity();
  CHECK(throws_code(ErrorCode::NotSymmetric, [&] { simdiag_commuting_symmetric(a, b); }));
  a << 1, 0, 0, 2;
  b << 0, 1, 1, 0;
  CHECK(throws_code(ErrorCode::NotCommuting, [&] { simdiag_commuting_symmetric(a, b); }));
}

TEST_CASE("principal log inverts the oracle exponential") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix u = oracle::haar(4 + trial % 3, rng);
    const CMatrix h = principal_log_unitary(u);
    CHECK(skew_hermitian_residual(h) < 1e-14);
    CHECK(max_abs(CMatrix(oracle::expm(h) - u)) < 1e-11);
    // Spectrum of -i h lies in (-pi, pi].
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<CMatrix>(CMatrix(Complex(0, -1) * h)).eigenvalues();
    CHECK(ev.maxCoeff() <= std::numbers::pi + 1e-12);
    CHECK(ev.minCoeff() > -std::numbers::pi);
  }
}

TEST_CASE("principal log of a small generator returns it") {
  std::mt19937_64 rng(7);
  const CMatrix h = oracle::random_skew(5, rng, 0.2);
  CHECK(max_abs(CMatrix(principal_log_unitary(oracle::expm(h)) - h)) < 1e-12);
}

TEST_CASE("branch cut handling at -1") {
  CMatrix u = identity(2);
  u(1, 1) = -1.0;
  CHECK(throws_code(ErrorCode::BranchAmbiguity, [&] { principal_log_unitary(u); }));
  LogOptions opts;
  opts.cut = BranchCut::TakePlusPi;
  const CMatrix h = principal_log_unitary(u, kDefaultTol, opts);
  CHECK(std::abs(h(1, 1) - Complex(0, std::numbers::pi)) < 1e-14);
  opts.cut = BranchCut::Reject;
  opts.phase_offset = 0.5;
  const CMatrix h2 = principal_log_unitary(u, kDefaultTol, opts);
  CHECK(max_abs(CMatrix(oracle::expm(h2) - u)) < 1e-12);
  CHECK(throws_code(ErrorCode::NotUnitary, [&] { principal_log_unitary(CMatrix(2.0 * u)); }));
}

TEST_CASE("square root") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix u = oracle::haar(4, rng);
    const CMatrix s = sqrt_unitary_principal(u);
    CHECK(unitarity_residual(s) < 1e-12);
    CHECK(max_abs(CMatrix(s * s - u)) < 1e-11);
    const CMatrix s1 = sqrt_unitary_principal(CMatrix(u / std::pow(u.determinant(), 0.25)), kDefaultTol, true);
    CHECK(std::abs(s1.determinant() - 1.0) < 1e-10);
  }
}

TEST_CASE("expm_skew matches the Taylor oracle") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrix h = oracle::random_skew(3 + trial % 4, rng, 1.5);
    CHECK(max_abs(CMatrix(expm_skew(h) - oracle::expm(h))) < 1e-11);
  }
  CHECK(throws_code(ErrorCode::NotSkewHermitian, [&] { expm_skew(identity(2)); }));
}

}  // TEST_SUITE

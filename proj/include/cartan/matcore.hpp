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

#include <Eigen/Dense>
#include <complex>
#include <random>

#include "cartan/errors.hpp"

namespace cartan {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Single source for tolerance defaults; every operation also takes `tol`.
inline constexpr double kDefaultTol = 1e-9;
// Eigenvalues closer than this are treated as one degenerate cluster.
inline constexpr double kClusterGap = 1e-8;

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Max-entry residuals of U^dag U - 1, M - M^dag and M + M^dag.
double unitarity_residual(const CMatrix& u);
double hermitian_residual(const CMatrix& m);
double skew_hermitian_residual(const CMatrix& m);

bool is_unitary(const CMatrix& u, double tol = kDefaultTol);

CMatrix commutator(const CMatrix& a, const CMatrix& b);
CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix identity(Eigen::Index n);

// Haar-distributed unitary via QR of a complex Gaussian matrix.
CMatrix haar_unitary(Eigen::Index n, std::mt19937_64& rng);

// Eigenvector phase convention applied by eig_normal.
enum class PhasePolicy {
  // First entry with modulus above 1e-8 made real and positive.
  FirstNonzeroReal,
  // Leave whatever phases the solver produced.
  AsComputed,
};

struct EigenSystem {
  CVector values;
  CMatrix vectors;  // unitary, columns ordered like `values`
};

// Spectral decomposition of a normal matrix, M = V diag(values) V^dag.
// Eigenvalues are sorted by descending phase in (-pi, pi]; vectors inside a
// degenerate cluster are re-orthonormalized from the standard basis so the
// result is deterministic.
EigenSystem eig_normal(const CMatrix& m, double tol = kDefaultTol,
                       PhasePolicy policy = PhasePolicy::FirstNonzeroReal);

// Real orthogonal Q with det Q = +1 such that Q^T A Q and Q^T B Q are both
// diagonal. A and B must be symmetric and commute.
RMatrix simdiag_commuting_symmetric(const RMatrix& a, const RMatrix& b,
                                    double tol = kDefaultTol);

enum class BranchCut {
  Reject,      // eigenphase within tol of pi raises BranchAmbiguity
  TakePlusPi,  // eigenvalue -1 maps to +i*pi
};

struct LogOptions {
  BranchCut cut = BranchCut::Reject;
  // The cut is placed at phase_offset + pi instead of pi.
  double phase_offset = 0.0;
};

// Principal logarithm of a unitary: skew-Hermitian H with exp(H) = U and
// every eigenvalue of H in i(-pi, pi] (shifted by phase_offset if given).
CMatrix principal_log_unitary(const CMatrix& u, double tol = kDefaultTol,
                              LogOptions opts = {});

// Principal square root: eigenphases halved. With det_one the branch of the
// leading eigenvalue is flipped when that brings det S closer to 1.
CMatrix sqrt_unitary_principal(const CMatrix& u, double tol = kDefaultTol,
                               bool det_one = false);

// exp(H) for skew-Hermitian H through the Hermitian eigensolver of iH.
CMatrix expm_skew(const CMatrix& h, double tol = kDefaultTol);

}  // namespace cartan

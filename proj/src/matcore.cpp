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

#include "cartan/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <vector>

namespace cartan {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotCommuting: return "NotCommuting";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorCode::NotSkewHermitian: return "NotSkewHermitian";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::BadLocalChoice: return "BadLocalChoice";
    case ErrorCode::ScheduleExhausted: return "ScheduleExhausted";
    case ErrorCode::FactorizationFailed: return "FactorizationFailed";
    case ErrorCode::NonCommutingInvolutions: return "NonCommutingInvolutions";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::CartanRelationViolated: return "CartanRelationViolated";
    case ErrorCode::NotASubalgebra: return "NotASubalgebra";
    case ErrorCode::RealityViolated: return "RealityViolated";
    case ErrorCode::PairingFailed: return "PairingFailed";
    case ErrorCode::GluingFailed: return "GluingFailed";
    case ErrorCode::BlockSingular: return "BlockSingular";
    case ErrorCode::UnsupportedScheme: return "UnsupportedScheme";
    case ErrorCode::LogOutsideSubspace: return "LogOutsideSubspace";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}


double unitarity_residual(const CMatrix& u) {
  if (u.rows() != u.cols()) return INFINITY;
  return max_abs(CMatrix(u.adjoint() * u) - identity(u.rows()));
}
double hermitian_residual(const CMatrix& m) {
  return max_abs(CMatrix(m - m.adjoint()));
}
double skew_hermitian_residual(const CMatrix& m) {
  return max_abs(CMatrix(m + m.adjoint()));
}
bool is_unitary(const CMatrix& u, double tol) {
  return unitarity_residual(u) <= tol;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  return a * b - b * a;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

CMatrix haar_unitary(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix z(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) z(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * identity(n);
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

namespace {

// Consecutive runs of sorted eigenvalues closer than `gap`.
std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters(const RVector& sorted,
                                                            double gap) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
  Eigen::Index start = 0;
  for (Eigen::Index i = 1; i <= sorted.size(); ++i) {
    if (i == sorted.size() || sorted(i) - sorted(i - 1) > gap) {
      out.emplace_back(start, i - start);
      start = i;
    }
  }
  return out;
}

// Deterministic orthonormal basis of span(cols(v)): greedy Gram-Schmidt over
// the projections of the standard basis vectors, largest residual first.
template <typename Mat>
Mat standard_basis_reorthonormalize(const Mat& v) {
  using Scalar = typename Mat::Scalar;
  const Eigen::Index n = v.rows();
  const Eigen::Index m = v.cols();
  if (m <= 1) return v;
  // Candidate i is P e_i = V V^dag e_i.
  Mat cand = v * v.adjoint();
  Mat out(n, m);
  std::vector<bool> used(n, false);
  for (Eigen::Index k = 0; k < m; ++k) {
    Eigen::Index best = -1;
    double best_norm = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (used[i]) continue;
      Eigen::Matrix<Scalar, Eigen::Dynamic, 1> r = cand.col(i);
      for (Eigen::Index j = 0; j < k; ++j) r -= out.col(j) * (out.col(j).adjoint() * r)(0, 0);
      const double nr = r.norm();
      if (nr > best_norm + 1e-10) {
        best_norm = nr;
        best = i;
      }
    }
    used[best] = true;
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> r = cand.col(best);
    for (Eigen::Index j = 0; j < k; ++j) r -= out.col(j) * (out.col(j).adjoint() * r)(0, 0);
    for (Eigen::Index j = 0; j < k; ++j) r -= out.col(j) * (out.col(j).adjoint() * r)(0, 0);
    out.col(k) = r / r.norm();
  }
  return out;
}

void fix_phase(CMatrix& v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      const double mag = std::abs(v(i, j));
      if (mag > 1e-8) {
        v.col(j) *= std::conj(v(i, j)) / mag;
        break;
      }
    }
  }
}

double scale_of(const CMatrix& m) { return std::max(1.0, max_abs(m)); }

}  // namespace

EigenSystem eig_normal(const CMatrix& m, double tol, PhasePolicy policy) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::NotNormal, "eig_normal requires a square matrix");
  const Eigen::Index n = m.rows();
  const double scale = scale_of(m);
  const double normal_res = max_abs(CMatrix(m * m.adjoint() - m.adjoint() * m));
  if (normal_res > tol * scale * scale) {
    std::ostringstream os;
    os << "commutator residual " << normal_res << " exceeds " << tol;
    throw Error(ErrorCode::NotNormal, os.str());
  }
  if (n == 0) return {};

  const CMatrix re_part = (m + m.adjoint()) / 2.0;
  const CMatrix im_part = (m - m.adjoint()) / Complex(0.0, 2.0);
  const double gap = kClusterGap * scale;

  Eigen::SelfAdjointEigenSolver<CMatrix> es1(re_part);
  if (es1.info() != Eigen::Success)
    throw Error(ErrorCode::NoConvergence, "Hermitian eigensolver failed");
  CMatrix vecs(n, n);
  Eigen::Index col = 0;
  for (auto [start, len] : clusters(es1.eigenvalues(), gap)) {
    const CMatrix vc = es1.eigenvectors().middleCols(start, len);
    const CMatrix sub = vc.adjoint() * im_part * vc;
    Eigen::SelfAdjointEigenSolver<CMatrix> es2(sub);
    if (es2.info() != Eigen::Success)
      throw Error(ErrorCode::NoConvergence, "Hermitian eigensolver failed");
    for (auto [s2, l2] : clusters(es2.eigenvalues(), gap)) {
      CMatrix block = vc * es2.eigenvectors().middleCols(s2, l2);
      vecs.middleCols(col, l2) = standard_basis_reorthonormalize(block);
      col += l2;
    }
  }

  CVector vals(n);
  for (Eigen::Index j = 0; j < n; ++j)
    vals(j) = (vecs.col(j).adjoint() * m * vecs.col(j))(0, 0);

  // Descending phase; equal eigenvalues keep their cluster order.
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (std::abs(vals(a) - vals(b)) <= gap) return false;
    const double pa = std::arg(vals(a));
    const double pb = std::arg(vals(b));
    if (std::abs(pa - pb) > 1e-12) return pa > pb;
    return std::abs(vals(a)) > std::abs(vals(b));
  });
  EigenSystem out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values(j) = vals(order[j]);
    out.vectors.col(j) = vecs.col(order[j]);
  }
  if (policy == PhasePolicy::FirstNonzeroReal) fix_phase(out.vectors);

  const double res = max_abs(CMatrix(
      m - out.vectors * out.values.asDiagonal() * out.vectors.adjoint()));
  if (res > std::max(tol, 1e-10) * scale) {
    std::ostringstream os;
    os << "reconstruction residual " << res;
    throw Error(ErrorCode::NoConvergence, os.str());
  }
  return out;
}

RMatrix simdiag_commuting_symmetric(const RMatrix& a, const RMatrix& b, double tol) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw Error(ErrorCode::NotSymmetric, "shape mismatch");
  if (max_abs(RMatrix(a - a.transpose())) > tol ||
      max_abs(RMatrix(b - b.transpose())) > tol)
    throw Error(ErrorCode::NotSymmetric, "input is not symmetric");
  const double scale = std::max({1.0, max_abs(a), max_abs(b)});
  if (max_abs(RMatrix(a * b - b * a)) > tol * scale * scale)
    throw Error(ErrorCode::NotCommuting, "A and B do not commute");
  const Eigen::Index n = a.rows();
  const double gap = kClusterGap * scale;
  const RMatrix as = (a + a.transpose()) / 2.0;
  const RMatrix bs = (b + b.transpose()) / 2.0;

  Eigen::SelfAdjointEigenSolver<RMatrix> es1(as);
  RMatrix q(n, n);
  Eigen::Index col = 0;
  for (auto [start, len] : clusters(es1.eigenvalues(), gap)) {
    const RMatrix vc = es1.eigenvectors().middleCols(start, len);
    Eigen::SelfAdjointEigenSolver<RMatrix> es2(RMatrix(vc.transpose() * bs * vc));
    for (auto [s2, l2] : clusters(es2.eigenvalues(), gap)) {
      RMatrix block = vc * es2.eigenvectors().middleCols(s2, l2);
      q.middleCols(col, l2) = standard_basis_reorthonormalize(block);
      col += l2;
    }
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(q(i, j)) > 1e-8) {
        if (q(i, j) < 0) q.col(j) *= -1.0;
        break;
      }
    }
  }
  if (n > 0 && q.determinant() < 0) q.col(n - 1) *= -1.0;

  auto off_diag = [](const RMatrix& d) {
    RMatrix o = d;
    o.diagonal().setZero();
    return max_abs(o);
  };
  const double res = std::max(off_diag(q.transpose() * a * q), off_diag(q.transpose() * b * q));
  if (res > std::max(tol, 1e-10) * scale)
    throw Error(ErrorCode::NoConvergence, "simultaneous diagonalization residual too large");
  return q;
}

CMatrix principal_log_unitary(const CMatrix& u, double tol, LogOptions opts) {
  if (unitarity_residual(u) > tol)
    throw Error(ErrorCode::NotUnitary, "principal_log_unitary requires a unitary input");
  const Complex shift = std::polar(1.0, -opts.phase_offset);
  const EigenSystem es = eig_normal(u * shift, tol);
  CVector logs(es.values.size());
  for (Eigen::Index j = 0; j < es.values.size(); ++j) {
    double phase = std::arg(es.values(j));
    if (std::numbers::pi - std::abs(phase) < tol) {
      if (opts.cut == BranchCut::Reject) {
        std::ostringstream os;
        os << "eigenphase " << phase << " lies on the branch cut";
        throw Error(ErrorCode::BranchAmbiguity, os.str());
      }
      phase = std::numbers::pi;
    }
    logs(j) = Complex(0.0, phase + opts.phase_offset);
  }
  CMatrix h = es.vectors * logs.asDiagonal() * es.vectors.adjoint();
  return (h - h.adjoint()) / 2.0;
}

CMatrix sqrt_unitary_principal(const CMatrix& u, double tol, bool det_one) {
  if (unitarity_residual(u) > tol)
    throw Error(ErrorCode::NotUnitary, "sqrt_unitary_principal requires a unitary input");
  const EigenSystem es = eig_normal(u, tol);
  CVector roots(es.values.size());
  Complex det = 1.0;
  for (Eigen::Index j = 0; j < es.values.size(); ++j) {
    const double phase = std::arg(es.values(j));
    if (std::numbers::pi - std::abs(phase) < tol)
      throw Error(ErrorCode::BranchAmbiguity, "eigenphase lies on the branch cut");
    roots(j) = std::polar(1.0, phase / 2.0);
    det *= roots(j);
  }
  if (det_one && roots.size() > 0 && det.real() < 0) roots(0) = -roots(0);
  return es.vectors * roots.asDiagonal() * es.vectors.adjoint();
}

CMatrix expm_skew(const CMatrix& h, double tol) {
  if (h.rows() != h.cols() || skew_hermitian_residual(h) > tol * std::max(1.0, max_abs(h)))
    throw Error(ErrorCode::NotSkewHermitian, "expm_skew requires a skew-Hermitian input");
  const CMatrix herm = Complex(0.0, 1.0) * (h - h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
  if (es.info() != Eigen::Success)
    throw Error(ErrorCode::NoConvergence, "Hermitian eigensolver failed");
  CVector phases(h.rows());
  for (Eigen::Index j = 0; j < h.rows(); ++j)
    phases(j) = std::polar(1.0, -es.eigenvalues()(j));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace cartan

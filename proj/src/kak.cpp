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

#include "cartan/kak.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace cartan {

namespace {

constexpr Complex kI(0.0, 1.0);
constexpr double kPi = std::numbers::pi;
// Eigenvalues of g within this distance of -1 take the constrained branch.
constexpr double kMinusOneGap = 1e-7;

CMatrix raw_apply(const Involution& theta, const CMatrix& x) {
  if (theta.conjugate_entries) return theta.w * x.conjugate() * theta.w.adjoint();
  return theta.w * x * theta.w.adjoint();
}

void require_unitary(const CMatrix& x, const char* who) {
  if (x.rows() != x.cols() || x.rows() == 0)
    throw Error(ErrorCode::DimensionMismatch, std::string(who) + ": input must be square");
  if (unitarity_residual(x) > 1e-8)
    throw Error(ErrorCode::NotUnitary, std::string(who) + ": input is not unitary");
}

CMatrix unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  CMatrix e = CMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

CMatrix j_standard(Eigen::Index n) { return standard(CartanType::AII, n).w; }

// Consecutive runs of (phase-sorted) eigenvalues closer than `gap`; the
// first and last runs merge when they meet across the branch cut.
std::vector<std::vector<Eigen::Index>> clusters(const CVector& values, double gap) {
  std::vector<std::vector<Eigen::Index>> out;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (!out.empty() && std::abs(values(k) - values(out.back().front())) <= gap) {
      out.back().push_back(k);
    } else {
      out.push_back({k});
    }
  }
  if (out.size() > 1 && std::abs(values(out.front().front()) - values(out.back().front())) <= gap) {
    out.front().insert(out.front().end(), out.back().begin(), out.back().end());
    out.pop_back();
  }
  return out;
}

}  // namespace

double KakCheck::worst() const {
  return std::max({reconstruction, k_fixed, log_a_in_p, torus_commute, exp_log_a});
}

KakCheck check_kak(const Involution& theta, const CMatrix& x, const KakResult& r) {
  KakCheck c;
  c.reconstruction = max_abs(CMatrix(r.k1 * r.a * r.k2 - x));
  c.k_fixed = std::max(max_abs(CMatrix(raw_apply(theta, r.k1) - r.k1)),
                       max_abs(CMatrix(raw_apply(theta, r.k2) - r.k2)));
  c.log_a_in_p = max_abs(CMatrix(raw_apply(theta, r.log_a) + r.log_a));
  for (std::size_t i = 0; i < r.torus.size(); ++i)
    for (std::size_t j = i + 1; j < r.torus.size(); ++j)
      c.torus_commute = std::max(c.torus_commute, max_abs(commutator(r.torus[i], r.torus[j])));
  c.exp_log_a = max_abs(CMatrix(expm_skew(r.log_a) - r.a));
  return c;
}

double constraint_residual(const CMatrix& x, const std::vector<SignedInvolution>& constraints) {
  double worst = 0.0;
  for (const SignedInvolution& c : constraints)
    worst = std::max(worst, max_abs(CMatrix(raw_apply(c.theta, x) - static_cast<double>(c.sign) * x)));
  return worst;
}

CMatrix log_constrained(const CMatrix& g, const std::vector<SignedInvolution>& constraints,
                        double tol, std::uint64_t seed) {
  require_unitary(g, "log_constrained");
  const Eigen::Index n = g.rows();
  const EigenSystem es = eig_normal(g, std::max(tol, 1e-8));
  std::vector<Eigen::Index> minus;
  CMatrix x = CMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (std::abs(es.values(k) + 1.0) <= kMinusOneGap) {
      minus.push_back(k);
      continue;
    }
    const CVector v = es.vectors.col(k);
    x += (kI * std::arg(es.values(k))) * (v * v.adjoint());
  }
  if (!minus.empty()) {
    const auto e = static_cast<Eigen::Index>(minus.size());
    CMatrix ve(n, e);
    for (Eigen::Index k = 0; k < e; ++k) ve.col(k) = es.vectors.col(minus[static_cast<std::size_t>(k)]);
    std::vector<CMatrix> herm;
    for (Eigen::Index a = 0; a < e; ++a) herm.push_back(unit(e, a, a));
    for (Eigen::Index a = 0; a < e; ++a) {
      for (Eigen::Index b = a + 1; b < e; ++b) {
        herm.push_back(unit(e, a, b) + unit(e, b, a));
        herm.push_back(kI * (unit(e, a, b) - unit(e, b, a)));
      }
    }
    const auto nc = static_cast<Eigen::Index>(constraints.size());
    RMatrix c(std::max<Eigen::Index>(1, 2 * n * n * nc), static_cast<Eigen::Index>(herm.size()));
    c.setZero();
    for (std::size_t b = 0; b < herm.size(); ++b) {
      const CMatrix y = kI * (ve * herm[b] * ve.adjoint());
      for (Eigen::Index i = 0; i < nc; ++i) {
        const SignedInvolution& ci = constraints[static_cast<std::size_t>(i)];
        const CMatrix d = raw_apply(ci.theta, y) - static_cast<double>(ci.sign) * y;
        const Eigen::Index off = 2 * n * n * i;
        for (Eigen::Index r = 0; r < n * n; ++r) {
          c(off + r, static_cast<Eigen::Index>(b)) = d(r % n, r / n).real();
          c(off + n * n + r, static_cast<Eigen::Index>(b)) = d(r % n, r / n).imag();
        }
      }
    }
    const RMatrix null = null_space(c);
    if (null.cols() == 0)
      throw Error(ErrorCode::LogOutsideSubspace, "log_constrained: no admissible branch on the -1 eigenspace");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    bool found = false;
    CMatrix r_sign;
    for (int attempt = 0; attempt < 8 && !found; ++attempt) {
      RVector coeff(null.cols());
      for (Eigen::Index i = 0; i < coeff.size(); ++i) coeff(i) = gauss(rng);
      const RVector w = null * coeff;
      CMatrix h0 = CMatrix::Zero(e, e);
      for (std::size_t b = 0; b < herm.size(); ++b) h0 += w(static_cast<Eigen::Index>(b)) * herm[b];
      Eigen::SelfAdjointEigenSolver<CMatrix> sa(h0);
      const RVector& ev = sa.eigenvalues();
      const double big = ev.cwiseAbs().maxCoeff();
      if (big <= 0.0 || ev.cwiseAbs().minCoeff() < 1e-6 * big) continue;
      RVector sg(e);
      for (Eigen::Index i = 0; i < e; ++i) sg(i) = ev(i) > 0 ? 1.0 : -1.0;
      r_sign = sa.eigenvectors() * sg.cast<Complex>().asDiagonal() * sa.eigenvectors().adjoint();
      found = true;
    }
    if (!found)
      throw Error(ErrorCode::LogOutsideSubspace,
                  "log_constrained: -1 eigenspace admits no logarithm in the subspace");
    x += (kI * kPi) * (ve * r_sign * ve.adjoint());
  }
  x = (x - x.adjoint()) / 2.0;
  const double exp_err = max_abs(CMatrix(expm_skew(x) - g));
  const double con_err = constraint_residual(x, constraints);
  const double limit = std::max(tol, 1e-9) * 100.0;
  if (exp_err > limit || con_err > limit * std::max(1.0, max_abs(x)))
    throw Error(ErrorCode::LogOutsideSubspace,
                "log_constrained: residuals exp " + std::to_string(exp_err) + ", constraint " +
                    std::to_string(con_err));
  return x;
}

KakResult kak_AI(const CMatrix& x, double tol) {
  require_unitary(x, "kak_AI");
  const Eigen::Index n = x.rows();
  CMatrix m = x.transpose() * x;
  m = (m + m.transpose()) / 2.0;
  const RMatrix q = simdiag_commuting_symmetric(m.real(), m.imag(), std::max(tol, 1e-9));
  const CMatrix qc = q.cast<Complex>();
  const CMatrix d = qc.transpose() * m * qc;
  KakResult r;
  r.a = CMatrix::Zero(n, n);
  r.log_a = CMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double half = std::arg(d(k, k)) / 2.0;
    r.a(k, k) = std::exp(kI * half);
    r.log_a(k, k) = kI * half;
  }
  r.k2 = qc.transpose();
  r.k1 = x * qc * r.a.adjoint();
  if (r.k1.determinant().real() < 0) {
    r.a(0, 0) = -r.a(0, 0);
    r.log_a(0, 0) += kI * kPi;
    r.k1.col(0) = -r.k1.col(0);
  }
  const double imag = max_abs(RMatrix(r.k1.imag()));
  if (imag > std::max(tol, 1e-9) * 100.0)
    throw Error(ErrorCode::RealityViolated, "kak_AI: K1 has imaginary residual " + std::to_string(imag));
  for (Eigen::Index k = 0; k < n; ++k) r.torus.push_back(r.log_a(k, k) * unit(n, k, k));
  return r;
}

KakResult kak_AII(const CMatrix& x, double tol) {
  require_unitary(x, "kak_AII");
  const Eigen::Index n = x.rows();
  if (n % 2 != 0) throw Error(ErrorCode::BadParams, "kak_AII needs even dimension");
  const Eigen::Index m = n / 2;
  const CMatrix j = j_standard(n);
  const CMatrix mm = j * x.transpose() * j.adjoint() * x;
  const EigenSystem es = eig_normal(mm, std::max(tol, 1e-8));
  CMatrix v(n, m);
  std::vector<Complex> lambda;
  Eigen::Index filled = 0;
  for (const auto& cl : clusters(es.values, 1e-7)) {
    const auto c = static_cast<Eigen::Index>(cl.size());
    if (c % 2 != 0)
      throw Error(ErrorCode::PairingFailed, "kak_AII: eigenvalue cluster of odd size " + std::to_string(c));
    CMatrix cols(n, c);
    for (Eigen::Index i = 0; i < c; ++i) cols.col(i) = es.vectors.col(cl[static_cast<std::size_t>(i)]);
    CMatrix chosen(n, 0);
    for (Eigen::Index pair = 0; pair < c / 2; ++pair) {
      CMatrix rest = cols;
      if (chosen.cols() > 0) rest -= chosen * (chosen.adjoint() * cols);
      Eigen::Index best = 0;
      rest.colwise().norm().maxCoeff(&best);
      const CVector vk = rest.col(best).normalized();
      const CVector wk = -j * vk.conjugate();
      if ((wk - cols * (cols.adjoint() * wk)).norm() > 1e-6 || std::abs(vk.dot(wk)) > 1e-6)
        throw Error(ErrorCode::PairingFailed, "kak_AII: Kramers partner leaves the eigenspace");
      CMatrix grown(n, chosen.cols() + 2);
      grown << chosen, vk, wk;
      chosen = grown;
      v.col(filled++) = vk;
      lambda.push_back(vk.dot(mm * vk));
    }
  }
  if (filled != m) throw Error(ErrorCode::PairingFailed, "kak_AII: incomplete symplectic basis");
  CMatrix s(n, n);
  s << v, CMatrix(-j * v.conjugate());
  KakResult r;
  r.a = CMatrix::Zero(n, n);
  r.log_a = CMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < m; ++k) {
    const double half = std::arg(lambda[static_cast<std::size_t>(k)]) / 2.0;
    r.a(k, k) = r.a(k + m, k + m) = std::exp(kI * half);
    r.log_a(k, k) = r.log_a(k + m, k + m) = kI * half;
    r.torus.push_back(kI * half * (unit(n, k, k) + unit(n, k + m, k + m)));
  }
  r.k2 = s.adjoint();
  r.k1 = x * s * r.a.adjoint();
  return r;
}

KakResult kak_AIII(const CMatrix& x, Eigen::Index p, double tol) {
  require_unitary(x, "kak_AIII");
  const Eigen::Index n = x.rows();
  const Eigen::Index q = n - p;
  if (p < 1 || q < 1) throw Error(ErrorCode::BadParams, "kak_AIII needs p, q >= 1");
  const Involution theta = standard(CartanType::AIII, n, p);
  const CMatrix& z = theta.w;
  const CMatrix mm = z * x.adjoint() * z * x;
  const CMatrix half = log_constrained(mm, {{theta, -1}}, tol) / 2.0;
  const CMatrix b = half.topRightCorner(p, q);
  Eigen::JacobiSVD<CMatrix> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector& sigma = svd.singularValues();
  CMatrix ks = CMatrix::Zero(n, n);
  ks.topLeftCorner(p, p) = svd.matrixU();
  ks.bottomRightCorner(q, q) = svd.matrixV();
  KakResult r;
  r.log_a = CMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    const CMatrix piece = sigma(k) * (unit(n, k, p + k) - unit(n, p + k, k));
    r.log_a += piece;
    if (sigma(k) != 0.0) r.torus.push_back(piece);
  }
  r.a = expm_skew(r.log_a);
  r.k2 = ks.adjoint();
  r.k1 = x * expm_skew(-half) * ks;
  const double off = std::max(max_abs(CMatrix(r.k1.topRightCorner(p, q))),
                              max_abs(CMatrix(r.k1.bottomLeftCorner(q, p))));
  if (off > std::max(tol, 1e-9) * 100.0)
    throw Error(ErrorCode::GluingFailed, "kak_AIII: K1 not block diagonal (" + std::to_string(off) + ")");
  return r;
}

KakResult kak_general(const Involution& theta, const CMatrix& x, double tol) {
  if (x.rows() != theta.n) throw Error(ErrorCode::DimensionMismatch, "kak_general: dimension mismatch");
  const Standardizer st = build_standardizer(theta, tol);
  const CMatrix& f = st.f;
  const CMatrix xt = f.adjoint() * x * f;
  KakResult r;
  switch (st.kind) {
    case CartanType::AI: r = kak_AI(xt, tol); break;
    case CartanType::AII: r = kak_AII(xt, tol); break;
    case CartanType::AIII: r = kak_AIII(xt, st.p, tol); break;
  }
  auto back = [&](const CMatrix& m) { return CMatrix(f * m * f.adjoint()); };
  r.k1 = back(r.k1);
  r.a = back(r.a);
  r.k2 = back(r.k2);
  r.log_a = back(r.log_a);
  for (CMatrix& t : r.torus) t = back(t);
  return r;
}

EmbeddedU2 solve_embedded_u2(const CMatrix& x, double tol) {
  if (x.rows() != 4 || x.cols() != 4) throw Error(ErrorCode::DimensionMismatch, "solve_embedded_u2 needs 4x4");
  if (max_abs(RMatrix(x.imag())) > tol || unitarity_residual(x) > tol)
    throw Error(ErrorCode::InvalidInput, "solve_embedded_u2 needs a real orthogonal matrix");
  const CMatrix x11 = x.topLeftCorner(2, 2), x12 = x.topRightCorner(2, 2);
  const CMatrix x21 = x.bottomLeftCorner(2, 2), x22 = x.bottomRightCorner(2, 2);
  const CMatrix left = x22 + kI * x12;
  Eigen::JacobiSVD<CMatrix> svd(left);
  if (svd.singularValues().minCoeff() <= tol)
    throw Error(ErrorCode::BlockSingular, "solve_embedded_u2: X22 + i X12 is singular");
  EmbeddedU2 out;
  out.e_squared = left.inverse() * (x11 - kI * x21);
  out.e = sqrt_unitary_principal(out.e_squared, tol);
  const CMatrix u = (x11 - kI * x21) * out.e.adjoint();
  const RMatrix re = u.real(), im = u.imag();
  out.k1 = CMatrix::Zero(4, 4);
  out.k1.topLeftCorner(2, 2) = re.cast<Complex>();
  out.k1.topRightCorner(2, 2) = im.cast<Complex>();
  out.k1.bottomLeftCorner(2, 2) = (-im).cast<Complex>();
  out.k1.bottomRightCorner(2, 2) = re.cast<Complex>();
  out.a = CMatrix::Zero(4, 4);
  out.a.topLeftCorner(2, 2) = out.e;
  out.a.bottomRightCorner(2, 2) = out.e.adjoint();
  return out;
}

Subspace cartan_subalgebra(const Scheme& scheme, int level) {
  if (scheme.name != "ccd-new")
    throw Error(ErrorCode::UnsupportedScheme, "no tabulated Cartan subalgebra for scheme " + scheme.name);
  const int sites = static_cast<int>(scheme.dims.size());
  return span_of_strings("cartan@" + std::to_string(level), AlgebraBasis::for_dimension(scheme.n()),
                         new_scheme_cartan(sites, level));
}

}  // namespace cartan

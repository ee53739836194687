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


// Independent reference implementations used by the tests. Nothing here
// calls into the library.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;

inline M kron(const M& a, const M& b) {
  M out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline M pauli1(char c) {
  M p(2, 2);
  const C i(0, 1);
  switch (c) {
    case 'X': p << 0, 1, 1, 0; break;
    case 'Y': p << 0, -i, i, 0; break;
    case 'Z': p << 1, 0, 0, -1; break;
    default: p << 1, 0, 0, 1; break;
  }
  return p;
}

inline M pauli(const std::string& s) {
  M out = M::Identity(1, 1);
  for (char c : s) out = kron(out, pauli1(c));
  return out;
}

inline std::vector<std::string> strings(int n) {
  std::vector<std::string> out{""};
  for (int k = 0; k < n; ++k) {
    std::vector<std::string> next;
    for (const auto& s : out)
      for (char c : std::string("IXYZ")) next.push_back(s + c);
    out = std::move(next);
  }
  return out;
}

inline double maxabs(const M& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Scaling and squaring with a long Taylor series.
inline M expm(const M& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int s = 0;
  while (norm / std::pow(2.0, s) > 0.25) ++s;
  const M b = a / std::pow(2.0, s);
  M term = M::Identity(a.rows(), a.cols());
  M sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * b / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < s; ++k) sum = sum * sum;
  return sum;
}

inline M random_skew(Eigen::Index n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, 1.0);
  M a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = C(g(rng), g(rng));
  return scale * (a - a.adjoint()) / 2.0;
}

// Gram-Schmidt on a complex Gaussian matrix with the R-diagonal phases
// removed, which gives the Haar measure.
inline M haar(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  M q(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = C(g(rng), g(rng));
    for (Eigen::Index k = 0; k < j; ++k) v -= q.col(k).dot(v) * q.col(k);
    for (Eigen::Index k = 0; k < j; ++k) v -= q.col(k).dot(v) * q.col(k);
    q.col(j) = v / v.norm();
  }
  return q;
}

// Real coordinates of a skew-Hermitian matrix in the orthonormal basis
// {i P / sqrt(2^n)}; x = sum_k c_k i P_k / sqrt(d).
inline Eigen::VectorXd pauli_coords(const M& x, int n_sites) {
  const auto ss = strings(n_sites);
  const double d = std::pow(2.0, n_sites);
  Eigen::VectorXd c(static_cast<Eigen::Index>(ss.size()));
  for (std::size_t k = 0; k < ss.size(); ++k) {
    const M e = C(0, 1) * pauli(ss[k]) / std::sqrt(d);
    c(static_cast<Eigen::Index>(k)) = (e.adjoint() * x).trace().real();
  }
  return c;
}

inline Eigen::MatrixXd real_projector(const Eigen::MatrixXd& cols) {
  if (cols.cols() == 0) return Eigen::MatrixXd::Zero(cols.rows(), cols.rows());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cols, Eigen::ComputeThinU);
  Eigen::Index r = 0;
  const auto sv = svd.singularValues();
  while (r < sv.size() && sv(r) > 1e-9 * std::max(1.0, sv(0))) ++r;
  const Eigen::MatrixXd u = svd.matrixU().leftCols(r);
  return u * u.transpose();
}

// Brute-force dimension of the fixed space of X -> W conj(X) W^dagger
// (conj_entries) or W X W^dagger acting on i*Pauli strings.
inline int fixed_dim_pauli(const M& w, bool conj_entries, int n_sites) {
  const auto ss = strings(n_sites);
  const double d = std::pow(2.0, n_sites);
  Eigen::MatrixXd t(static_cast<Eigen::Index>(ss.size()), static_cast<Eigen::Index>(ss.size()));
  for (std::size_t k = 0; k < ss.size(); ++k) {
    const M x = C(0, 1) * pauli(ss[k]) / std::sqrt(d);
    const M y = w * (conj_entries ? M(x.conjugate()) : x) * w.adjoint();
    t.col(static_cast<Eigen::Index>(k)) = pauli_coords(y, n_sites);
  }
  const Eigen::MatrixXd fix = t - Eigen::MatrixXd::Identity(t.rows(), t.cols());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(fix);
  int zeros = 0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()(k) < 1e-9) ++zeros;
  return zeros;
}

}  // namespace oracle

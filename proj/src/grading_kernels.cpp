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

#include "cartan/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace cartan::kernels {

namespace {

CMatrix theta_of(const Involution& theta, const CMatrix& x) {
  if (theta.conjugate_entries) return theta.w * x.conjugate() * theta.w.adjoint();
  return theta.w * x * theta.w.adjoint();
}

// Label of every Pauli-basis index when all blocks are coordinate aligned,
// empty otherwise.
std::vector<int> aligned_labels(const AlgebraBasis& basis, const std::vector<RMatrix>& blocks) {
  if (!basis.is_pauli()) return {};
  std::vector<int> label(static_cast<std::size_t>(basis.size()), -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const RMatrix& q = blocks[b];
    for (Eigen::Index c = 0; c < q.cols(); ++c) {
      Eigen::Index at = 0;
      const double peak = q.col(c).cwiseAbs().maxCoeff(&at);
      if (std::abs(peak - 1.0) > 1e-10) return {};
      if (label[static_cast<std::size_t>(at)] != -1) return {};
      if (q.col(c).squaredNorm() - peak * peak > 1e-20) return {};
      label[static_cast<std::size_t>(at)] = static_cast<int>(b);
    }
  }
  return label;
}

CommutationReport aligned_check(const AlgebraBasis& basis, const std::vector<int>& label,
                                Exec exec) {
  int sites = 0;
  while ((Eigen::Index{1} << sites) < basis.n()) ++sites;
  const auto size = static_cast<long long>(basis.size());
  double worst = 0.0;
  long long pairs = 0;
  auto body = [&](long long k, double& w, long long& cnt) {
    const int lk = label[static_cast<std::size_t>(k)];
    for (long long l = k; l < size; ++l) {
      const int ll = label[static_cast<std::size_t>(l)];
      if (lk < 0 || ll < 0) continue;
      ++cnt;
      const PauliBracket br = pauli_bracket(k, l, sites);
      if (br.coeff == 0.0) continue;
      if (label[static_cast<std::size_t>(br.m)] != (lk ^ ll)) w = std::max(w, std::abs(br.coeff));
    }
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 4) reduction(max : worst) reduction(+ : pairs)
    for (long long k = 0; k < size; ++k) body(k, worst, pairs);
  } else {
    for (long long k = 0; k < size; ++k) body(k, worst, pairs);
  }
  return {worst, pairs};
}

CommutationReport dense_check(const AlgebraBasis& basis, const std::vector<RMatrix>& blocks,
                              Exec exec) {
  std::vector<std::vector<CMatrix>> mats(blocks.size());
  std::vector<std::pair<int, Eigen::Index>> work;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (Eigen::Index c = 0; c < blocks[b].cols(); ++c) {
      mats[b].push_back(basis.matrix(blocks[b].col(c)));
      work.emplace_back(static_cast<int>(b), c);
    }
  }
  const auto total = static_cast<long long>(work.size());
  double worst = 0.0;
  long long pairs = 0;
  auto body = [&](long long idx, double& w, long long& cnt) {
    const auto [ba, ca] = work[static_cast<std::size_t>(idx)];
    const CMatrix& a = mats[static_cast<std::size_t>(ba)][static_cast<std::size_t>(ca)];
    for (std::size_t bb = static_cast<std::size_t>(ba); bb < blocks.size(); ++bb) {
      const Eigen::Index start = (bb == static_cast<std::size_t>(ba)) ? ca : 0;
      const Eigen::Index count = blocks[bb].cols() - start;
      if (count <= 0) continue;
      const RMatrix& qg = blocks[static_cast<std::size_t>(ba) ^ bb];
      RMatrix c(basis.size(), count);
      for (Eigen::Index j = 0; j < count; ++j)
        c.col(j) = basis.coords(commutator(a, mats[bb][static_cast<std::size_t>(start + j)]));
      const RMatrix rest = c - qg * (qg.transpose() * c);
      w = std::max(w, rest.colwise().norm().maxCoeff());
      cnt += count;
    }
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1) reduction(max : worst) reduction(+ : pairs)
    for (long long i = 0; i < total; ++i) body(i, worst, pairs);
  } else {
    for (long long i = 0; i < total; ++i) body(i, worst, pairs);
  }
  return {worst, pairs};
}

}  // namespace

PauliBracket pauli_bracket(Eigen::Index k, Eigen::Index l, int sites) {
  int power = 0;  // P_k P_l = i^power P_m
  Eigen::Index m = 0;
  for (int s = sites - 1, shift = 0; s >= 0; --s, shift += 2) {
    const int a = static_cast<int>((k >> shift) & 3);
    const int b = static_cast<int>((l >> shift) & 3);
    int c = 0;
    if (a == 0) {
      c = b;
    } else if (b == 0 || a == b) {
      c = a == b ? 0 : a;
    } else {
      c = 6 - a - b;
      power += ((b - a + 3) % 3 == 1) ? 1 : 3;
    }
    m |= static_cast<Eigen::Index>(c) << shift;
  }
  power %= 4;
  PauliBracket br;
  br.m = m;
  if (power % 2 == 0) return br;
  const double root = std::sqrt(static_cast<double>(Eigen::Index{1} << sites));
  br.coeff = (power == 1 ? -2.0 : 2.0) / root;
  return br;
}

RMatrix involution_matrix(const Involution& theta, const AlgebraBasis& basis, Exec exec) {
  if (theta.n != basis.n()) throw Error(ErrorCode::DimensionMismatch, "involution/basis mismatch");
  const Eigen::Index size = basis.size();
  RMatrix t(size, size);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (Eigen::Index k = 0; k < size; ++k) t.col(k) = basis.coords(theta_of(theta, basis.element(k)));
  } else {
    for (Eigen::Index k = 0; k < size; ++k) t.col(k) = basis.coords(theta_of(theta, basis.element(k)));
  }
  return t;
}

CommutationReport graded_commutation(const AlgebraBasis& basis,
                                     const std::vector<RMatrix>& blocks, Exec exec) {
  if (blocks.empty() || (blocks.size() & (blocks.size() - 1)) != 0)
    throw Error(ErrorCode::BadParams, "graded_commutation needs 2^p blocks");
  const std::vector<int> label = aligned_labels(basis, blocks);
  if (!label.empty()) return aligned_check(basis, label, exec);
  return dense_check(basis, blocks, exec);
}

}  // namespace cartan::kernels

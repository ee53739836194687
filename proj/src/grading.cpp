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

#include "cartan/grading.hpp"

#include <random>

namespace cartan {

namespace {

Subspace sub(std::string label, const std::shared_ptr<const AlgebraBasis>& basis, RMatrix cols) {
  return Subspace{std::move(label), basis, std::move(cols)};
}

Subspace union_of(std::string label, const Grading& g, unsigned low_mask, unsigned low_bits) {
  Eigen::Index total = 0;
  std::vector<const Subspace*> parts;
  for (unsigned mask = 0; mask < g.blocks.size(); ++mask) {
    if ((mask & low_mask) != low_bits) continue;
    parts.push_back(&g.blocks[mask]);
    total += g.blocks[mask].dim();
  }
  RMatrix cols(g.basis->size(), total);
  Eigen::Index at = 0;
  for (const Subspace* s : parts) {
    cols.middleCols(at, s->dim()) = s->basis;
    at += s->dim();
  }
  return sub(std::move(label), g.basis, total > 0 ? canonical_basis(cols) : cols);
}

}  // namespace

Subspace prefix_subspace(const Grading& g, unsigned mask, int length) {
  const unsigned low = length >= 32 ? ~0U : ((1U << length) - 1U);
  return union_of(prefix_label(mask, length), g, low, mask & low);
}

std::string block_label(unsigned mask, int p) { return prefix_label(mask, p); }

std::string prefix_label(unsigned mask, int length) {
  std::string out = "L_";
  for (int j = 0; j < length; ++j) out += ((mask >> j) & 1U) ? '1' : '0';
  return out;
}

Grading build_grading(const std::vector<Involution>& involutions, kernels::Exec exec) {
  if (involutions.empty()) throw Error(ErrorCode::BadParams, "grading needs at least one involution");
  if (involutions.size() > 16) throw Error(ErrorCode::BadParams, "grading supports at most 16 involutions");
  Grading g;
  g.p = static_cast<int>(involutions.size());
  g.n = involutions.front().n;
  g.basis = AlgebraBasis::for_dimension(g.n);
  g.involutions = involutions;
  for (const Involution& th : involutions) {
    if (th.n != g.n) throw Error(ErrorCode::DimensionMismatch, "involutions act on different dimensions");
    g.t.push_back(kernels::involution_matrix(th, *g.basis, exec));
  }
  for (int i = 0; i < g.p; ++i) {
    for (int j = i + 1; j < g.p; ++j) {
      const double r = max_abs(RMatrix(g.t[i] * g.t[j] - g.t[j] * g.t[i]));
      if (r > 1e-8)
        throw Error(ErrorCode::NonCommutingInvolutions,
                    "involutions " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                        " do not commute (residual " + std::to_string(r) + ")");
    }
  }
  std::vector<RMatrix> current = {RMatrix::Identity(g.basis->size(), g.basis->size())};
  for (int j = 0; j < g.p; ++j) {
    std::vector<RMatrix> next(current.size() * 2);
    for (std::size_t mask = 0; mask < current.size(); ++mask) {
      auto [qp, qm] = split_invariant(g.t[j], current[mask]);
      next[mask] = std::move(qp);
      next[mask | (std::size_t{1} << j)] = std::move(qm);
    }
    current = std::move(next);
  }
  Eigen::Index total = 0;
  for (unsigned mask = 0; mask < current.size(); ++mask) {
    total += current[mask].cols();
    g.blocks.push_back(sub(block_label(mask, g.p), g.basis, std::move(current[mask])));
  }
  if (total != g.basis->size())
    throw Error(ErrorCode::DimensionMismatch, "grading blocks have total dimension " +
                                                  std::to_string(total) + ", expected " +
                                                  std::to_string(g.basis->size()));
  return g;
}

kernels::CommutationReport validate_grading(const Grading& g, kernels::Exec exec) {
  std::vector<RMatrix> blocks;
  for (const Subspace& s : g.blocks) blocks.push_back(s.basis);
  return kernels::graded_commutation(*g.basis, blocks, exec);
}

double bracket_residual(const Subspace& a, const Subspace& b, const Subspace& target) {
  const auto& basis = *a.ambient;
  const std::vector<CMatrix> ea = a.elements();
  const std::vector<CMatrix> eb = b.elements();
  double worst = 0.0;
  for (const CMatrix& x : ea) {
    for (const CMatrix& y : eb) {
      const RVector c = basis.coords(commutator(x, y));
      const RVector rest = c - target.basis * (target.basis.transpose() * c);
      worst = std::max(worst, rest.norm());
    }
  }
  return worst;
}

CenterSplit center_split(const Subspace& s, double tol) {
  const Eigen::Index d = s.dim();
  const auto& basis = *s.ambient;
  if (d == 0) return {s, s};
  const std::vector<CMatrix> e = s.elements();
  // Row block k of `stack` holds ad(e_k) restricted to s, in s coordinates.
  RMatrix stack(d * d, d);
  stack.setZero();
  double closure = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index i = k + 1; i < d; ++i) {
      const RVector c = basis.coords(commutator(e[k], e[i]));
      const RVector cs = s.basis.transpose() * c;
      closure = std::max(closure, (c - s.basis * cs).norm());
      stack.block(k * d, i, d, 1) = cs;
      stack.block(i * d, k, d, 1) = -cs;
    }
  }
  if (closure > tol)
    throw Error(ErrorCode::NotASubalgebra,
                "subspace " + s.label + " is not closed under the bracket (residual " +
                    std::to_string(closure) + ")");
  const RMatrix null = null_space(stack);
  RMatrix rest;
  if (null.cols() == 0) {
    rest = RMatrix::Identity(d, d);
  } else {
    rest = null_space(null.transpose());
  }
  CenterSplit out;
  out.center = sub(s.label + ".center", s.ambient,
                   null.cols() > 0 ? canonical_basis(s.basis * null) : RMatrix(basis.size(), 0));
  out.semisimple = sub(s.label + ".semisimple", s.ambient,
                       rest.cols() > 0 ? canonical_basis(s.basis * rest) : RMatrix(basis.size(), 0));
  return out;
}

Subspace maximal_abelian(const Subspace& p, std::uint64_t seed) {
  const auto& basis = *p.ambient;
  const Eigen::Index d = p.dim();
  if (d == 0) return sub(p.label + ".cartan", p.ambient, RMatrix(basis.size(), 0));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  RVector r(d);
  for (Eigen::Index i = 0; i < d; ++i) r(i) = gauss(rng);
  const CMatrix h = basis.matrix(p.basis * r);
  RMatrix ad(basis.size(), d);
  for (Eigen::Index i = 0; i < d; ++i) ad.col(i) = basis.coords(commutator(h, p.element(i)));
  const RMatrix null = null_space(ad);
  return sub(p.label + ".cartan", p.ambient, canonical_basis(p.basis * null));
}

RecursiveSequence recursive_sequences(const Grading& g, const std::vector<LevelHint>& hints,
                                      double tol) {
  RecursiveSequence seq;
  for (int j = 0; j < g.p; ++j) {
    LevelInfo info;
    info.level = j;
    const unsigned low = (1U << j) - 1U;
    info.whole = union_of(prefix_label(0, j), g, low, 0);
    info.k = union_of(prefix_label(0, j + 1), g, low | (1U << j), 0);
    info.p = union_of(prefix_label(1U << j, j + 1), g, low | (1U << j), 1U << j);
    if (info.whole.dim() != info.k.dim() + info.p.dim())
      throw Error(ErrorCode::CartanRelationViolated,
                  "level " + std::to_string(j) + ": dimensions do not telescope");
    if (info.whole.dim() > 0) {
      const auto report = kernels::graded_commutation(*g.basis, {info.k.basis, info.p.basis},
                                                      kernels::Exec::Parallel);
      info.cartan_residual = report.max_residual;
      if (report.max_residual > tol)
        throw Error(ErrorCode::CartanRelationViolated,
                    "level " + std::to_string(j) + ": Cartan relations fail (residual " +
                        std::to_string(report.max_residual) + ")");
    }
    info.center = center_split(info.whole, std::max(tol, 1e-9)).center;
    info.cartan = maximal_abelian(info.p);
    info.cartan.label = info.p.label + ".cartan";
    if (j < static_cast<int>(hints.size())) info.expected_type = hints[j].expected_type;
    seq.levels.push_back(std::move(info));
  }
  seq.bottom = union_of(prefix_label(0, g.p), g, (1U << g.p) - 1U, 0);
  return seq;
}

}  // namespace cartan

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
#include "cartan/grading.hpp"
#include "cartan/kernels.hpp"
#include "cartan/schemes.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace cartan;

namespace {

// Dense oracle for [L_a, L_b] in L_{a xor b}: brackets of every basis pair,
// projected with an independently built projector.
double dense_grading_residual(const Grading& g) {
  const auto& basis = *g.basis;
  std::vector<Eigen::MatrixXd> proj;
  for (const auto& b : g.blocks) proj.push_back(oracle::real_projector(b.basis));
  double worst = 0.0;
  for (std::size_t a = 0; a < g.blocks.size(); ++a) {
    for (std::size_t b = a; b < g.blocks.size(); ++b) {
      const auto& target = proj[a ^ b];
      for (Eigen::Index i = 0; i < g.blocks[a].dim(); ++i) {
        const CMatrix x = basis.matrix(g.blocks[a].basis.col(i));
        for (Eigen::Index j = 0; j < g.blocks[b].dim(); ++j) {
          const CMatrix y = basis.matrix(g.blocks[b].basis.col(j));
          const Eigen::VectorXd c = basis.coords(CMatrix(x * y - y * x));
          worst = std::max(worst, (c - target * c).cwiseAbs().maxCoeff());
        }
      }
    }
  }
  return worst;
}

}  // namespace

TEST_SUITE("grading") {

TEST_CASE("labels") {
  CHECK(block_label(0b01, 2) == "L_10");
  CHECK(prefix_label(0, 3) == "L_000");
  CHECK(prefix_label(0b100, 3) == "L_001");
}

TEST_CASE("new scheme S0 dimensions, ranks and Cartan relations") {
  const Scheme s = build_new_scheme(3);
  const Grading g = build_grading(s.involutions);
  const RecursiveSequence seq = recursive_sequences(g, s.hints);
  REQUIRE(seq.levels.size() == 6);
  const std::vector<Eigen::Index> s0 = {64, 36, 16, 6, 4, 3, 1};
  for (int k = 0; k <= 6; ++k) CHECK(seq.s0(k).dim() == s0[static_cast<std::size_t>(k)]);
  for (const LevelInfo& lv : seq.levels) {
    CHECK(lv.whole.dim() == lv.k.dim() + lv.p.dim());
    CHECK(lv.cartan_residual < 1e-9);
    CHECK(lv.rank() == static_cast<Eigen::Index>(s.hints[static_cast<std::size_t>(lv.level)].cartan.size()));
    for (Eigen::Index c = 0; c < lv.cartan.dim(); ++c) CHECK(lv.p.residual(lv.cartan.element(c)) < 1e-10);
    // Cartan subspace is abelian.
    CHECK(bracket_residual(lv.cartan, lv.cartan, Subspace{"0", g.basis, RMatrix(g.basis->size(), 0)}) < 1e-10);
  }
  CHECK(seq.s1(1).dim() == 28);
}

TEST_CASE("grading blocks pass the dense oracle") {
  for (const Scheme& s : {build_kg_sequence(2), build_new_scheme(2), build_bipartite_recursion(2, 3, {})}) {
    const Grading g = build_grading(s.involutions);
    Eigen::Index total = 0;
    for (const auto& b : g.blocks) total += b.dim();
    CHECK(total == g.n * g.n);
    CHECK(dense_grading_residual(g) < 1e-9);
    CHECK(validate_grading(g).max_residual < 1e-9);
  }
}

TEST_CASE("KG and bipartite bottom dimensions") {
  const Scheme kg = build_kg_sequence(3);
  const RecursiveSequence a = recursive_sequences(build_grading(kg.involutions), kg.hints);
  const std::vector<Eigen::Index> kg_s0 = {64, 32, 16, 8, 4, 2};
  for (int k = 0; k <= 5; ++k) CHECK(a.s0(k).dim() == kg_s0[static_cast<std::size_t>(k)]);
  const Scheme bp = build_bipartite_recursion(2, 3, {});
  const RecursiveSequence b = recursive_sequences(build_grading(bp.involutions), bp.hints);
  const std::vector<Eigen::Index> bp_s0 = {36, 15, 6, 2, 0, 0};
  for (int k = 0; k <= 5; ++k) CHECK(b.s0(k).dim() == bp_s0[static_cast<std::size_t>(k)]);
}

TEST_CASE("non-commuting involutions are rejected") {
  std::mt19937_64 rng(5);
  const Involution t = standard(CartanType::AIII, 4, 2);
  CHECK_THROWS_AS(build_grading({t, conjugate(t, oracle::haar(4, rng))}), Error);
}

TEST_CASE("center split of u(n) and of the AIII fixed algebra") {
  const auto b = AlgebraBasis::for_dimension(4);
  const Subspace all{"u4", b, RMatrix::Identity(16, 16)};
  const CenterSplit cs = center_split(all);
  CHECK(cs.center.dim() == 1);
  CHECK(cs.semisimple.dim() == 15);
  const auto [k, p] = split(standard(CartanType::AIII, 4, 2));
  CHECK(center_split(k).center.dim() == 2);
}

TEST_CASE("maximal abelian subspaces have the expected rank") {
  for (auto [kind, n, p, rank] : {std::tuple{CartanType::AI, 4, 0, 4}, std::tuple{CartanType::AII, 4, 0, 2},
                                  std::tuple{CartanType::AIII, 5, 2, 2}}) {
    const auto sp = split(standard(kind, n, p)).second;
    const Subspace a = maximal_abelian(sp);
    CHECK(a.dim() == rank);
    for (Eigen::Index i = 0; i < a.dim(); ++i)
      for (Eigen::Index j = 0; j < a.dim(); ++j)
        CHECK(oracle::maxabs(commutator(a.element(i), a.element(j))) < 1e-10);
  }
}

}  // TEST_SUITE

TEST_SUITE("kernels") {

TEST_CASE("Pauli bracket table matches dense commutators") {
  const auto b = AlgebraBasis::for_dimension(4);
  for (Eigen::Index k = 0; k < 16; ++k) {
    for (Eigen::Index l = 0; l < 16; ++l) {
      const CMatrix c = commutator(b->element(k), b->element(l));
      const kernels::PauliBracket pb = kernels::pauli_bracket(k, l, 2);
      const CMatrix expect = pb.coeff * b->element(pb.m);
      CHECK(oracle::maxabs(c - expect) < 1e-14);
    }
  }
}

TEST_CASE("serial and parallel kernels agree") {
  std::mt19937_64 rng(41);
  for (const Scheme& s : {build_new_scheme(3), build_bipartite_recursion(2, 3, {})}) {
    const auto basis = AlgebraBasis::for_dimension(s.n());
    for (const auto& t : s.involutions) {
      const RMatrix a = kernels::involution_matrix(t, *basis, kernels::Exec::Serial);
      const RMatrix b = kernels::involution_matrix(t, *basis, kernels::Exec::Parallel);
      CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
    }
    const Grading g = build_grading(s.involutions, kernels::Exec::Serial);
    const auto rs = validate_grading(g, kernels::Exec::Serial);
    const auto rp = validate_grading(g, kernels::Exec::Parallel);
    CHECK(rs.pairs == rp.pairs);
    CHECK(rs.pairs > 0);
    CHECK(rs.max_residual == doctest::Approx(rp.max_residual).epsilon(1e-12));
  }
}

TEST_CASE("graded commutation detects a broken grading") {
  // Swap one basis vector between two blocks.
  const Scheme s = build_kg_sequence(2);
  Grading g = build_grading(s.involutions);
  unsigned a = 0, c = 1;
  while (g.blocks[c].dim() == 0) ++c;
  std::vector<RMatrix> blocks;
  for (const auto& b : g.blocks) blocks.push_back(b.basis);
  const Eigen::VectorXd va = blocks[a].col(0), vc = blocks[c].col(0);
  blocks[a].col(0) = vc;
  blocks[c].col(0) = va;
  for (auto exec : {kernels::Exec::Serial, kernels::Exec::Parallel})
    CHECK(kernels::graded_commutation(*g.basis, blocks, exec).max_residual > 0.1);
}

}  // TEST_SUITE

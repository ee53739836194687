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

#include "cartan/synth.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace cartan {

namespace {

constexpr Complex kI(0.0, 1.0);

CMatrix raw_apply(const Involution& theta, const CMatrix& x) {
  if (theta.conjugate_entries) return theta.w * x.conjugate() * theta.w.adjoint();
  return theta.w * x * theta.w.adjoint();
}

std::vector<SignedInvolution> signs(const Scheme& s, int count, int last_sign) {
  std::vector<SignedInvolution> out;
  for (int i = 0; i < count; ++i)
    out.push_back({s.involutions[static_cast<std::size_t>(i)], i + 1 == count ? last_sign : 1});
  return out;
}

// Continuous logarithm of M near `prev`: eigenphases lifted to the branch
// closest to the compression of prev onto each eigenspace.
bool lift_log(const CMatrix& m, const CMatrix& prev, CMatrix& out) {
  const Eigen::Index n = m.rows();
  const EigenSystem es = eig_normal(m, 1e-8, PhasePolicy::AsComputed);
  out = CMatrix::Zero(n, n);
  Eigen::Index k = 0;
  std::vector<std::vector<Eigen::Index>> groups;
  while (k < n) {
    std::vector<Eigen::Index> g = {k};
    while (k + 1 < n && std::abs(es.values(k + 1) - es.values(g.front())) <= 1e-6) g.push_back(++k);
    groups.push_back(g);
    ++k;
  }
  for (const auto& g : groups) {
    const auto c = static_cast<Eigen::Index>(g.size());
    CMatrix cols(n, c);
    for (Eigen::Index i = 0; i < c; ++i) cols.col(i) = es.vectors.col(g[static_cast<std::size_t>(i)]);
    const CMatrix s = -kI * (cols.adjoint() * prev * cols);
    Eigen::SelfAdjointEigenSolver<CMatrix> sa((s + s.adjoint()) / 2.0);
    const double base = std::arg(es.values(g.front()));
    for (Eigen::Index i = 0; i < c; ++i) {
      const double rho = sa.eigenvalues()(i);
      const double turns = std::round((rho - base) / (2.0 * std::numbers::pi));
      const double phi = base + 2.0 * std::numbers::pi * turns;
      if (std::abs(phi - rho) > 0.5) return false;
      const CVector v = cols * sa.eigenvectors().col(i);
      out += (kI * phi) * (v * v.adjoint());
    }
  }
  out = (out - out.adjoint()) / 2.0;
  return true;
}

class Driver {
 public:
  Driver(const SchemeContext& ctx, const SynthOptions& opts) : ctx_(ctx), opts_(opts) {}

  void run(const CMatrix& x, Factorization& f) {
    f_ = &f;
    descend(x, 0, "root");
  }

 private:
  const Scheme& scheme() const { return ctx_.scheme; }
  int p() const { return scheme().p(); }

  void emit(const CMatrix& generator, const CMatrix& matrix, const std::string& label,
            const std::string& path) {
    if (max_abs(CMatrix(matrix - identity(matrix.rows()))) <= opts_.prune_tol) {
      ++f_->pruned;
      return;
    }
    const Subspace& s = ctx_.subspaces.at(label);
    const double resid = s.residual(generator);
    f_->max_leaf_residual = std::max(f_->max_leaf_residual, resid);
    Leaf leaf;
    leaf.label = label;
    leaf.generator = s.project(generator);
    leaf.matrix = expm_skew(leaf.generator);
    leaf.path = path;
    leaf.residual = resid;
    f_->leaves.push_back(std::move(leaf));
  }

  void descend(const CMatrix& u, int level, const std::string& path) {
    try {
      step(u, level, path);
    } catch (const Error& e) {
      const std::string what = e.what();
      if (what.rfind("at ", 0) == 0) throw;
      throw Error(e.code(), "at " + path + " (level " + std::to_string(level) + "): " + what);
    }
  }

  void step(const CMatrix& u, int level, const std::string& path) {
    const std::string bottom = prefix_label(0, p());
    if (level == p()) {
      if (max_abs(CMatrix(u - identity(u.rows()))) <= opts_.prune_tol) {
        ++f_->pruned;
        return;
      }
      const CMatrix h = log_constrained(u, signs(scheme(), p(), 1), opts_.tol, opts_.seed);
      emit(h, u, bottom, path);
      return;
    }
    const std::string label = prefix_label(1U << level, level + 1);
    if (level == 0) {
      // Already in the fixed group: any K1 A K2 split would only add gauge.
      if (max_abs(CMatrix(raw_apply(scheme().involutions.front(), u) - u)) <= opts_.tol) {
        descend(u, 1, path + ".K1");
        return;
      }
      const KakResult r = kak_general(scheme().involutions.front(), u, opts_.tol);
      descend(r.k1, 1, path + ".K1");
      emit(r.log_a, r.a, label, path + ".A");
      descend(r.k2, 1, path + ".K2");
      return;
    }
    if (ctx_.subspaces.at(label).dim() == 0) {
      descend(u, level + 1, path);
      return;
    }
    CMatrix k, gen;
    kp_split(u, level, k, gen);
    descend(k, level + 1, path + ".K");
    emit(gen, expm_skew(gen), label, path + ".P");
  }

  // u = k * exp(gen) with gen in L_{0^level 1} and k in exp(L_{0^{level+1}}).
  void kp_split(const CMatrix& u, int level, CMatrix& k, CMatrix& gen) {
    const Involution& theta = scheme().involutions[static_cast<std::size_t>(level)];
    const auto cons_p = signs(scheme(), level + 1, -1);
    const auto cons_k = signs(scheme(), level + 1, 1);
    const CMatrix m = raw_apply(theta, u).adjoint() * u;
    try {
      gen = log_constrained(m, cons_p, opts_.tol, opts_.seed) / 2.0;
      k = u * expm_skew(-gen);
      log_constrained(k, cons_k, opts_.tol, opts_.seed);
      return;
    } catch (const Error&) {
      // Disconnected fixed group: fall through to the continuation below.
    }
    ++f_->continuations;
    const CMatrix xu = log_constrained(u, signs(scheme(), level, 1), opts_.tol, opts_.seed);
    CMatrix log_m = CMatrix::Zero(u.rows(), u.rows());
    double t = 0.0, dt = 0.125;
    while (t < 1.0) {
      const double t1 = std::min(1.0, t + dt);
      const CMatrix ut = expm_skew(t1 * xu);
      const CMatrix mt = raw_apply(theta, ut).adjoint() * ut;
      CMatrix next;
      if (lift_log(mt, log_m, next) && constraint_residual(next, cons_p) <= 1e-8) {
        log_m = next;
        t = t1;
        dt = std::min(0.25, dt * 1.5);
      } else {
        dt /= 2.0;
        if (dt < 1e-7) throw Error(ErrorCode::FactorizationFailed, "KP continuation stalled");
      }
    }
    gen = log_m / 2.0;
    k = u * expm_skew(-gen);
    log_constrained(k, cons_k, opts_.tol, opts_.seed);
  }

  const SchemeContext& ctx_;
  SynthOptions opts_;
  Factorization* f_ = nullptr;
};

}  // namespace

SchemeContext prepare(const Scheme& scheme) {
  SchemeContext ctx{scheme, build_grading(scheme.involutions), {}};
  for (int j = 0; j < scheme.p(); ++j) {
    Subspace s = prefix_subspace(ctx.grading, 1U << j, j + 1);
    ctx.subspaces.emplace(s.label, std::move(s));
  }
  Subspace bottom = prefix_subspace(ctx.grading, 0, scheme.p());
  ctx.subspaces.emplace(bottom.label, std::move(bottom));
  return ctx;
}

Factorization decompose(const CMatrix& x, const SchemeContext& ctx, const SynthOptions& opts) {
  if (x.rows() != ctx.scheme.n() || x.cols() != ctx.scheme.n())
    throw Error(ErrorCode::DimensionMismatch, "input dimension " + std::to_string(x.rows()) +
                                                  " does not match scheme dimension " +
                                                  std::to_string(ctx.scheme.n()));
  if (unitarity_residual(x) > 1e-8) throw Error(ErrorCode::NotUnitary, "input is not unitary");
  Factorization f;
  f.scheme = ctx.scheme.name;
  f.dims = ctx.scheme.dims;
  f.input_hash = hash_matrix(x);
  Driver(ctx, opts).run(x, f);
  CMatrix prod = identity(x.rows());
  for (const Leaf& l : f.leaves) prod = prod * l.matrix;
  f.reconstruction_error = max_abs(CMatrix(prod - x));
  return f;
}

Factorization decompose(const CMatrix& x, const Scheme& scheme, const SynthOptions& opts) {
  return decompose(x, prepare(scheme), opts);
}

CMatrix factor_generator(const CMatrix& u, const Subspace& s, double tol) {
  const CMatrix h = principal_log_unitary(u, tol);
  const CMatrix hp = s.project(h);
  const double r = max_abs(CMatrix(expm_skew(hp) - u));
  if (r > tol)
    throw Error(ErrorCode::LogOutsideSubspace,
                "logarithm leaves " + s.label + " (residual " + std::to_string(r) + ")");
  return hp;
}

AlgebraElement factor_to_exponential(const CMatrix& u, const Subspace& s, double tol) {
  return expand(factor_generator(u, s, tol), tol);
}

VerifyReport reconstruct_and_verify(const Factorization& f, const CMatrix& x,
                                    const std::map<std::string, Subspace>& subspaces,
                                    double reconstruction_tol, double leaf_tol) {
  VerifyReport rep;
  rep.reconstruction_tol = reconstruction_tol;
  rep.leaf_tol = leaf_tol;
  rep.leaf_count = f.leaves.size();
  bool leaves_ok = true;
  CMatrix prod = identity(x.rows());
  for (const Leaf& l : f.leaves) {
    if (l.generator.rows() != x.rows()) {
      rep.reconstruction_error = INFINITY;
      return rep;
    }
    prod = prod * expm_skew(l.generator);
    const auto it = subspaces.find(l.label);
    const double r = it == subspaces.end() ? INFINITY : it->second.residual(l.generator);
    rep.leaf_residuals.push_back(r);
    rep.leaf_norms.push_back(l.generator.norm());
    if (!(r <= leaf_tol)) leaves_ok = false;
  }
  rep.reconstruction_error = x.rows() == prod.rows() ? max_abs(CMatrix(prod - x)) : INFINITY;
  rep.pass = leaves_ok && rep.reconstruction_error <= reconstruction_tol;
  return rep;
}

std::string hash_matrix(const CMatrix& x) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](const char* s) {
    for (; *s; ++s) {
      h ^= static_cast<unsigned char>(*s);
      h *= 1099511628211ULL;
    }
  };
  char buf[64];
  std::snprintf(buf, sizeof buf, "%lldx%lld;", static_cast<long long>(x.rows()),
                static_cast<long long>(x.cols()));
  mix(buf);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g;", x(i, j).real(), x(i, j).imag());
      mix(buf);
    }
  }
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace cartan

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

#include "cartan/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cartan {

namespace {

CMatrix single(Pauli p) { return pauli_matrix(PauliString({p})); }

CMatrix kron_all(const std::vector<CMatrix>& parts) {
  CMatrix out = identity(1);
  for (const CMatrix& m : parts) out = kron(out, m);
  return out;
}

CMatrix sign_diag(Eigen::Index p, Eigen::Index n) {
  CMatrix z = identity(n);
  for (Eigen::Index k = p; k < n; ++k) z(k, k) = -1.0;
  return z;
}

// Y on every site except `site` (1-based), which carries `local`.
CMatrix y_string_except(int n_sites, int site, Pauli local) {
  std::vector<Pauli> letters(static_cast<std::size_t>(n_sites), Pauli::Y);
  letters[static_cast<std::size_t>(site - 1)] = local;
  return pauli_matrix(PauliString(letters));
}

Involution linear(CMatrix w, std::string tag) {
  Involution t;
  t.n = w.rows();
  t.conjugate_entries = false;
  t.w = std::move(w);
  t.tag = std::move(tag);
  return t;
}

Involution antiunitary(CMatrix w, std::string tag) {
  Involution t;
  t.n = w.rows();
  t.conjugate_entries = true;
  t.w = std::move(w);
  t.tag = std::move(tag);
  return t;
}

std::vector<PauliString> tensor_all(const std::vector<PauliString>& family, const std::string& tail) {
  const PauliString t = PauliString::parse(tail);
  std::vector<PauliString> out;
  out.reserve(family.size());
  for (const PauliString& s : family) out.push_back(s.tensor(t));
  return out;
}

}  // namespace

Eigen::Index Scheme::n() const {
  Eigen::Index n = 1;
  for (Eigen::Index d : dims) n *= d;
  return n;
}

Involution build_ccd(int n_sites) {
  if (n_sites < 1) throw Error(ErrorCode::BadParams, "CCD needs N >= 1");
  return antiunitary(pauli_matrix(PauliString(std::vector<Pauli>(n_sites, Pauli::Y))), "CCD");
}

Involution build_oed(const std::vector<LocalChoice>& local) {
  if (local.empty()) throw Error(ErrorCode::BadLocalChoice, "OED needs at least one subsystem");
  std::vector<CMatrix> parts;
  for (std::size_t j = 0; j < local.size(); ++j) {
    const CMatrix& w = local[j].w;
    const auto where = " (subsystem " + std::to_string(j + 1) + ")";
    if (w.rows() < 1 || w.rows() != w.cols() || !is_unitary(w, 1e-9))
      throw Error(ErrorCode::BadLocalChoice, "local W is not unitary" + where);
    if (local[j].type == LocalType::AI) {
      if (max_abs(CMatrix(w - w.transpose())) > 1e-9)
        throw Error(ErrorCode::BadLocalChoice, "local AI needs a symmetric W" + where);
    } else {
      if (w.rows() % 2 != 0)
        throw Error(ErrorCode::BadLocalChoice, "local AII needs even dimension" + where);
      if (max_abs(CMatrix(w + w.transpose())) > 1e-9)
        throw Error(ErrorCode::BadLocalChoice, "local AII needs an antisymmetric W" + where);
    }
    parts.push_back(w);
  }
  return antiunitary(kron_all(parts), "OED");
}

AiiiOed build_aiii_oed(const std::vector<std::pair<Eigen::Index, Eigen::Index>>& local_pq) {
  if (local_pq.empty()) throw Error(ErrorCode::BadParams, "AIII-OED needs at least one subsystem");
  std::vector<CMatrix> parts;
  for (const auto& [p, q] : local_pq) {
    if (p < 1 || q < 1) throw Error(ErrorCode::BadParams, "AIII-OED needs p_l, q_l >= 1");
    parts.push_back(sign_diag(p, p + q));
  }
  AiiiOed out;
  out.theta = linear(kron_all(parts), "AIII-OED");
  const Eigen::Index n = out.theta.n;
  std::vector<Eigen::Index> order;
  for (Eigen::Index k = 0; k < n; ++k)
    if (out.theta.w(k, k).real() > 0) order.push_back(k);
  out.p = static_cast<Eigen::Index>(order.size());
  for (Eigen::Index k = 0; k < n; ++k)
    if (out.theta.w(k, k).real() < 0) order.push_back(k);
  out.q = n - out.p;
  out.r = CMatrix::Zero(n, n);
  for (Eigen::Index c = 0; c < n; ++c) out.r(order[static_cast<std::size_t>(c)], c) = 1.0;
  return out;
}

Scheme build_kg_sequence(int n_sites) {
  if (n_sites < 1) throw Error(ErrorCode::BadParams, "KG sequence needs N >= 1");
  Scheme s;
  s.name = "kg";
  s.dims.assign(static_cast<std::size_t>(n_sites), 2);
  const Eigen::Index n = s.n();
  for (int site = 1; site <= n_sites; ++site) {
    for (Pauli letter : {Pauli::Z, Pauli::X}) {
      if (site == n_sites && letter == Pauli::X) break;
      const Eigen::Index left = Eigen::Index{1} << (site - 1);
      const CMatrix w = kron(kron(identity(left), single(letter)), identity(n / (2 * left)));
      s.involutions.push_back(linear(w, "KG"));
      s.hints.push_back({"AIII", {}});
    }
  }
  return s;
}

Scheme build_new_scheme(int n_sites) {
  if (n_sites < 1) throw Error(ErrorCode::BadParams, "new scheme needs N >= 1");
  Scheme s;
  s.name = "ccd-new";
  s.dims.assign(static_cast<std::size_t>(n_sites), 2);
  s.involutions.push_back(build_ccd(n_sites));
  for (int site = n_sites; site >= 1; --site) {
    // Local AI fixing i*sigma_z (W = sigma_x), then the sigma_x-fixing one.
    s.involutions.push_back(antiunitary(y_string_except(n_sites, site, Pauli::X), "OED"));
    if (site > 1)
      s.involutions.push_back(antiunitary(y_string_except(n_sites, site, Pauli::Z), "OED"));
  }
  for (int j = 0; j < 2 * n_sites; ++j) {
    const int m = n_sites - j / 2;
    std::string type;
    if (j % 2 == 0) {
      type = m % 2 == 0 ? "AI" : "AII";
    } else {
      type = m % 2 == 0 ? "DIII" : "CI";
    }
    s.hints.push_back({type, new_scheme_cartan(n_sites, j)});
  }
  return s;
}

std::vector<PauliString> new_scheme_cartan(int n_sites, int level) {
  if (n_sites < 1 || level < 0 || level >= 2 * n_sites)
    throw Error(ErrorCode::BadParams, "new_scheme_cartan: level out of range");
  const int k = level / 2;
  const int m = n_sites - k;
  std::string tail;
  if (level % 2 == 0) {
    if (k >= 1) tail = "Z" + std::string(static_cast<std::size_t>(k - 1), 'I');
    if (m % 2 == 0) return tensor_all(commuting_family(m / 2), tail);
    return tensor_all(commuting_family((m - 1) / 2), "I" + tail);
  }
  tail = "X" + std::string(static_cast<std::size_t>(k), 'I');
  if (m % 2 == 0) return tensor_all(commuting_family((m - 2) / 2), "I" + tail);
  return tensor_all(commuting_family((m - 1) / 2), tail);
}

PqSchedule default_bipartite_schedule(Eigen::Index n1, Eigen::Index n2) {
  PqSchedule out;
  for (int r = 1;; ++r) {
    const double scale = std::ldexp(1.0, r);
    const std::array<Eigen::Index, 2> pq = {
        std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::ceil(n1 / scale))),
        std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::ceil(n2 / scale)))};
    if (!out.empty() && out.back() == pq) break;
    out.push_back(pq);
  }
  return out;
}

Scheme build_bipartite_recursion(Eigen::Index n1, Eigen::Index n2, const PqSchedule& schedule) {
  if (n1 < 2 || n2 < 2) throw Error(ErrorCode::BadParams, "bipartite recursion needs n1, n2 >= 2");
  const PqSchedule rounds = schedule.empty() ? default_bipartite_schedule(n1, n2) : schedule;
  Scheme s;
  s.name = "bipartite";
  s.dims = {n1, n2};
  s.involutions.push_back(antiunitary(identity(n1 * n2), "AI-OED"));
  s.hints.push_back({"AI", {}});
  std::set<std::array<Eigen::Index, 2>> seen;
  for (const auto& [p1, p2] : rounds) {
    if (p1 < 1 || p2 < 1 || p1 >= n1 || p2 >= n2)
      throw Error(ErrorCode::ScheduleExhausted, "no valid index pair (p1=" + std::to_string(p1) +
                                                    ", p2=" + std::to_string(p2) + ")");
    if (!seen.insert({p1, p2}).second)
      throw Error(ErrorCode::ScheduleExhausted, "index pair repeats an earlier round");
    const AiiiOed oed = build_aiii_oed({{p1, n1 - p1}, {p2, n2 - p2}});
    s.involutions.push_back(oed.theta);
    s.hints.push_back({"AIII", {}});
    s.involutions.push_back(linear(kron(sign_diag(p1, n1), identity(n2)), "AIII"));
    s.hints.push_back({"AIII", {}});
  }
  return s;
}

double standardizer_residual(const Involution& theta, const CMatrix& f, CartanType kind,
                             Eigen::Index p) {
  const Involution moved = conjugate(theta, f.adjoint());
  if (moved.conjugate_entries != (kind != CartanType::AIII)) return INFINITY;
  const CMatrix target = standard(kind, theta.n, p).w;
  const Complex phase = (target.adjoint() * moved.w).trace() / static_cast<double>(theta.n);
  if (std::abs(phase) < 0.5) return INFINITY;
  return max_abs(CMatrix(moved.w - (phase / std::abs(phase)) * target));
}

Standardizer build_standardizer(const Involution& theta, double tol) {
  const Eigen::Index n = theta.n;
  Standardizer out;
  out.kind = theta.type(tol);
  if (out.kind == CartanType::AI) {
    // Takagi: W = Q D Q^T with Q real orthogonal, so F = Q D^{1/2}.
    const RMatrix q = simdiag_commuting_symmetric(theta.w.real(), theta.w.imag(), tol);
    const CMatrix qc = q.cast<Complex>();
    const CMatrix d = qc.transpose() * theta.w * qc;
    CMatrix root = CMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) root(k, k) = std::sqrt(d(k, k));
    out.f = qc * root;
  } else if (out.kind == CartanType::AII) {
    // T v = -W conj(v) is antiunitary with T^2 = -1; F = [V, T V].
    const Eigen::Index m = n / 2;
    CMatrix v(n, m), g(n, m);
    CMatrix chosen(n, 0);
    for (Eigen::Index j = 0; j < m; ++j) {
      Eigen::Index best = -1;
      double best_norm = 0.0;
      CVector best_vec;
      for (Eigen::Index c = 0; c < n; ++c) {
        CVector e = CVector::Zero(n);
        e(c) = 1.0;
        if (chosen.cols() > 0) e -= chosen * (chosen.adjoint() * e);
        const double nn = e.norm();
        if (nn > best_norm + 1e-12) {
          best_norm = nn;
          best = c;
          best_vec = e;
        }
      }
      if (best < 0 || best_norm < 1e-6)
        throw Error(ErrorCode::FactorizationFailed, "AII standardizer: no direction left");
      v.col(j) = best_vec / best_norm;
      g.col(j) = -theta.w * v.col(j).conjugate();
      CMatrix grown(n, chosen.cols() + 2);
      grown << chosen, v.col(j), g.col(j);
      chosen = grown;
    }
    out.f.resize(n, n);
    out.f << v, g;
  } else {
    const Complex c = (theta.w * theta.w).trace() / static_cast<double>(n);
    const CMatrix wn = theta.w / std::sqrt(c);
    const EigenSystem es = eig_normal(wn, tol);
    std::vector<Eigen::Index> order;
    for (Eigen::Index k = 0; k < n; ++k)
      if (es.values(k).real() > 0) order.push_back(k);
    out.p = static_cast<Eigen::Index>(order.size());
    for (Eigen::Index k = 0; k < n; ++k)
      if (es.values(k).real() <= 0) order.push_back(k);
    out.f.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) out.f.col(k) = es.vectors.col(order[static_cast<std::size_t>(k)]);
    if (out.p == 0 || out.p == n)
      throw Error(ErrorCode::FactorizationFailed, "linear involution is trivial (W proportional to 1)");
  }
  if (standardizer_residual(theta, out.f, out.kind, out.p) > std::max(tol, 1e-9) * 10)
    throw Error(ErrorCode::FactorizationFailed, "standardizer verification failed");
  return out;
}

Scheme build_scheme(const std::string& name, const std::vector<Eigen::Index>& dims,
                    const PqSchedule& schedule) {
  auto qubits = [&]() {
    for (Eigen::Index d : dims)
      if (d != 2) throw Error(ErrorCode::UnsupportedScheme, name + " needs qubit subsystems");
    if (dims.empty()) throw Error(ErrorCode::BadParams, name + " needs at least one qubit");
    return static_cast<int>(dims.size());
  };
  if (name == "ccd-new") return build_new_scheme(qubits());
  if (name == "kg") return build_kg_sequence(qubits());
  if (name == "bipartite") {
    if (dims.size() != 2) throw Error(ErrorCode::UnsupportedScheme, "bipartite needs exactly two subsystems");
    return build_bipartite_recursion(dims[0], dims[1], schedule);
  }
  throw Error(ErrorCode::UnsupportedScheme, "unknown scheme '" + name + "'");
}

}  // namespace cartan

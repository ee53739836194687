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

#include "cartan/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cartan {

using json = nlohmann::ordered_json;

namespace {

json entries_json(const CMatrix& m) {
  json e = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) e.push_back({m(i, j).real(), m(i, j).imag()});
  return e;
}

CMatrix entries_matrix(const json& entries, Eigen::Index n) {
  if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != n * n)
    throw Error(ErrorCode::InvalidInput, "matrix needs n*n entries");
  CMatrix m(n, n);
  for (Eigen::Index k = 0; k < n * n; ++k) {
    const json& z = entries[static_cast<std::size_t>(k)];
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
      throw Error(ErrorCode::InvalidInput, "matrix entries must be [re, im] pairs");
    m(k / n, k % n) = Complex(z[0].get<double>(), z[1].get<double>());
  }
  return m;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

bool is_qubit_register(const std::vector<Eigen::Index>& dims) {
  if (dims.empty()) return false;
  for (Eigen::Index d : dims)
    if (d != 2) return false;
  return true;
}

// W as a Pauli string with phase when it is one, otherwise as entries.
json w_reference(const CMatrix& w) {
  const Eigen::Index n = w.rows();
  if (n >= 2 && (n & (n - 1)) == 0) {
    int sites = 0;
    while ((Eigen::Index{1} << sites) < n) ++sites;
    for (const PauliString& s : all_pauli_strings(sites)) {
      const CMatrix p = pauli_matrix(s);
      const Complex phase = (p.adjoint() * w).trace() / static_cast<double>(n);
      if (std::abs(std::abs(phase) - 1.0) < 1e-12 && max_abs(CMatrix(w - phase * p)) < 1e-12)
        return {{"pauli", s.str()}, {"phase", {phase.real(), phase.imag()}}};
    }
  }
  const CMatrix off = w - CMatrix(w.diagonal().asDiagonal());
  if (max_abs(off) == 0.0 && max_abs(RMatrix(w.imag())) == 0.0) {
    json d = json::array();
    for (Eigen::Index k = 0; k < n; ++k) d.push_back(w(k, k).real());
    return {{"diag", d}};
  }
  return {{"n", n}, {"entries", entries_json(w)}};
}

}  // namespace

CMatrix parse_matrix(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("n") || !j.contains("entries") || !j["n"].is_number_integer())
    throw Error(ErrorCode::InvalidInput, "matrix file needs integer 'n' and 'entries'");
  const auto n = j["n"].get<Eigen::Index>();
  if (n < 1) throw Error(ErrorCode::InvalidInput, "matrix dimension must be positive");
  return entries_matrix(j["entries"], n);
}

std::string format_matrix(const CMatrix& m) {
  json j;
  j["n"] = m.rows();
  j["entries"] = entries_json(m);
  return j.dump() + "\n";
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::InvalidInput, "write failed for " + path.string());
}

CMatrix read_matrix(const std::filesystem::path& path) { return parse_matrix(read_text(path)); }

std::string serialize_factorization(const Factorization& f, const SerializeOptions& opts) {
  const bool qubits = is_qubit_register(f.dims);
  json j;
  j["scheme"] = f.scheme;
  j["dims"] = f.dims;
  if (!opts.pq_schedule.empty()) j["pq_schedule"] = opts.pq_schedule;
  j["input_hash"] = f.input_hash;
  j["tolerances"] = {{"tol", opts.tol}, {"prune_tol", opts.prune_tol}};
  json leaves = json::array();
  for (const Leaf& l : f.leaves) {
    json leaf;
    leaf["label"] = l.label;
    leaf["path"] = l.path;
    leaf["residual"] = l.residual;
    if (qubits) {
      json terms = json::array();
      for (const auto& [s, c] : expand(l.generator, 1e-8).terms)
        terms.push_back({{"pauli", s.str()}, {"coeff", c}});
      leaf["terms"] = terms;
    } else {
      leaf["generator"] = entries_json(l.generator);
    }
    if (opts.emit_matrices) leaf["matrix"] = entries_json(l.matrix);
    leaves.push_back(leaf);
  }
  j["leaves"] = leaves;
  j["pruned"] = f.pruned;
  j["diagnostics"] = {{"leaf_count", f.leaves.size()},
                      {"continuations", f.continuations},
                      {"max_leaf_residual", f.max_leaf_residual},
                      {"reconstruction_error", f.reconstruction_error}};
  if (opts.report != nullptr) {
    const VerifyReport& r = *opts.report;
    j["verification"] = {{"pass", r.pass},
                         {"reconstruction_error", r.reconstruction_error},
                         {"reconstruction_tol", r.reconstruction_tol},
                         {"leaf_tol", r.leaf_tol},
                         {"leaf_residuals", r.leaf_residuals},
                         {"leaf_norms", r.leaf_norms}};
  }
  return j.dump(2) + "\n";
}

Factorization parse_factorization(const std::string& text) {
  const json j = parse_json(text);
  Factorization f;
  try {
    f.scheme = j.at("scheme").get<std::string>();
    f.dims = j.at("dims").get<std::vector<Eigen::Index>>();
    f.input_hash = j.value("input_hash", "");
    f.pruned = j.value("pruned", 0);
    Eigen::Index n = 1;
    for (Eigen::Index d : f.dims) n *= d;
    for (const json& leaf : j.at("leaves")) {
      Leaf l;
      l.label = leaf.at("label").get<std::string>();
      l.path = leaf.value("path", "");
      l.residual = leaf.value("residual", 0.0);
      if (leaf.contains("terms")) {
        AlgebraElement e;
        e.n_sites = static_cast<int>(f.dims.size());
        for (const json& t : leaf["terms"])
          e.terms[PauliString::parse(t.at("pauli").get<std::string>())] += t.at("coeff").get<double>();
        l.generator = e.terms.empty() ? CMatrix::Zero(n, n) : assemble(e);
      } else {
        l.generator = entries_matrix(leaf.at("generator"), n);
      }
      l.matrix = expm_skew(l.generator);
      f.leaves.push_back(std::move(l));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed factorization: ") + e.what());
  }
  return f;
}

std::string scheme_catalog(const std::vector<Scheme>& schemes) {
  json out;
  json list = json::array();
  for (const Scheme& s : schemes) {
    json entry;
    entry["name"] = s.name;
    entry["dims"] = s.dims;
    entry["p"] = s.p();
    json levels = json::array();
    for (int j = 0; j < s.p(); ++j) {
      const Involution& th = s.involutions[static_cast<std::size_t>(j)];
      json lv;
      lv["kind"] = th.tag;
      lv["type"] = std::string(to_string(th.type()));
      lv["conjugate_entries"] = th.conjugate_entries;
      if (!th.conjugate_entries) {
        const auto [p, q] = th.pq();
        lv["p"] = p;
        lv["q"] = q;
      }
      lv["w"] = w_reference(th.w);
      if (j < static_cast<int>(s.hints.size())) {
        const LevelHint& h = s.hints[static_cast<std::size_t>(j)];
        lv["expected_type"] = h.expected_type;
        json cartan = json::array();
        for (const PauliString& c : h.cartan) cartan.push_back(c.str());
        lv["cartan"] = cartan;
      }
      levels.push_back(lv);
    }
    entry["levels"] = levels;
    list.push_back(entry);
  }
  out["schemes"] = list;
  return out.dump(2) + "\n";
}

std::string grading_report(const Scheme& scheme, const Grading& g, const RecursiveSequence& seq) {
  json out;
  out["scheme"] = scheme.name;
  out["dims"] = scheme.dims;
  out["p"] = g.p;
  json blocks = json::object();
  for (const Subspace& b : g.blocks) blocks[b.label] = b.dim();
  out["blocks"] = blocks;
  json levels = json::array();
  for (const LevelInfo& l : seq.levels) {
    levels.push_back({{"level", l.level},
                      {"whole", {{"label", l.whole.label}, {"dim", l.whole.dim()}}},
                      {"k", {{"label", l.k.label}, {"dim", l.k.dim()}}},
                      {"p", {{"label", l.p.label}, {"dim", l.p.dim()}}},
                      {"expected_type", l.expected_type},
                      {"rank", l.rank()},
                      {"center_dim", l.center.dim()},
                      {"cartan_residual", l.cartan_residual}});
  }
  out["levels"] = levels;
  out["bottom"] = {{"label", seq.bottom.label}, {"dim", seq.bottom.dim()}};
  return out.dump(2) + "\n";
}

}  // namespace cartan

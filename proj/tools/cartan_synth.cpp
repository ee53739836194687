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

// cartan_synth: factor a unitary into exponentials of graded generators.

#include <algorithm>
#include <array>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cartan/io.hpp"
#include "cartan/synth.hpp"

namespace {

struct JobConfig {
  std::string scheme;
  int qubits = 0;
  std::vector<Eigen::Index> dims;
  std::string pq_schedule;
  std::string input;
  std::string output;
  double tol = cartan::kDefaultTol;
  double prune_tol = 1e-10;
  bool verify = false;
  bool emit_matrices = false;
  std::string grading_report;
  std::string write_catalog;
};

// Rounds are "p1,p2" pairs separated by ';' or whitespace.
cartan::PqSchedule parse_schedule(std::string text) {
  std::replace(text.begin(), text.end(), ';', ' ');
  cartan::PqSchedule out;
  std::stringstream rounds(text);
  std::string round;
  while (rounds >> round) {
    std::array<Eigen::Index, 2> pq{};
    char comma = 0;
    std::stringstream in(round);
    if (!(in >> pq[0] >> comma >> pq[1]) || comma != ',' || !(in >> std::ws).eof())
      throw cartan::Error(cartan::ErrorCode::BadParams, "bad --pq-schedule round '" + round + "'");
    out.push_back(pq);
  }
  return out;
}

int run(const JobConfig& cfg) {
  using namespace cartan;
  if (!cfg.write_catalog.empty()) {
    write_text(cfg.write_catalog,
               scheme_catalog({build_new_scheme(3), build_kg_sequence(3),
                               build_bipartite_recursion(2, 3, {})}));
    if (cfg.scheme.empty()) return 0;
  }
  if (cfg.scheme.empty()) throw Error(ErrorCode::BadParams, "--scheme is required");
  std::vector<Eigen::Index> dims = cfg.dims;
  if (cfg.qubits > 0) {
    if (!dims.empty()) throw Error(ErrorCode::BadParams, "give either --qubits or --dims");
    dims.assign(static_cast<std::size_t>(cfg.qubits), 2);
  }
  if (dims.empty()) throw Error(ErrorCode::BadParams, "--qubits or --dims is required");
  const PqSchedule schedule = parse_schedule(cfg.pq_schedule);
  const Scheme scheme = build_scheme(cfg.scheme, dims, schedule);
  const SchemeContext ctx = prepare(scheme);

  if (!cfg.grading_report.empty()) {
    const RecursiveSequence seq = recursive_sequences(ctx.grading, scheme.hints);
    write_text(cfg.grading_report, grading_report(scheme, ctx.grading, seq));
  }
  if (cfg.input.empty()) {
    if (!cfg.grading_report.empty()) return 0;
    throw Error(ErrorCode::BadParams, "--input is required");
  }

  const CMatrix x = read_matrix(cfg.input);
  if (x.rows() != scheme.n())
    throw Error(ErrorCode::DimensionMismatch, "input is " + std::to_string(x.rows()) +
                                                  "-dimensional but the scheme acts on " +
                                                  std::to_string(scheme.n()));
  SynthOptions opts;
  opts.tol = cfg.tol;
  opts.prune_tol = cfg.prune_tol;
  const Factorization f = decompose(x, ctx, opts);

  SerializeOptions so;
  so.emit_matrices = cfg.emit_matrices;
  so.tol = cfg.tol;
  so.prune_tol = cfg.prune_tol;
  so.pq_schedule = schedule;
  std::string text = serialize_factorization(f, so);
  auto emit = [&](const std::string& t) {
    if (cfg.output.empty()) {
      std::cout << t;
    } else {
      write_text(cfg.output, t);
    }
  };
  if (!cfg.verify) {
    emit(text);
    return 0;
  }
  // Verify from the serialized form so the file itself is what gets checked.
  if (!cfg.output.empty()) write_text(cfg.output, text);
  const Factorization back = parse_factorization(cfg.output.empty() ? text : read_text(cfg.output));
  const VerifyReport rep = reconstruct_and_verify(back, x, ctx.subspaces, std::max(1e-8, 10 * cfg.tol),
                                                  std::max(1e-9, cfg.tol));
  so.report = &rep;
  emit(serialize_factorization(f, so));
  std::cerr << "verification " << (rep.pass ? "passed" : "FAILED") << ": " << rep.leaf_count
            << " leaves, reconstruction error " << rep.reconstruction_error << "\n";
  return rep.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Factor a unitary into exponentials of graded Lie-algebra generators"};
  JobConfig cfg;
  if (const char* env = std::getenv("CARTAN_SYNTH_TOL")) {
    try {
      cfg.tol = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "error: CARTAN_SYNTH_TOL is not a number\n";
      return 1;
    }
  }
  app.add_option("--scheme", cfg.scheme, "ccd-new, kg or bipartite");
  auto* q = app.add_option("--qubits", cfg.qubits, "number of qubits")->check(CLI::PositiveNumber);
  app.add_option("--dims", cfg.dims, "subsystem dimensions, e.g. --dims 2 3")->excludes(q);
  app.add_option("--pq-schedule", cfg.pq_schedule, "bipartite rounds, e.g. '1,2;1,1'");
  app.add_option("--input", cfg.input, "input matrix (JSON)");
  app.add_option("--output", cfg.output, "output file (default: stdout)");
  app.add_option("--tol", cfg.tol, "numerical tolerance (env CARTAN_SYNTH_TOL)");
  app.add_option("--prune-tol", cfg.prune_tol, "drop leaves within this distance of 1");
  app.add_flag("--verify", cfg.verify, "re-multiply the serialized leaves and check");
  app.add_flag("--emit-matrices", cfg.emit_matrices, "include leaf matrices in the output");
  app.add_option("--grading-report", cfg.grading_report, "write the grading report here");
  app.add_option("--write-catalog", cfg.write_catalog, "write the default scheme catalog here");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  try {
    return run(cfg);
  } catch (const cartan::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 1;
}

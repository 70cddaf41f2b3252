// Copyright 2026 The dirac-subdiv Authors
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

#pragma once

// `dirac_subdiv` command line: gen, embed, verify, sweep.
//
// Exit codes: 0 success, 1 verified failure (embedding not found, certificate
// rejected), 2 usage or input error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dirac_subdiv/dirac_subdiv.hpp"

namespace dirac::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return read_edge_list(in);
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

inline void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

inline void warn_small_degree(std::size_t n, std::size_t d, std::ostream& err) {
  if (n >= 2 && static_cast<double>(d) < std::log(static_cast<double>(n))) {
    err << "warning: d = " << d << " is below log n = " << std::log(static_cast<double>(n))
        << "; outside the regime where the embedding is guaranteed\n";
  }
}

struct GenArgs {
  std::string kind = "dirac";
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t C = 0;
  double epsilon = 0.25;
  std::uint64_t seed = 0;
  std::string out;
  std::string dot;
};

inline int run_gen(const GenArgs& a, std::ostream& out, std::ostream& err) {
  Graph g;
  if (a.kind == "dirac") {
    warn_small_degree(a.n, a.d, err);
    g = gen_dirac_host({a.n, a.d, a.C, a.epsilon, a.seed});
  } else if (a.kind == "regular") {
    warn_small_degree(a.n, a.d, err);
    g = gen_random_regular(a.n, a.d, a.seed);
  } else if (a.kind == "complete") {
    g = complete_graph(a.n);
  } else {
    std::size_t half = a.n;
    if (a.d > 0 && a.C > 0) {
      std::size_t total = a.C * a.d * a.n;
      if (total % 2 != 0) throw UsageError("two-clique host needs C*d*n even");
      half = total / 2;
    }
    g = gen_two_clique_extremal(half);
  }
  write_text(a.out, to_edge_list(g), out);
  if (!a.dot.empty()) {
    std::ostringstream dot;
    write_dot(dot, g);
    write_text(a.dot, dot.str(), out);
  }
  err << "generated " << a.kind << " graph: " << g.vertex_count() << " vertices, " << g.edge_count()
      << " edges, minimum degree " << min_degree(g).value << '\n';
  return kExitOk;
}

struct EmbedArgs {
  std::string host;
  std::string pattern;
  double epsilon = 0.25;
  std::size_t C = 12;
  std::uint64_t seed = 0;
  std::string out;
  std::string dot;
  bool flexible = false;
  std::size_t attempts = 5;
};

inline void print_stats(std::ostream& err, const EmbedReport& r) {
  err << "attempts: global=" << r.stats.global_attempts << " good_partition=" << r.stats.good_partition_attempts
      << " block_retries=" << r.stats.block_partition_retries
      << " block_level_max=" << r.stats.max_block_level_attempts << " hampath_restarts=" << r.stats.hampath_restarts
      << " exact_fallbacks=" << r.stats.exact_fallbacks << '\n';
}

inline int run_embed(const EmbedArgs& a, std::ostream& out, std::ostream& err) {
  Graph g = load_graph(a.host);
  Graph h = load_graph(a.pattern);
  if (h.vertex_count() >= 2) warn_small_degree(h.vertex_count(), h.degree(0), err);
  EmbedConfig cfg;
  cfg.epsilon = a.epsilon;
  cfg.C = a.C;
  cfg.seed = a.seed;
  cfg.strict_size = !a.flexible;
  cfg.global_attempts = a.attempts;
  EmbedReport report = embed_subdivision(g, h, cfg);
  print_stats(err, report);
  if (!report.success) {
    err << "embedding failed at stage " << report.failed_stage << ": " << report.diagnostic << '\n';
    return kExitFailure;
  }
  const auto& L = report.lengths;
  err << "embedding found: " << report.certificate->edge_paths.size() << " paths, lengths min=" << L.min
      << " max=" << L.max << " mean=" << L.mean << ", " << report.wall_ms << " ms\n";
  if (!a.out.empty()) write_text(a.out, serialize_certificate(*report.certificate), out);
  if (!a.dot.empty()) {
    DotStyle style;
    style.highlight_vertices = report.certificate->branch_map;
    for (const auto& [e, path] : report.certificate->edge_paths) {
      for (std::size_t k = 1; k < path.vertices.size(); ++k) {
        style.highlight_edges.emplace_back(path.vertices[k - 1], path.vertices[k]);
      }
    }
    style.only_highlighted = true;
    style.name = "subdivision";
    std::ostringstream dot;
    write_dot(dot, g, style);
    write_text(a.dot, dot.str(), out);
  }
  return kExitOk;
}

struct VerifyArgs {
  std::string host;
  std::string pattern;
  std::string cert;
  bool spanning = false;
};

inline int run_verify(const VerifyArgs& a, std::ostream& out) {
  Graph g = load_graph(a.host);
  Graph h = load_graph(a.pattern);
  std::ifstream in(a.cert);
  if (!in) throw UsageError("cannot open " + a.cert);
  SubdivisionCertificate cert;
  try {
    cert = parse_certificate(in);
  } catch (const std::invalid_argument& e) {
    throw UsageError(a.cert + ": " + e.what());
  }
  VerifyReport report = verify_certificate(g, h, cert, a.spanning);
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.passed) out << ": " << c.witness;
    out << '\n';
  }
  out << "spanning: " << (report.spanning ? "yes" : "no") << '\n';
  if (!report.length_stats.empty) {
    out << "path lengths: min=" << report.length_stats.min << " max=" << report.length_stats.max
        << " mean=" << report.length_stats.mean << '\n';
  }
  out << (report.passed() ? "certificate valid" : "certificate rejected") << '\n';
  return report.passed() ? kExitOk : kExitFailure;
}

struct SweepArgs {
  std::vector<std::size_t> ns{4};
  std::vector<std::size_t> ds{3};
  std::vector<std::size_t> Cs{12};
  std::vector<double> epsilons{0.25};
  std::size_t trials = 5;
  std::uint64_t seed = 0;
  std::string kind = "dirac";
  std::string out;
  bool flexible = false;
};

inline int run_sweep_command(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  SweepSpec spec;
  spec.ns = a.ns;
  spec.ds = a.ds;
  spec.Cs = a.Cs;
  spec.epsilons = a.epsilons;
  spec.trials = a.trials;
  spec.seed_base = a.seed;
  spec.host = parse_host_kind(a.kind);
  spec.embed.strict_size = !a.flexible;
  auto rows = run_sweep(spec);
  std::ostringstream csv;
  write_sweep_csv(csv, rows);
  write_text(a.out, csv.str(), out);
  write_sweep_table(err, rows);
  for (const auto& r : rows) {
    if (r.non_monotone) {
      err << "note: success rate at eps=" << r.epsilon << " exceeds a larger-eps cell (n=" << r.n << ", d=" << r.d
          << ", C=" << r.C << ")\n";
    }
  }
  return kExitOk;
}

}  // namespace detail

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Spanning subdivisions of regular graphs in dense hosts"};
  app.require_subcommand(1);

  detail::GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a host or pattern graph (edge-list format)");
  gen_cmd->add_option("--kind", gen.kind, "dirac | regular | complete | two-clique")
      ->check(CLI::IsMember({"dirac", "regular", "complete", "two-clique"}));
  gen_cmd->add_option("--n", gen.n, "pattern order (vertex count for regular/complete)")->required();
  gen_cmd->add_option("--d", gen.d, "pattern regularity");
  gen_cmd->add_option("--C", gen.C, "blow-up constant");
  gen_cmd->add_option("--epsilon", gen.epsilon, "degree slack");
  gen_cmd->add_option("--seed", gen.seed, "random seed");
  gen_cmd->add_option("--out", gen.out, "output file (default stdout)");
  gen_cmd->add_option("--dot", gen.dot, "also write Graphviz DOT here");

  detail::EmbedArgs emb;
  auto* embed_cmd = app.add_subcommand("embed", "embed a spanning subdivision of the pattern into the host");
  embed_cmd->add_option("--host", emb.host, "host edge list")->required();
  embed_cmd->add_option("--pattern", emb.pattern, "pattern edge list (d-regular)")->required();
  embed_cmd->add_option("--epsilon", emb.epsilon, "degree slack");
  embed_cmd->add_option("--C", emb.C, "blow-up constant");
  embed_cmd->add_option("--seed", emb.seed, "random seed");
  embed_cmd->add_option("--out", emb.out, "certificate output file");
  embed_cmd->add_option("--dot", emb.dot, "write the subdivision as Graphviz DOT");
  embed_cmd->add_option("--attempts", emb.attempts, "global Las Vegas attempts");
  embed_cmd->add_flag("--flexible", emb.flexible, "allow Cdn <= N <= Cdn + dn");

  detail::VerifyArgs ver;
  auto* verify_cmd = app.add_subcommand("verify", "check a subdivision certificate");
  verify_cmd->add_option("--host", ver.host, "host edge list")->required();
  verify_cmd->add_option("--pattern", ver.pattern, "pattern edge list")->required();
  verify_cmd->add_option("--cert", ver.cert, "certificate file")->required();
  verify_cmd->add_flag("--spanning", ver.spanning, "require every host vertex to be used");

  detail::SweepArgs sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "success rates over a parameter grid");
  sweep_cmd->add_option("--n", sw.ns, "pattern orders")->delimiter(',');
  sweep_cmd->add_option("--d", sw.ds, "regularities")->delimiter(',');
  sweep_cmd->add_option("--C", sw.Cs, "blow-up constants")->delimiter(',');
  sweep_cmd->add_option("--epsilon", sw.epsilons, "degree slacks")->delimiter(',');
  sweep_cmd->add_option("--trials", sw.trials, "trials per cell")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seed", sw.seed, "seed base");
  sweep_cmd->add_option("--kind", sw.kind, "host kind: dirac | complete | two-clique")
      ->check(CLI::IsMember({"dirac", "complete", "two-clique"}));
  sweep_cmd->add_option("--out", sw.out, "CSV output file (default stdout)");
  sweep_cmd->add_flag("--flexible", sw.flexible, "flexible host sizing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen_cmd) return detail::run_gen(gen, out, err);
    if (*embed_cmd) return detail::run_embed(emb, out, err);
    if (*verify_cmd) return detail::run_verify(ver, out);
    if (*sweep_cmd) return detail::run_sweep_command(sw, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const GenerationFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace dirac::cli

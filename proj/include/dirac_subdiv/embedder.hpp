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

// Spanning H-subdivisions in dense hosts.
//
// The host is first cut into a template: one group V_i per pattern vertex,
// and inside it a block V_{i,j} per pattern neighbor j.  Every block contains
// the branch vertex v_i and its own connector v_{i,j}; blocks of one group
// meet only in v_i, and the connectors of the two ends of a pattern edge are
// adjacent.  A Hamilton v_i,v_{i,j}-path through each block, glued across the
// connector edge with the reversed path from the other side, then gives a
// v_i,v_j-path per pattern edge, and together these use every host vertex.
//
//   B1  blocks cover V(G)
//   B2  blocks of different groups are disjoint
//   B3  V_{i,j} ∩ V_{i,k} = {v_i}
//   B4  |V_{i,j}| ∈ {C, C+1}            ({C, C+1, C+2} with flexible sizing)
//   B5  δ(G[V_{i,j}]) >= (|V_{i,j}|+1)/2  (Ore, so Hamiltonian path-connected)
//   B6  v_{i,j} v_{j,i} ∈ E(G)

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dirac_subdiv/certificate.hpp"
#include "dirac_subdiv/errors.hpp"
#include "dirac_subdiv/generators.hpp"
#include "dirac_subdiv/graph.hpp"
#include "dirac_subdiv/hampath.hpp"
#include "dirac_subdiv/partition.hpp"
#include "dirac_subdiv/random.hpp"
#include "dirac_subdiv/verifier.hpp"

namespace dirac {

struct EmbedConfig {
  double epsilon = 0.25;
  std::size_t C = 12;
  std::uint64_t seed = 0;
  std::size_t global_attempts = 5;
  std::size_t good_partition_attempts = 200;
  std::size_t block_level_attempts = 200;
  std::size_t block_partition_attempts = 50;  // per group, until B5 holds
  HamPathOptions hampath;
  bool strict_size = true;
};

/// (i, j) with ij ∈ E(H), read as "the j-side of group i".
using DirectedEdge = std::pair<Vertex, Vertex>;

struct Template {
  std::vector<Vertex> branch;                  // v_i
  std::map<DirectedEdge, Vertex> connectors;   // v_{i,j}
  std::map<DirectedEdge, VertexSet> blocks;    // V_{i,j}
};

struct Sizing {
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t C = 0;
  std::vector<std::size_t> group_sizes;
  std::vector<std::vector<std::size_t>> block_extra;  // per group, per neighbor slot
  bool flexible = false;
};

/// Group and block sizes for a host on `n_vertices` vertices.  Strict mode
/// needs N = Cdn.  Flexible mode accepts Cdn <= N <= Cdn + dn and hands the
/// surplus out one vertex per block, cycling over the groups.
inline Sizing plan_sizes(std::size_t n_vertices, const Graph& h, std::size_t C, bool strict) {
  Sizing s;
  s.n = h.vertex_count();
  if (s.n < 2) throw PreconditionError("pattern needs at least 2 vertices");
  s.d = h.degree(0);
  if (s.d < 1 || !is_regular(h, s.d)) throw PreconditionError("pattern must be d-regular with d >= 1");
  if (C < 3) throw PreconditionError("C must be at least 3");
  s.C = C;
  s.flexible = !strict;
  const std::size_t base = C * s.d * s.n;
  const std::size_t blocks = s.d * s.n;
  if (strict ? n_vertices != base : (n_vertices < base || n_vertices > base + blocks)) {
    throw PreconditionError("host has " + std::to_string(n_vertices) + " vertices; " +
                            (strict ? "strict sizing needs C*d*n = " + std::to_string(base)
                                    : "flexible sizing needs between " + std::to_string(base) +
                                          " and " + std::to_string(base + blocks)));
  }
  const std::size_t surplus = n_vertices - base;
  s.group_sizes.assign(s.n, C * s.d);
  s.block_extra.assign(s.n, std::vector<std::size_t>(s.d, 0));
  for (std::size_t slot = 0; slot < s.d; ++slot) {
    for (std::size_t i = 0; i < s.n; ++i) {
      if (slot * s.n + i < surplus) {
        s.block_extra[i][slot] = 1;
        ++s.group_sizes[i];
      }
    }
  }
  return s;
}

struct TemplateStats {
  std::size_t good_partition_attempts = 0;
  std::size_t block_partition_retries = 0;
  std::size_t max_block_level_attempts = 0;
};

struct TemplateOutcome {
  Template tmpl;
  TemplateStats stats;
};

/// Degree fraction kept by the whole-host partition and by the blocks.
inline double group_threshold(double epsilon) { return (1.0 + epsilon / 2.0) / 2.0; }
inline double block_threshold(double epsilon) { return (1.0 + epsilon / 4.0) / 2.0; }

namespace detail {

inline bool ore_block(const Graph& g, const VertexSet& block) {
  return 2 * min_degree_within(g, block).value >= block.size() + 1;
}

inline std::vector<Vertex> sorted_neighbors(const Graph& h, Vertex i) {
  auto nb = h.neighbors(i);
  return {nb.begin(), nb.end()};
}

}  // namespace detail

/// Builds a template satisfying B1-B6 (verified before returning).  Throws
/// PreconditionError for inputs outside the construction's regime and
/// BudgetExhausted / ConnectorStarved when a randomized stage gives up.
/// `progress` receives the attempt counters as they accrue, so they survive
/// a throw.
inline TemplateOutcome build_template(const Graph& g, const Graph& h, const EmbedConfig& cfg,
                                      TemplateStats& progress);

inline TemplateOutcome build_template(const Graph& g, const Graph& h, const EmbedConfig& cfg) {
  TemplateStats progress;
  return build_template(g, h, cfg, progress);
}

struct TemplateCheck {
  bool ok = true;
  std::string label;  // "shape" or "B1".."B6"
  std::string witness;
};

inline TemplateCheck check_template(const Graph& g, const Graph& h, const Template& t, std::size_t C,
                                    bool flexible = false) {
  auto fail = [](std::string label, std::string witness) {
    return TemplateCheck{false, std::move(label), std::move(witness)};
  };
  auto pair_name = [](DirectedEdge e) {
    return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
  };
  const std::size_t n_host = g.vertex_count();
  if (t.branch.size() != h.vertex_count()) return fail("shape", "branch vertex count differs from |V(H)|");
  std::vector<Vertex> specials(t.branch.begin(), t.branch.end());
  for (Vertex i = 0; i < h.vertex_count(); ++i) {
    for (Vertex j : h.neighbors(i)) {
      auto c = t.connectors.find({i, j});
      auto b = t.blocks.find({i, j});
      if (c == t.connectors.end() || b == t.blocks.end()) {
        return fail("shape", "no connector/block for " + pair_name({i, j}));
      }
      b->second.validate_for(g);
      if (!b->second.contains(t.branch[i]) || !b->second.contains(c->second)) {
        return fail("shape", "block " + pair_name({i, j}) + " misses its branch or connector vertex");
      }
      specials.push_back(c->second);
    }
  }
  if (t.connectors.size() != 2 * h.edge_count() || t.blocks.size() != 2 * h.edge_count()) {
    return fail("shape", "template has entries for non-edges of H");
  }
  std::sort(specials.begin(), specials.end());
  if (std::adjacent_find(specials.begin(), specials.end()) != specials.end() ||
      (!specials.empty() && specials.back() >= n_host)) {
    return fail("shape", "branch and connector vertices are not distinct host vertices");
  }

  // B1
  std::vector<bool> covered(n_host, false);
  for (const auto& [key, block] : t.blocks) {
    for (Vertex v : block) covered[v] = true;
  }
  if (auto it = std::find(covered.begin(), covered.end(), false); it != covered.end()) {
    return fail("B1", "host vertex " + std::to_string(it - covered.begin()) + " is in no block");
  }
  // B2
  std::vector<std::size_t> group_of(n_host, SIZE_MAX);
  for (const auto& [key, block] : t.blocks) {
    for (Vertex v : block) {
      if (group_of[v] != SIZE_MAX && group_of[v] != key.first) {
        return fail("B2", "vertex " + std::to_string(v) + " lies in groups " + std::to_string(group_of[v]) +
                              " and " + std::to_string(key.first));
      }
      group_of[v] = key.first;
    }
  }
  // B3
  for (Vertex i = 0; i < h.vertex_count(); ++i) {
    std::vector<std::size_t> hits(n_host, 0);
    for (Vertex j : h.neighbors(i)) {
      for (Vertex v : t.blocks.at({i, j})) {
        if (v != t.branch[i] && ++hits[v] > 1) {
          return fail("B3", "vertex " + std::to_string(v) + " is shared by two blocks of group " + std::to_string(i));
        }
      }
    }
  }
  // B4
  const std::size_t max_size = C + (flexible ? 2 : 1);
  for (const auto& [key, block] : t.blocks) {
    if (block.size() < C || block.size() > max_size) {
      return fail("B4", "block " + pair_name(key) + " has size " + std::to_string(block.size()));
    }
  }
  // B5
  for (const auto& [key, block] : t.blocks) {
    if (!detail::ore_block(g, block)) {
      return fail("B5", "block " + pair_name(key) + " has minimum degree " +
                            std::to_string(min_degree_within(g, block).value) + " < (|V|+1)/2");
    }
  }
  // B6
  for (const auto& [key, v] : t.connectors) {
    if (!g.adjacent(v, t.connectors.at({key.second, key.first}))) {
      return fail("B6", "connectors of " + pair_name(key) + " are not adjacent");
    }
  }
  return {};
}

inline TemplateOutcome build_template(const Graph& g, const Graph& h, const EmbedConfig& cfg,
                                      TemplateStats& progress) {
  const std::size_t n_host = g.vertex_count();
  const Sizing sizing = plan_sizes(n_host, h, cfg.C, cfg.strict_size);
  if (!(cfg.epsilon > 0.0)) throw PreconditionError("epsilon must be positive");
  const std::size_t needed = required_min_degree(cfg.epsilon, n_host);
  if (min_degree(g).value < needed) {
    throw PreconditionError("host minimum degree " + std::to_string(min_degree(g).value) +
                            " is below (1+eps)N/2 = " + std::to_string(needed));
  }

  TemplateOutcome out;
  Template& t = out.tmpl;

  // Stage 1: whole-host partition, one group per pattern vertex.
  const double alpha1 = (1.0 + cfg.epsilon) / 2.0;
  const double theta1 = group_threshold(cfg.epsilon);
  auto stage1 = good_partition(g, h, alpha1, alpha1 - theta1, cfg.good_partition_attempts,
                               derive_seed(cfg.seed, {1}),
                               sizing.flexible ? std::span<const std::size_t>(sizing.group_sizes)
                                               : std::span<const std::size_t>{});
  out.stats.good_partition_attempts = stage1.attempts;
  progress = out.stats;
  const auto& groups = stage1.partition.parts;

  // Stage 2: connectors across every pattern edge, then branch vertices.
  std::vector<std::size_t> inner_degree(n_host, 0);
  for (const auto& part : groups) {
    for (Vertex v : part) inner_degree[v] = degree_into(g, v, part);
  }
  auto by_inner_degree = [&](const VertexSet& part) {
    std::vector<Vertex> order(part.begin(), part.end());
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return inner_degree[a] > inner_degree[b]; });
    return order;
  };
  std::vector<std::vector<Vertex>> ranked;
  for (const auto& part : groups) ranked.push_back(by_inner_degree(part));

  std::vector<bool> used(n_host, false);
  for (auto [i, j] : h.edges()) {
    bool found = false;
    for (Vertex u : ranked[i]) {
      if (used[u]) continue;
      for (Vertex v : ranked[j]) {
        if (used[v] || !g.adjacent(u, v)) continue;
        t.connectors[{i, j}] = u;
        t.connectors[{j, i}] = v;
        used[u] = used[v] = true;
        found = true;
        break;
      }
      if (found) break;
    }
    if (!found) throw ConnectorStarved(i, j);
  }
  t.branch.resize(sizing.n);
  for (Vertex i = 0; i < sizing.n; ++i) {
    auto it = std::find_if(ranked[i].begin(), ranked[i].end(), [&](Vertex v) { return !used[v]; });
    if (it == ranked[i].end()) throw PreconditionError("group " + std::to_string(i) + " has no room for a branch vertex");
    t.branch[i] = *it;
    used[*it] = true;
  }

  // Stage 3: blocks inside each group, re-drawn until every block is Ore-dense.
  // The last block has C-2 vertices, so its inner degree is at most C-3; the
  // threshold is capped there for small C.
  const double theta2 = std::min(block_threshold(cfg.epsilon),
                                 static_cast<double>(cfg.C - 3) / static_cast<double>(cfg.C));
  for (Vertex i = 0; i < sizing.n; ++i) {
    const VertexSet& group = groups[i];
    const std::vector<Vertex> nbrs = detail::sorted_neighbors(h, i);
    std::vector<Vertex> conns;
    for (Vertex j : nbrs) conns.push_back(t.connectors.at({i, j}));
    const double alpha2 = static_cast<double>(min_degree_within(g, group).value) /
                          static_cast<double>(group.size());
    BlockParams params{alpha2, std::max(0.0, alpha2 - theta2), cfg.block_level_attempts};

    std::string last_failure = "blocks not Ore-dense";
    bool placed = false;
    for (std::size_t attempt = 1; attempt <= cfg.block_partition_attempts && !placed; ++attempt) {
      if (attempt > 1) progress.block_partition_retries = ++out.stats.block_partition_retries;
      BlockPartitionOutcome bp;
      try {
        bp = block_partition(g, group, t.branch[i], conns, params, derive_seed(cfg.seed, {2, i, attempt}),
                             sizing.block_extra[i]);
      } catch (const BudgetExhausted& e) {
        last_failure = e.detail();
        continue;
      }
      out.stats.max_block_level_attempts = std::max(out.stats.max_block_level_attempts, bp.max_level_attempts);
      progress.max_block_level_attempts = out.stats.max_block_level_attempts;
      std::vector<VertexSet> blocks;
      for (std::size_t l = 0; l < nbrs.size(); ++l) {
        std::vector<Vertex> members(bp.partition.blocks[l].begin(), bp.partition.blocks[l].end());
        members.push_back(t.branch[i]);
        members.push_back(conns[l]);
        blocks.emplace_back(std::move(members));
      }
      if (!std::all_of(blocks.begin(), blocks.end(), [&](const VertexSet& b) { return detail::ore_block(g, b); })) {
        continue;
      }
      for (std::size_t l = 0; l < nbrs.size(); ++l) t.blocks[{i, nbrs[l]}] = std::move(blocks[l]);
      placed = true;
    }
    if (!placed) {
      throw BudgetExhausted("block_partition", cfg.block_partition_attempts,
                            "group " + std::to_string(i) + ": " + last_failure);
    }
  }

  TemplateCheck check = check_template(g, h, t, cfg.C, sizing.flexible);
  if (!check.ok) throw std::logic_error("template violates " + check.label + ": " + check.witness);
  return out;
}

/// Q = p_ij followed by p_ji reversed.  p_ij ends at v_{i,j}, p_ji at v_{j,i};
/// those two must be adjacent in g and the paths disjoint.
inline PathRecord glue(const Graph& g, const PathRecord& p_ij, const PathRecord& p_ji) {
  if (p_ij.vertices.size() < 2 || p_ji.vertices.size() < 2) {
    throw std::invalid_argument("glue: each side must contain its branch and connector vertex");
  }
  if (!g.adjacent(p_ij.back(), p_ji.back())) {
    throw std::invalid_argument("glue: connector vertices " + std::to_string(p_ij.back()) + " and " +
                                std::to_string(p_ji.back()) + " are not adjacent");
  }
  std::vector<Vertex> a = p_ij.vertices;
  std::vector<Vertex> b = p_ji.vertices;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<Vertex> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  if (!common.empty()) throw std::invalid_argument("glue: paths overlap at vertex " + std::to_string(common.front()));

  PathRecord q = p_ij;
  q.vertices.insert(q.vertices.end(), p_ji.vertices.rbegin(), p_ji.vertices.rend());
  return q;
}

struct EmbedStats {
  std::size_t global_attempts = 0;
  std::size_t good_partition_attempts = 0;
  std::size_t block_partition_retries = 0;
  std::size_t max_block_level_attempts = 0;
  std::size_t hampath_restarts = 0;
  std::size_t exact_fallbacks = 0;
};

struct EmbedReport {
  bool success = false;
  std::string failed_stage;  // precondition, good_partition, connectors, block_partition, hampath, verify
  std::string diagnostic;
  EmbedStats stats;
  LengthStats lengths;
  double wall_ms = 0.0;
  std::optional<SubdivisionCertificate> certificate;
};

namespace detail {

// One pass of the pipeline with a fixed seed.  Returns the certificate or
// fills `stage` / `why`.
inline std::optional<SubdivisionCertificate> embed_once(const Graph& g, const Graph& h, const EmbedConfig& cfg,
                                                        EmbedStats& stats, std::string& stage, std::string& why) {
  TemplateOutcome built;
  TemplateStats progress;
  auto record = [&] {
    stats.good_partition_attempts += progress.good_partition_attempts;
    stats.block_partition_retries += progress.block_partition_retries;
    stats.max_block_level_attempts = std::max(stats.max_block_level_attempts, progress.max_block_level_attempts);
  };
  try {
    built = build_template(g, h, cfg, progress);
  } catch (const ConnectorStarved& e) {
    record();
    stage = "connectors";
    why = e.what();
    return std::nullopt;
  } catch (const BudgetExhausted& e) {
    record();
    if (e.stage() == "good_partition") stats.good_partition_attempts += e.attempts();
    stage = e.stage();
    why = "gave up after " + std::to_string(e.attempts()) + " attempts; " + e.detail();
    return std::nullopt;
  }
  record();
  const Template& t = built.tmpl;

  std::map<DirectedEdge, PathRecord> halves;
  for (const auto& [key, block] : t.blocks) {
    InducedSubgraph local = induced(g, block);
    Vertex x = local.to_local(t.branch[key.first]);
    Vertex y = local.to_local(t.connectors.at(key));
    HamPathResult found =
        hamilton_path_between(local.graph, x, y, cfg.hampath, derive_seed(cfg.seed, {3, key.first, key.second}));
    stats.hampath_restarts += found.restarts_used;
    if (found.method == HamPathResult::Method::kExact) ++stats.exact_fallbacks;
    if (!found) {
      stage = "hampath";
      why = "block (" + std::to_string(key.first) + "," + std::to_string(key.second) + "): " + found.failure;
      return std::nullopt;
    }
    PathRecord host_path;
    for (Vertex v : found.path->vertices) host_path.vertices.push_back(local.to_host[v]);
    halves.emplace(key, std::move(host_path));
  }

  SubdivisionCertificate cert;
  cert.pattern = h;
  cert.host_vertices = g.vertex_count();
  cert.branch_map = t.branch;
  for (auto [i, j] : h.edges()) {
    cert.edge_paths.emplace(Edge{i, j}, glue(g, halves.at({i, j}), halves.at({j, i})));
  }
  return cert;
}

}  // namespace detail

/// Full pipeline with global retries.  A report with success == true always
/// carries a certificate that verify_certificate accepted as spanning.
inline EmbedReport embed_subdivision(const Graph& g, const Graph& h, const EmbedConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  EmbedReport report;
  auto finish = [&]() -> EmbedReport {
    report.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return std::move(report);
  };

  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(cfg.global_attempts, 1); ++attempt) {
    report.stats.global_attempts = attempt + 1;
    EmbedConfig round = cfg;
    round.seed = derive_seed(cfg.seed, {0xe3b, attempt});
    std::optional<SubdivisionCertificate> cert;
    try {
      cert = detail::embed_once(g, h, round, report.stats, report.failed_stage, report.diagnostic);
    } catch (const std::invalid_argument& e) {  // includes PreconditionError
      report.failed_stage = "precondition";
      report.diagnostic = e.what();
      return finish();
    }
    if (!cert) continue;

    VerifyReport verdict = verify_certificate(g, h, *cert, true);
    if (!verdict.passed()) {
      report.failed_stage = "verify";
      std::ostringstream why;
      for (const auto& name : verdict.failed()) why << name << ": " << verdict.check(name).witness << "; ";
      report.diagnostic = why.str();
      continue;
    }
    report.success = true;
    report.failed_stage.clear();
    report.diagnostic.clear();
    report.lengths = verdict.length_stats;
    report.certificate = std::move(cert);
    return finish();
  }
  return finish();
}

}  // namespace dirac

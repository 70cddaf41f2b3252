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

// Independent certificate checking.  Nothing produced by the embedder is
// trusted: the verifier only needs the host, the pattern and the certificate.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "dirac_subdiv/certificate.hpp"
#include "dirac_subdiv/graph.hpp"

namespace dirac {

struct LengthStats {
  bool empty = true;
  std::size_t min = 0;
  std::size_t max = 0;
  double mean = 0.0;
  std::vector<std::size_t> lengths;  // sorted multiset of edge-lengths
};

inline LengthStats path_length_stats(const SubdivisionCertificate& cert) {
  LengthStats stats;
  for (const auto& [edge, path] : cert.edge_paths) stats.lengths.push_back(path.edge_length());
  if (stats.lengths.empty()) return stats;
  std::sort(stats.lengths.begin(), stats.lengths.end());
  stats.empty = false;
  stats.min = stats.lengths.front();
  stats.max = stats.lengths.back();
  stats.mean = static_cast<double>(std::accumulate(stats.lengths.begin(), stats.lengths.end(), std::size_t{0})) /
               static_cast<double>(stats.lengths.size());
  return stats;
}

// Check names, in report order.  "shape" compares the certificate against the
// given host and pattern; the other six are the subdivision properties.
inline constexpr std::string_view kCheckShape = "shape";
inline constexpr std::string_view kCheckBranchInjective = "branch_injective";
inline constexpr std::string_view kCheckEndpoints = "endpoints";
inline constexpr std::string_view kCheckHostEdges = "host_edges";
inline constexpr std::string_view kCheckNoRepeats = "no_repeats";
inline constexpr std::string_view kCheckInteriorsDisjoint = "interiors_disjoint";
inline constexpr std::string_view kCheckSpanning = "spanning";

struct VerifyReport {
  struct Check {
    std::string name;
    bool passed = true;
    std::string witness;
  };

  std::vector<Check> checks;
  bool spanning = false;
  LengthStats length_stats;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }

  const Check& check(std::string_view name) const {
    for (const auto& c : checks) {
      if (c.name == name) return c;
    }
    throw std::out_of_range("no check named " + std::string(name));
  }

  std::vector<std::string> failed() const {
    std::vector<std::string> out;
    for (const auto& c : checks) {
      if (!c.passed) out.push_back(c.name);
    }
    return out;
  }
};

inline VerifyReport verify_certificate(const Graph& g, const Graph& h, const SubdivisionCertificate& cert,
                                       bool require_spanning) {
  VerifyReport report;
  const std::size_t n_host = g.vertex_count();
  auto in_host = [&](Vertex v) { return v < n_host; };
  auto add = [&](std::string_view name) -> VerifyReport::Check& {
    report.checks.push_back({std::string(name), true, {}});
    return report.checks.back();
  };
  auto fail = [](VerifyReport::Check& c, std::string witness) {
    if (c.passed) c.witness = std::move(witness);
    c.passed = false;
  };
  auto vtx = [](Vertex v) { return std::to_string(v); };
  auto edge_name = [](Edge e) { return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")"; };

  {
    auto& c = add(kCheckShape);
    if (cert.host_vertices != n_host) {
      fail(c, "certificate is for " + std::to_string(cert.host_vertices) + " host vertices, host has " +
                  std::to_string(n_host));
    } else if (!(cert.pattern == h)) {
      fail(c, "certificate pattern differs from the given pattern");
    }
  }

  // (a)
  std::vector<bool> is_branch(n_host, false);
  {
    auto& c = add(kCheckBranchInjective);
    if (cert.branch_map.size() != h.vertex_count()) {
      fail(c, "branch map has " + std::to_string(cert.branch_map.size()) + " entries for " +
                  std::to_string(h.vertex_count()) + " pattern vertices");
    }
    for (std::size_t i = 0; i < cert.branch_map.size(); ++i) {
      Vertex v = cert.branch_map[i];
      if (!in_host(v)) {
        fail(c, "pattern vertex " + std::to_string(i) + " maps outside the host");
      } else if (is_branch[v]) {
        fail(c, "host vertex " + vtx(v) + " is the image of two pattern vertices");
      } else {
        is_branch[v] = true;
      }
    }
  }

  // (b)
  {
    auto& c = add(kCheckEndpoints);
    for (auto e : h.edges()) {
      auto it = cert.edge_paths.find(e);
      if (it == cert.edge_paths.end()) {
        fail(c, "pattern edge " + edge_name(e) + " has no path");
        continue;
      }
      const auto& p = it->second.vertices;
      if (e.first >= cert.branch_map.size() || e.second >= cert.branch_map.size()) {
        fail(c, "pattern edge " + edge_name(e) + " has no branch vertices");
      } else if (p.size() < 2 || p.front() != cert.branch_map[e.first] || p.back() != cert.branch_map[e.second]) {
        fail(c, "path for " + edge_name(e) + " does not run between its branch vertices");
      }
    }
    for (const auto& [e, path] : cert.edge_paths) {
      if (e.first >= h.vertex_count() || e.second >= h.vertex_count() || !h.adjacent(e.first, e.second)) {
        fail(c, "path given for non-edge " + edge_name(e) + " of the pattern");
      }
    }
  }

  // (c)
  {
    auto& c = add(kCheckHostEdges);
    for (const auto& [e, path] : cert.edge_paths) {
      const auto& p = path.vertices;
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (!in_host(p[k])) {
          fail(c, "path " + edge_name(e) + " uses vertex " + vtx(p[k]) + " outside the host");
        } else if (k > 0 && in_host(p[k - 1]) && !g.adjacent(p[k - 1], p[k])) {
          fail(c, "path " + edge_name(e) + " steps along non-edge " + edge_name(normalized(p[k - 1], p[k])));
        }
      }
    }
  }

  // (d)
  {
    auto& c = add(kCheckNoRepeats);
    for (const auto& [e, path] : cert.edge_paths) {
      std::vector<Vertex> sorted = path.vertices;
      std::sort(sorted.begin(), sorted.end());
      auto dup = std::adjacent_find(sorted.begin(), sorted.end());
      if (dup != sorted.end()) fail(c, "path " + edge_name(e) + " repeats vertex " + vtx(*dup));
    }
  }

  // (e)
  std::vector<bool> covered(n_host, false);
  {
    auto& c = add(kCheckInteriorsDisjoint);
    std::vector<const Edge*> owner(n_host, nullptr);
    for (const auto& [e, path] : cert.edge_paths) {
      const auto& p = path.vertices;
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (!in_host(p[k])) continue;
        covered[p[k]] = true;
        if (k == 0 || k + 1 == p.size()) continue;
        Vertex v = p[k];
        if (is_branch[v]) {
          fail(c, "branch vertex " + vtx(v) + " is interior to path " + edge_name(e));
        } else if (owner[v] != nullptr && *owner[v] != e) {
          fail(c, "vertex " + vtx(v) + " is interior to paths " + edge_name(*owner[v]) + " and " + edge_name(e));
        } else {
          owner[v] = &e;
        }
      }
    }
    for (Vertex v : cert.branch_map) {
      if (in_host(v)) covered[v] = true;
    }
  }

  // (f)
  {
    auto& c = add(kCheckSpanning);
    auto missing = std::find(covered.begin(), covered.end(), false);
    report.spanning = missing == covered.end();
    if (require_spanning && !report.spanning) {
      fail(c, "host vertex " + std::to_string(missing - covered.begin()) + " is not used");
    }
  }

  report.length_stats = path_length_stats(cert);
  return report;
}

}  // namespace dirac

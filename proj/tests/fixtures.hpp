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

// Small hand-built graphs and certificates shared by the test binaries.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "dirac_subdiv/dirac_subdiv.hpp"

namespace dirac::testing {

inline Graph cycle_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.push_back(normalized(v, static_cast<Vertex>((v + 1) % n)));
  return Graph::from_edges(n, edges);
}

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edges(n, edges);
}

inline Graph complete_bipartite(std::size_t a, std::size_t b) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < a; ++u) {
    for (Vertex v = 0; v < b; ++v) edges.emplace_back(u, static_cast<Vertex>(a + v));
  }
  return Graph::from_edges(a + b, edges);
}

inline Graph remove_edge(const Graph& g, Edge drop) {
  std::vector<Edge> kept;
  for (auto e : g.edges()) {
    if (e != normalized(drop.first, drop.second)) kept.push_back(e);
  }
  return Graph::from_edges(g.vertex_count(), kept);
}

// Triangle pattern embedded in a 9-vertex host:
//   (0,1): 0-3-4-1   (0,2): 0-5-6-2   (1,2): 1-7-8-2
// plus spare host edges 3-5, 3-6, 2-7 that the mutation tests use.
struct TriangleFixture {
  Graph host;
  Graph pattern;
  SubdivisionCertificate cert;
};

inline TriangleFixture triangle_fixture() {
  TriangleFixture f;
  std::vector<Edge> edges{{0, 3}, {3, 4}, {1, 4}, {0, 5}, {5, 6}, {2, 6}, {1, 7},
                          {7, 8}, {2, 8}, {3, 5}, {3, 6}, {2, 7}};
  f.host = Graph::from_edges(9, edges);
  f.pattern = complete_graph(3);
  f.cert.pattern = f.pattern;
  f.cert.host_vertices = 9;
  f.cert.branch_map = {0, 1, 2};
  f.cert.edge_paths[{0, 1}] = PathRecord{{0, 3, 4, 1}};
  f.cert.edge_paths[{0, 2}] = PathRecord{{0, 5, 6, 2}};
  f.cert.edge_paths[{1, 2}] = PathRecord{{1, 7, 8, 2}};
  return f;
}

// Two disjoint pattern edges {0,1}, {2,3} in the host 0-1, 0-3, 2-3.
inline TriangleFixture matching_fixture() {
  TriangleFixture f;
  std::vector<Edge> edges{{0, 1}, {0, 3}, {2, 3}};
  f.host = Graph::from_edges(4, edges);
  std::vector<Edge> pattern_edges{{0, 1}, {2, 3}};
  f.pattern = Graph::from_edges(4, pattern_edges);
  f.cert.pattern = f.pattern;
  f.cert.host_vertices = 4;
  f.cert.branch_map = {0, 1, 2, 3};
  f.cert.edge_paths[{0, 1}] = PathRecord{{0, 1}};
  f.cert.edge_paths[{2, 3}] = PathRecord{{2, 3}};
  return f;
}

// Empirical frequency of |d(v, S) - E| >= t where S is the first of four
// equal parts of a uniform partition of V(G) \ {v}, G = G(4n + 1, 1/2), v = 0.
inline double concentration_frequency(std::size_t n, double t, std::size_t draws, std::uint64_t seed) {
  const std::size_t population = 4 * n;
  Graph g = gen_erdos_renyi(population + 1, 0.5, derive_seed(seed, {1}));
  const double expected = static_cast<double>(g.degree(0)) * static_cast<double>(n) /
                          static_cast<double>(population);
  std::vector<Vertex> pool(population);
  std::iota(pool.begin(), pool.end(), Vertex{1});
  Rng rng(derive_seed(seed, {2}));
  std::size_t hits = 0;
  for (std::size_t k = 0; k < draws; ++k) {
    rng.shuffle(std::span<Vertex>(pool));
    std::size_t x = 0;
    for (std::size_t i = 0; i < n; ++i) x += g.adjacent(0, pool[i]) ? 1 : 0;
    if (std::abs(static_cast<double>(x) - expected) >= t) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(draws);
}

inline bool satisfies_ore(const Graph& g) {
  return 2 * min_degree(g).value >= g.vertex_count() + 1;
}

// Random graph on n vertices, densified with random edges at minimum-degree
// vertices until 2·δ >= n + 1.
inline Graph random_ore_graph(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) b.add_edge(u, v);
    }
  }
  for (;;) {
    Graph g = b.build();
    if (satisfies_ore(g)) return g;
    std::vector<Edge> candidates;
    const std::size_t low = min_degree(g).value;
    for (Vertex u = 0; u < n; ++u) {
      if (g.degree(u) != low) continue;
      for (Vertex v = 0; v < n; ++v) {
        if (v != u && !g.adjacent(u, v)) candidates.emplace_back(u, v);
      }
    }
    auto e = candidates[rng.below(candidates.size())];
    b.add_edge(e.first, e.second);
  }
}

// One certificate mutation and the single check it must trip.
struct Mutation {
  std::string name;
  TriangleFixture fixture;
  bool require_spanning = true;
  std::string_view expected;
};

inline std::vector<Mutation> certificate_mutations() {
  std::vector<Mutation> out;
  {
    Mutation m{"branch map not injective", matching_fixture(), false, kCheckBranchInjective};
    m.fixture.cert.branch_map[2] = 0;
    m.fixture.cert.edge_paths[{2, 3}] = PathRecord{{0, 3}};
    out.push_back(std::move(m));
  }
  {
    Mutation m{"path reversed", triangle_fixture(), true, kCheckEndpoints};
    m.fixture.cert.edge_paths[{0, 1}] = PathRecord{{1, 4, 3, 0}};
    out.push_back(std::move(m));
  }
  {
    Mutation m{"step along a non-edge", triangle_fixture(), true, kCheckHostEdges};
    m.fixture.cert.edge_paths[{0, 1}] = PathRecord{{0, 4, 3, 1}};
    out.push_back(std::move(m));
  }
  {
    Mutation m{"walk repeats vertices", triangle_fixture(), true, kCheckNoRepeats};
    m.fixture.cert.edge_paths[{0, 1}] = PathRecord{{0, 3, 4, 3, 4, 1}};
    out.push_back(std::move(m));
  }
  {
    Mutation m{"shared interior vertex", triangle_fixture(), true, kCheckInteriorsDisjoint};
    m.fixture.cert.edge_paths[{0, 2}] = PathRecord{{0, 5, 3, 6, 2}};
    out.push_back(std::move(m));
  }
  {
    Mutation m{"host vertex left out", triangle_fixture(), true, kCheckSpanning};
    m.fixture.cert.edge_paths[{1, 2}] = PathRecord{{1, 7, 2}};
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace dirac::testing

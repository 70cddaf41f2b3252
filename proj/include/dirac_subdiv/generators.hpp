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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dirac_subdiv/errors.hpp"
#include "dirac_subdiv/graph.hpp"
#include "dirac_subdiv/random.hpp"

namespace dirac {

/// Smallest integer degree satisfying δ ≥ (1+ε)N/2.  The tolerance keeps
/// e.g. ε=0.2, N=120 at 72 rather than 73 after rounding noise.
inline std::size_t required_min_degree(double epsilon, std::size_t n_vertices) {
  double bound = (1.0 + epsilon) * static_cast<double>(n_vertices) / 2.0;
  return static_cast<std::size_t>(std::ceil(bound - 1e-9));
}

/// Parameters of a theorem instance: pattern order n, regularity d, blow-up C.
struct HostSpec {
  std::size_t n = 2;
  std::size_t d = 1;
  std::size_t C = 4;
  double epsilon = 0.5;
  std::uint64_t seed = 0;

  std::size_t vertex_count() const { return C * d * n; }

  void validate() const {
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    if (d < 1 || d >= n) throw std::invalid_argument("d must satisfy 1 <= d < n");
    if (C < 1) throw std::invalid_argument("C must be positive");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  }
};

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  edges.reserve(n * (n > 0 ? n - 1 : 0) / 2);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return Graph::from_edges(n, edges);
}

/// Two disjoint cliques on `half` vertices each: δ = half - 1 < N/2.
inline Graph gen_two_clique_extremal(std::size_t half) {
  if (half < 1) throw std::invalid_argument("two-clique half size must be at least 1");
  std::vector<Edge> edges;
  for (Vertex offset : {Vertex{0}, static_cast<Vertex>(half)}) {
    for (Vertex u = 0; u < half; ++u) {
      for (Vertex v = u + 1; v < half; ++v) edges.emplace_back(offset + u, offset + v);
    }
  }
  return Graph::from_edges(2 * half, edges);
}

inline Graph complement(const Graph& g) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    for (Vertex v = u + 1; v < g.vertex_count(); ++v) {
      if (!g.adjacent(u, v)) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(g.vertex_count(), edges);
}

/// G(N, p) sample.
inline Graph gen_erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (rng.bernoulli(p)) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

inline constexpr std::size_t kDiracHostAttempts = 50;

/// Random host on N = Cdn vertices with δ ≥ ⌈(1+ε)N/2⌉: G(N, p) with
/// p = min(1, (1+ε)/2 + 3·sqrt(ln N / N)), checked and resampled.
inline Graph gen_dirac_host(const HostSpec& spec) {
  spec.validate();
  const std::size_t n_vertices = spec.vertex_count();
  const std::size_t target = required_min_degree(spec.epsilon, n_vertices);
  if (target > n_vertices - 1) {
    throw std::invalid_argument("no graph on " + std::to_string(n_vertices) +
                                " vertices has minimum degree " + std::to_string(target) +
                                " (epsilon too large)");
  }
  const double nn = static_cast<double>(n_vertices);
  const double p = std::min(1.0, (1.0 + spec.epsilon) / 2.0 + 3.0 * std::sqrt(std::log(nn) / nn));
  for (std::size_t attempt = 0; attempt < kDiracHostAttempts; ++attempt) {
    Graph g = gen_erdos_renyi(n_vertices, p, derive_seed(spec.seed, {0xd1ac, attempt}));
    if (min_degree(g).value >= target) return g;
  }
  throw GenerationFailure("dirac host: minimum degree " + std::to_string(target) + " not reached",
                          kDiracHostAttempts);
}

inline constexpr std::size_t kRegularRestarts = 200;

namespace detail {

// Configuration-model pairing: stubs are matched one at a time, each to a
// uniformly random remaining stub that creates neither a loop nor a repeated
// edge.  A dead end restarts the whole pairing.
inline bool try_pair_stubs(std::size_t n, std::size_t d, Rng& rng, GraphBuilder& out) {
  std::vector<Vertex> stubs;
  stubs.reserve(n * d);
  for (Vertex v = 0; v < n; ++v) stubs.insert(stubs.end(), d, v);
  rng.shuffle(std::span<Vertex>(stubs));
  std::vector<Vertex> options;
  while (!stubs.empty()) {
    Vertex u = stubs.back();
    stubs.pop_back();
    options.clear();
    for (std::size_t k = 0; k < stubs.size(); ++k) {
      if (stubs[k] != u && !out.has_edge(u, stubs[k])) options.push_back(static_cast<Vertex>(k));
    }
    if (options.empty()) return false;
    std::size_t pick = options[rng.below(options.size())];
    out.add_edge(u, stubs[pick]);
    stubs[pick] = stubs.back();
    stubs.pop_back();
  }
  return true;
}

}  // namespace detail

/// Simple d-regular graph on n vertices.  For d > n/2 the (n-1-d)-regular
/// complement is generated instead.
inline Graph gen_random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("regular graph needs at least one vertex");
  if (d >= n) throw std::invalid_argument("regular graph needs d < n");
  if ((n * d) % 2 != 0) throw std::invalid_argument("n*d must be even for a d-regular graph");
  if (2 * d > n) return complement(gen_random_regular(n, n - 1 - d, seed));
  if (d == 0) return Graph(n);
  Rng rng(seed);
  for (std::size_t attempt = 0; attempt < kRegularRestarts; ++attempt) {
    GraphBuilder builder(n);
    if (detail::try_pair_stubs(n, d, rng, builder)) return builder.build();
  }
  throw GenerationFailure("random " + std::to_string(d) + "-regular graph on " +
                              std::to_string(n) + " vertices",
                          kRegularRestarts);
}

}  // namespace dirac

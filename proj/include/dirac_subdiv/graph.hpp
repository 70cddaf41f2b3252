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
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dirac {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

inline Edge normalized(Vertex u, Vertex v) { return u < v ? Edge{u, v} : Edge{v, u}; }

//==============================================================================
// Graph
//
// Simple undirected graph on vertices 0..N-1.  Immutable once built: every
// lemma in the pipeline only reads the host, so one instance is shared by all
// stages (and all threads).  Adjacency is kept both as sorted neighbor lists
// and as a dense bit matrix so that `adjacent` is O(1).
//==============================================================================
class Graph {
 public:
  Graph() = default;

  /// Edgeless graph on `n` vertices.
  explicit Graph(std::size_t n)
      : n_(n), words_(word_count(n)), adj_(n), bits_(n * word_count(n), 0) {}

  /// Throws std::invalid_argument on loops, duplicate edges or ids >= n.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges) {
    Graph g(n);
    for (auto [u, v] : edges) {
      if (u >= n || v >= n) {
        throw std::invalid_argument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                    ") out of range for " + std::to_string(n) + " vertices");
      }
      if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
      if (g.adjacent(u, v)) {
        throw std::invalid_argument("duplicate edge (" + std::to_string(u) + "," +
                                    std::to_string(v) + ")");
      }
      g.set_bit(u, v);
      g.set_bit(v, u);
      g.adj_[u].push_back(v);
      g.adj_[v].push_back(u);
      ++g.m_;
    }
    for (auto& list : g.adj_) std::sort(list.begin(), list.end());
    return g;
  }

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return m_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    check_vertex(v);
    return adj_[v];
  }

  std::size_t degree(Vertex v) const { return neighbors(v).size(); }

  bool adjacent(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    return (bits_[u * words_ + v / 64] >> (v % 64)) & 1U;
  }

  /// All edges as (u, v) with u < v, lexicographically sorted.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < n_; ++u) {
      for (Vertex v : adj_[u]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  /// Row of the adjacency bit matrix (bit v of word v/64).
  std::span<const std::uint64_t> adjacency_bits(Vertex v) const {
    check_vertex(v);
    return {bits_.data() + v * words_, words_};
  }

  void check_vertex(Vertex v) const {
    if (v >= n_) {
      throw std::invalid_argument("vertex " + std::to_string(v) + " out of range for " +
                                  std::to_string(n_) + " vertices");
    }
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

 private:
  static std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

  void set_bit(Vertex u, Vertex v) { bits_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64); }

  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::size_t words_ = 0;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint64_t> bits_;
};

/// Accumulates edges with deduplication, then freezes into a Graph.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t n) : n_(n) {}

  /// Returns false (and adds nothing) for loops and already-present edges.
  bool add_edge(Vertex u, Vertex v) {
    if (u >= n_ || v >= n_) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) return false;
    return edges_.insert(normalized(u, v)).second;
  }

  bool has_edge(Vertex u, Vertex v) const { return edges_.count(normalized(u, v)) > 0; }

  Graph build() const {
    std::vector<Edge> list(edges_.begin(), edges_.end());
    return Graph::from_edges(n_, list);
  }

 private:
  std::size_t n_;
  std::set<Edge> edges_;
};

//==============================================================================
// VertexSet: sorted, duplicate-free list of vertex ids.
//==============================================================================
class VertexSet {
 public:
  VertexSet() = default;

  /// Sorts; throws std::invalid_argument on duplicates.
  explicit VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
      throw std::invalid_argument("vertex set contains a duplicate");
    }
  }

  VertexSet(std::initializer_list<Vertex> members) : VertexSet(std::vector<Vertex>(members)) {}

  static VertexSet range(Vertex n) {
    std::vector<Vertex> all(n);
    for (Vertex v = 0; v < n; ++v) all[v] = v;
    return VertexSet(std::move(all));
  }

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(Vertex v) const { return std::binary_search(members_.begin(), members_.end(), v); }

  std::span<const Vertex> members() const noexcept { return members_; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  /// Position of `v` in sorted order; throws if absent.
  std::size_t index_of(Vertex v) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), v);
    if (it == members_.end() || *it != v) {
      throw std::invalid_argument("vertex " + std::to_string(v) + " not in set");
    }
    return static_cast<std::size_t>(it - members_.begin());
  }

  VertexSet without(std::span<const Vertex> drop) const {
    std::vector<Vertex> kept;
    kept.reserve(members_.size());
    for (Vertex v : members_) {
      if (std::find(drop.begin(), drop.end(), v) == drop.end()) kept.push_back(v);
    }
    return VertexSet(std::move(kept));
  }

  void validate_for(const Graph& g) const {
    if (!members_.empty() && members_.back() >= g.vertex_count()) {
      throw std::invalid_argument("vertex set member " + std::to_string(members_.back()) +
                                  " out of range");
    }
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> members_;
};

inline bool disjoint(const VertexSet& a, const VertexSet& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia == *ib) return false;
    if (*ia < *ib) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return true;
}

//==============================================================================
// Degree queries
//==============================================================================

/// |N(v) ∩ u|.  v itself never counts (no self-loops).
inline std::size_t degree_into(const Graph& g, Vertex v, const VertexSet& u) {
  g.check_vertex(v);
  u.validate_for(g);
  auto row = g.adjacency_bits(v);
  std::size_t count = 0;
  for (Vertex w : u) count += (row[w / 64] >> (w % 64)) & 1U;
  return count;
}

/// Minimum degree, with a flag distinguishing "no vertices" from a true zero.
struct DegreeBound {
  std::size_t value = 0;
  bool empty = true;
};

inline DegreeBound min_degree(const Graph& g) {
  if (g.vertex_count() == 0) return {};
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (Vertex v = 0; v < g.vertex_count(); ++v) best = std::min(best, g.degree(v));
  return {best, false};
}

/// δ(G[a]) computed in place, without materializing the induced graph.
inline DegreeBound min_degree_within(const Graph& g, const VertexSet& a) {
  if (a.empty()) return {};
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (Vertex v : a) best = std::min(best, degree_into(g, v, a));
  return {best, false};
}

/// δ(G[a, b]): minimum over a ∪ b of the number of neighbors on the other side.
inline DegreeBound bipartite_min_degree(const Graph& g, const VertexSet& a, const VertexSet& b) {
  if (!disjoint(a, b)) throw std::invalid_argument("bipartite sides must be disjoint");
  a.validate_for(g);
  b.validate_for(g);
  if (a.empty() || b.empty()) return {};
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (Vertex v : a) best = std::min(best, degree_into(g, v, b));
  for (Vertex v : b) best = std::min(best, degree_into(g, v, a));
  return {best, false};
}

/// G[A] together with the relabeling local id -> host id (sorted order of A).
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_host;

  Vertex to_local(Vertex host) const {
    auto it = std::lower_bound(to_host.begin(), to_host.end(), host);
    if (it == to_host.end() || *it != host) {
      throw std::invalid_argument("vertex " + std::to_string(host) + " not in induced subgraph");
    }
    return static_cast<Vertex>(it - to_host.begin());
  }
};

inline InducedSubgraph induced(const Graph& g, const VertexSet& a) {
  a.validate_for(g);
  std::vector<Edge> edges;
  auto members = a.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (g.adjacent(members[i], members[j])) {
        edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(j));
      }
    }
  }
  return {Graph::from_edges(a.size(), edges), {members.begin(), members.end()}};
}

inline bool is_regular(const Graph& g, std::size_t d) {
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) != d) return false;
  }
  return true;
}

//==============================================================================
// Edge-list text format
//
//   N M
//   u v      (M lines)
//
// The writer always emits u < v in lexicographic order, so serialization is
// canonical.  The reader also accepts u > v but rejects loops, duplicates and
// out-of-range ids.
//==============================================================================

inline Graph read_edge_list(std::istream& in) {
  auto fail = [](const std::string& msg) -> Graph {
    throw std::invalid_argument("edge list: " + msg);
  };
  long long n = -1;
  long long m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) return fail("expected header \"N M\"");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long k = 0; k < m; ++k) {
    long long u = -1;
    long long v = -1;
    if (!(in >> u >> v)) return fail("expected " + std::to_string(m) + " edges, got " + std::to_string(k));
    if (u < 0 || v < 0 || u >= n || v >= n) {
      return fail("edge " + std::to_string(k) + " has an out-of-range endpoint");
    }
    edges.push_back(normalized(static_cast<Vertex>(u), static_cast<Vertex>(v)));
  }
  std::string extra;
  if (in >> extra) return fail("trailing content after " + std::to_string(m) + " edges");
  return Graph::from_edges(static_cast<std::size_t>(n), edges);
}

inline Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  write_edge_list(out, g);
  return out.str();
}

/// Graphviz export.  Vertices in `highlight_vertices` are filled and edges in
/// `highlight_edges` drawn bold; with `only_highlighted` the remaining edges
/// are omitted (useful for dense hosts).
struct DotStyle {
  std::vector<Vertex> highlight_vertices;
  std::vector<Edge> highlight_edges;
  bool only_highlighted = false;
  std::string name = "G";
};

inline void write_dot(std::ostream& out, const Graph& g, const DotStyle& style = {}) {
  std::set<Edge> bold;
  for (auto [u, v] : style.highlight_edges) bold.insert(normalized(u, v));
  std::set<Vertex> filled(style.highlight_vertices.begin(), style.highlight_vertices.end());
  out << "graph " << style.name << " {\n";
  out << "  node [shape=circle, fontsize=10];\n";
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    out << "  " << v;
    if (filled.count(v) > 0) out << " [style=filled, fillcolor=\"#f4a261\"]";
    out << ";\n";
  }
  for (auto e : g.edges()) {
    bool is_bold = bold.count(e) > 0;
    if (style.only_highlighted && !is_bold) continue;
    out << "  " << e.first << " -- " << e.second;
    if (is_bold && !style.only_highlighted) out << " [penwidth=2.5]";
    out << ";\n";
  }
  out << "}\n";
}

}  // namespace dirac

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

// Hamilton paths between two prescribed endpoints.
//
// Blocks handed to this module satisfy Ore's condition δ >= (n+1)/2, which
// makes them Hamiltonian path-connected; the job here is to actually find the
// path.  The primary search is Pósa rotation-extension with the start vertex
// pinned; if it gives up and the graph is small enough, a Held-Karp style
// subset DP settles the question exactly.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dirac_subdiv/errors.hpp"
#include "dirac_subdiv/graph.hpp"
#include "dirac_subdiv/random.hpp"

namespace dirac {

/// Ordered sequence of distinct vertices; endpoints are front() and back().
struct PathRecord {
  std::vector<Vertex> vertices;

  Vertex front() const { return vertices.front(); }
  Vertex back() const { return vertices.back(); }
  std::size_t edge_length() const { return vertices.empty() ? 0 : vertices.size() - 1; }

  PathRecord reversed() const { return {{vertices.rbegin(), vertices.rend()}}; }

  friend bool operator==(const PathRecord&, const PathRecord&) = default;
};

/// Non-empty, no repeated vertex, consecutive vertices adjacent in g.
inline bool is_valid_path(const Graph& g, const PathRecord& p) {
  if (p.vertices.empty()) return false;
  std::vector<bool> seen(g.vertex_count(), false);
  for (std::size_t k = 0; k < p.vertices.size(); ++k) {
    Vertex v = p.vertices[k];
    if (v >= g.vertex_count() || seen[v]) return false;
    seen[v] = true;
    if (k > 0 && !g.adjacent(p.vertices[k - 1], v)) return false;
  }
  return true;
}

inline bool is_hamilton_path(const Graph& g, const PathRecord& p, Vertex x, Vertex y) {
  return p.vertices.size() == g.vertex_count() && is_valid_path(g, p) && p.front() == x &&
         p.back() == y;
}

struct HamPathOptions {
  std::size_t restarts = 20;
  bool exact_fallback = true;
  std::size_t exact_threshold = 20;  // max |V| for the subset DP
};

struct HamPathResult {
  enum class Method { kNone, kRotation, kExact };

  std::optional<PathRecord> path;
  Method method = Method::kNone;
  std::size_t restarts_used = 0;
  bool proven_absent = false;  // the exact search ran and found nothing
  std::string failure;

  explicit operator bool() const { return path.has_value(); }
};

namespace detail {

inline constexpr std::size_t kMaxExactVertices = 24;

// Held-Karp over subsets: reach[mask] holds the possible last vertices of a
// path that starts at x and visits exactly `mask`.  y may only enter last.
inline std::optional<PathRecord> exact_hamilton_path(const Graph& g, Vertex x, Vertex y) {
  const std::size_t n = g.vertex_count();
  if (n > kMaxExactVertices) throw SizeLimitExceeded("exact search limited to 24 vertices");
  std::vector<std::uint32_t> nbr(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (Vertex w : g.neighbors(v)) nbr[v] |= std::uint32_t{1} << w;
  }
  const std::uint32_t full = n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
  const std::uint32_t xbit = std::uint32_t{1} << x;
  const std::uint32_t ybit = std::uint32_t{1} << y;
  std::vector<std::uint32_t> reach(std::size_t{1} << n, 0);
  reach[xbit] = xbit;
  for (std::uint32_t mask = xbit; mask < full; ++mask) {
    std::uint32_t ends = reach[mask];
    if (ends == 0 || (mask & ybit) != 0) continue;
    while (ends != 0) {
      Vertex v = static_cast<Vertex>(std::countr_zero(ends));
      ends &= ends - 1;
      std::uint32_t next = nbr[v] & ~mask;
      if ((mask | ybit) != full) next &= ~ybit;
      while (next != 0) {
        Vertex w = static_cast<Vertex>(std::countr_zero(next));
        next &= next - 1;
        reach[mask | (std::uint32_t{1} << w)] |= std::uint32_t{1} << w;
      }
    }
  }
  if ((reach[full] & ybit) == 0) return std::nullopt;

  std::vector<Vertex> rev{y};
  std::uint32_t mask = full;
  Vertex last = y;
  while (mask != xbit) {
    std::uint32_t prev_mask = mask & ~(std::uint32_t{1} << last);
    std::uint32_t options = reach[prev_mask] & nbr[last];
    Vertex prev = static_cast<Vertex>(std::countr_zero(options));
    rev.push_back(prev);
    mask = prev_mask;
    last = prev;
  }
  return PathRecord{{rev.rbegin(), rev.rend()}};
}

// One rotation-extension run.  The path grows from x and avoids y until y is
// the only vertex left.  When the endpoint is stuck, a rotation along a chord
// e-path[k] makes path[k+1] the new endpoint; the candidate whose new
// endpoint has most unvisited neighbors wins, ties to the smaller id.
// Endpoints already tried since the last extension are not revisited.
class RotationSearch {
 public:
  RotationSearch(const Graph& g, Vertex x, Vertex y) : g_(g), x_(x), y_(y), n_(g.vertex_count()) {}

  std::optional<PathRecord> run(Rng& rng) {
    path_.assign(1, x_);
    on_path_.assign(n_, false);
    on_path_[x_] = true;
    tried_.assign(n_, false);
    const std::size_t max_steps = 8 * n_ * n_ + 64;
    for (std::size_t step = 0; step < max_steps; ++step) {
      const Vertex end = path_.back();
      const bool only_target_left = path_.size() + 1 == n_;
      if (only_target_left && g_.adjacent(end, y_)) {
        path_.push_back(y_);
        return PathRecord{path_};
      }
      if (!only_target_left && extend(end, rng)) continue;
      if (!rotate(end, only_target_left)) return std::nullopt;
    }
    return std::nullopt;
  }

 private:
  std::size_t unvisited_degree(Vertex v) const {
    std::size_t count = 0;
    for (Vertex w : g_.neighbors(v)) count += (!on_path_[w] && w != y_) ? 1 : 0;
    return count;
  }

  // Warnsdorff-style: step to the free neighbor with fewest free neighbors.
  bool extend(Vertex end, Rng& rng) {
    std::size_t best_score = SIZE_MAX;
    std::vector<Vertex> best;
    for (Vertex w : g_.neighbors(end)) {
      if (on_path_[w] || w == y_) continue;
      std::size_t score = unvisited_degree(w);
      if (score < best_score) {
        best_score = score;
        best.assign(1, w);
      } else if (score == best_score) {
        best.push_back(w);
      }
    }
    if (best.empty()) return false;
    Vertex next = best[rng.below(best.size())];
    path_.push_back(next);
    on_path_[next] = true;
    std::fill(tried_.begin(), tried_.end(), false);
    return true;
  }

  bool rotate(Vertex end, bool only_target_left) {
    tried_[end] = true;
    const std::size_t len = path_.size();
    std::size_t best_k = SIZE_MAX;
    std::size_t best_score = 0;
    for (std::size_t k = 0; k + 2 < len; ++k) {
      if (!g_.adjacent(end, path_[k])) continue;
      Vertex candidate = path_[k + 1];
      if (tried_[candidate]) continue;
      std::size_t score = only_target_left ? (g_.adjacent(candidate, y_) ? 1 : 0)
                                           : unvisited_degree(candidate);
      if (best_k == SIZE_MAX || score > best_score ||
          (score == best_score && candidate < path_[best_k + 1])) {
        best_k = k;
        best_score = score;
      }
    }
    if (best_k == SIZE_MAX) return false;
    std::reverse(path_.begin() + static_cast<std::ptrdiff_t>(best_k + 1), path_.end());
    return true;
  }

  const Graph& g_;
  Vertex x_;
  Vertex y_;
  std::size_t n_;
  std::vector<Vertex> path_;
  std::vector<bool> on_path_;
  std::vector<bool> tried_;
};

}  // namespace detail

/// Hamilton x,y-path of g.  Rotation-extension with up to `restarts` fresh
/// runs, then (if |V| <= exact_threshold) the exact subset DP.  Failure is
/// reported in the result, never thrown; `proven_absent` distinguishes "no
/// such path exists" from "search gave up".
inline HamPathResult hamilton_path_between(const Graph& g, Vertex x, Vertex y,
                                           const HamPathOptions& options = {},
                                           std::uint64_t seed = 0) {
  g.check_vertex(x);
  g.check_vertex(y);
  if (x == y) throw std::invalid_argument("hamilton path endpoints must differ");
  const std::size_t n = g.vertex_count();
  HamPathResult result;

  detail::RotationSearch search(g, x, y);
  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(options.restarts, 1); ++attempt) {
    Rng rng(derive_seed(seed, {0x4a3, attempt}));
    result.restarts_used = attempt + 1;
    if (auto found = search.run(rng)) {
      result.path = std::move(found);
      result.method = HamPathResult::Method::kRotation;
      return result;
    }
  }

  const bool exact_ok = options.exact_fallback &&
                        n <= std::min(options.exact_threshold, detail::kMaxExactVertices);
  if (exact_ok) {
    if (auto found = detail::exact_hamilton_path(g, x, y)) {
      result.path = std::move(found);
      result.method = HamPathResult::Method::kExact;
      return result;
    }
    result.proven_absent = true;
    auto delta = min_degree(g).value;
    result.failure = "no Hamilton path between " + std::to_string(x) + " and " + std::to_string(y) +
                     " (minimum degree " + std::to_string(delta) + ", Ore needs " +
                     std::to_string((n + 2) / 2) + ")";
    return result;
  }
  result.failure = "rotation-extension gave up after " + std::to_string(result.restarts_used) +
                   " restarts on " + std::to_string(n) + " vertices";
  return result;
}

/// Exhaustive backtracking over all paths from x; independent of the subset
/// DP used by hamilton_path_between so that it can serve as a test oracle.
inline std::optional<PathRecord> brute_force_hamilton_path(const Graph& g, Vertex x, Vertex y) {
  constexpr std::size_t kLimit = 12;
  const std::size_t n = g.vertex_count();
  if (n > kLimit) throw SizeLimitExceeded("brute force Hamilton search limited to 12 vertices");
  g.check_vertex(x);
  g.check_vertex(y);
  if (x == y) throw std::invalid_argument("hamilton path endpoints must differ");

  std::vector<Vertex> path{x};
  std::vector<bool> used(n, false);
  used[x] = true;
  auto dfs = [&](auto&& self) -> bool {
    Vertex end = path.back();
    if (path.size() == n) return end == y;
    for (Vertex w : g.neighbors(end)) {
      if (used[w]) continue;
      if (w == y && path.size() + 1 != n) continue;
      used[w] = true;
      path.push_back(w);
      if (self(self)) return true;
      path.pop_back();
      used[w] = false;
    }
    return false;
  };
  if (dfs(dfs)) return PathRecord{path};
  return std::nullopt;
}

}  // namespace dirac

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

// Randomized vertex partitions of a dense host.
//
// Two constructions live here.  `good_partition` splits the whole host into
// one equal part per pattern vertex such that every part, and every pair of
// parts joined by a pattern edge, keeps a linear minimum degree.
// `block_partition` then cuts one such part (minus its center and connector
// vertices) into d blocks by recursive random bisection guided by an
// `IntervalTree` over the block indices.  Both are verify-and-retry loops: a
// returned partition has always been checked.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dirac_subdiv/errors.hpp"
#include "dirac_subdiv/graph.hpp"
#include "dirac_subdiv/random.hpp"

namespace dirac {

namespace detail {

// count >= fraction * size, tolerant of rounding in `fraction`.
inline bool meets(std::size_t count, double fraction, std::size_t size) {
  return static_cast<double>(count) >= fraction * static_cast<double>(size) - 1e-9;
}

inline double margin(std::size_t count, double fraction, std::size_t size) {
  return static_cast<double>(count) - fraction * static_cast<double>(size);
}

}  // namespace detail

/// P(|X - E[X]| >= t) <= 2 exp(-2 t^2 / n) for a hypergeometric X with
/// sample size n.
inline double hypergeometric_tail_bound(std::size_t n, double t) {
  if (n < 1) throw std::invalid_argument("tail bound needs sample size n >= 1");
  if (!(t > 0.0)) throw std::invalid_argument("tail bound needs t > 0");
  return 2.0 * std::exp(-2.0 * t * t / static_cast<double>(n));
}

//==============================================================================
// Good partitions
//==============================================================================

struct GoodPartition {
  std::vector<VertexSet> parts;  // parts[i] hosts pattern vertex i
  std::size_t part_size = 0;     // common size (smallest size in flexible mode)

  /// part index of every host vertex
  std::vector<std::size_t> owner(std::size_t n_vertices) const {
    std::vector<std::size_t> out(n_vertices, std::numeric_limits<std::size_t>::max());
    for (std::size_t i = 0; i < parts.size(); ++i) {
      for (Vertex v : parts[i]) out[v] = i;
    }
    return out;
  }
};

struct PartitionCheck {
  enum class Condition { kNone, kEqualSizes, kPartMinDegree, kPairMinDegree };

  bool ok = true;
  Condition violated = Condition::kNone;
  Vertex witness = 0;
  std::size_t part = 0;
  std::size_t other_part = 0;  // == part for kPartMinDegree
  std::size_t degree = 0;
  double required = 0.0;
  double worst_margin = std::numeric_limits<double>::infinity();

  std::string describe() const {
    std::ostringstream out;
    switch (violated) {
      case Condition::kNone:
        out << "good partition";
        break;
      case Condition::kEqualSizes:
        out << "part " << part << " has size " << degree << ", expected " << required;
        break;
      case Condition::kPartMinDegree:
        out << "vertex " << witness << " has degree " << degree << " inside part " << part
            << ", needs " << required;
        break;
      case Condition::kPairMinDegree:
        out << "vertex " << witness << " in part " << part << " has degree " << degree
            << " into part " << other_part << ", needs " << required;
        break;
    }
    return out.str();
  }
};

/// Checks the three good-partition conditions at level `threshold` and
/// reports the constraint with the smallest margin.  `expected_sizes`, when
/// given, replaces the equal-size condition (flexible sizing); degree bounds
/// are then relative to the smallest expected size.  Throws
/// std::invalid_argument if `p` is not a partition of V(g) into |V(h)| parts.
inline PartitionCheck is_good_partition(const Graph& g, const Graph& h, const GoodPartition& p,
                                        double threshold,
                                        std::span<const std::size_t> expected_sizes = {}) {
  if (p.parts.size() != h.vertex_count()) {
    throw std::invalid_argument("partition has " + std::to_string(p.parts.size()) +
                                " parts but pattern has " + std::to_string(h.vertex_count()) +
                                " vertices");
  }
  if (!expected_sizes.empty() && expected_sizes.size() != p.parts.size()) {
    throw std::invalid_argument("expected_sizes length does not match part count");
  }
  std::vector<bool> seen(g.vertex_count(), false);
  std::size_t covered = 0;
  for (const auto& part : p.parts) {
    part.validate_for(g);
    for (Vertex v : part) {
      if (seen[v]) throw std::invalid_argument("partition parts overlap at vertex " + std::to_string(v));
      seen[v] = true;
      ++covered;
    }
  }
  if (covered != g.vertex_count()) throw std::invalid_argument("partition does not cover the host");

  PartitionCheck check;
  std::size_t m = p.parts.empty() ? 0 : p.parts.front().size();
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    std::size_t want = expected_sizes.empty() ? p.parts.front().size() : expected_sizes[i];
    if (p.parts[i].size() != want) {
      check.ok = false;
      check.violated = PartitionCheck::Condition::kEqualSizes;
      check.part = i;
      check.degree = p.parts[i].size();
      check.required = static_cast<double>(want);
      check.worst_margin = -std::numeric_limits<double>::infinity();
      return check;
    }
    m = std::min(m, want);
  }

  auto consider = [&](Vertex v, std::size_t i, std::size_t j, std::size_t deg,
                      PartitionCheck::Condition kind) {
    double mg = detail::margin(deg, threshold, m);
    if (mg < check.worst_margin) {
      check.worst_margin = mg;
      check.witness = v;
      check.part = i;
      check.other_part = j;
      check.degree = deg;
      check.required = threshold * static_cast<double>(m);
      check.violated = kind;
    }
    if (!detail::meets(deg, threshold, m)) check.ok = false;
  };

  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    for (Vertex v : p.parts[i]) {
      consider(v, i, i, degree_into(g, v, p.parts[i]), PartitionCheck::Condition::kPartMinDegree);
    }
  }
  for (auto [i, j] : h.edges()) {
    for (Vertex v : p.parts[i]) {
      consider(v, i, j, degree_into(g, v, p.parts[j]), PartitionCheck::Condition::kPairMinDegree);
    }
    for (Vertex v : p.parts[j]) {
      consider(v, j, i, degree_into(g, v, p.parts[i]), PartitionCheck::Condition::kPairMinDegree);
    }
  }
  if (check.ok) check.violated = PartitionCheck::Condition::kNone;
  return check;
}

struct PartitionOutcome {
  GoodPartition partition;
  std::size_t attempts = 0;
};

/// Uniformly random (equi)partition of V(g) into |V(h)| parts, resampled until
/// it is good at level alpha - delta.  Precondition δ(g) >= alpha·N.  Throws
/// BudgetExhausted carrying the worst violation seen over all attempts.
inline PartitionOutcome good_partition(const Graph& g, const Graph& h, double alpha, double delta,
                                       std::size_t budget, std::uint64_t seed,
                                       std::span<const std::size_t> part_sizes = {}) {
  const std::size_t n_vertices = g.vertex_count();
  const std::size_t n_parts = h.vertex_count();
  if (n_parts == 0) throw std::invalid_argument("pattern has no vertices");
  std::vector<std::size_t> sizes(part_sizes.begin(), part_sizes.end());
  if (sizes.empty()) {
    if (n_vertices % n_parts != 0) {
      throw PreconditionError("host order " + std::to_string(n_vertices) +
                              " is not divisible by pattern order " + std::to_string(n_parts));
    }
    sizes.assign(n_parts, n_vertices / n_parts);
  }
  std::size_t total = 0;
  for (auto s : sizes) total += s;
  if (sizes.size() != n_parts || total != n_vertices) {
    throw std::invalid_argument("part sizes do not partition the host");
  }
  if (!detail::meets(min_degree(g).value, alpha, n_vertices)) {
    throw PreconditionError("host minimum degree " + std::to_string(min_degree(g).value) +
                            " is below alpha*N = " +
                            std::to_string(alpha * static_cast<double>(n_vertices)));
  }

  std::vector<Vertex> order(n_vertices);
  PartitionCheck worst;
  for (std::size_t attempt = 1; attempt <= budget; ++attempt) {
    for (Vertex v = 0; v < n_vertices; ++v) order[v] = v;
    Rng rng(derive_seed(seed, {0x90d, attempt}));
    rng.shuffle(std::span<Vertex>(order));

    GoodPartition p;
    p.part_size = *std::min_element(sizes.begin(), sizes.end());
    auto cursor = order.begin();
    for (std::size_t s : sizes) {
      p.parts.emplace_back(std::vector<Vertex>(cursor, cursor + static_cast<std::ptrdiff_t>(s)));
      cursor += static_cast<std::ptrdiff_t>(s);
    }
    PartitionCheck check = is_good_partition(g, h, p, alpha - delta,
                                             part_sizes.empty() ? std::span<const std::size_t>{}
                                                                : std::span<const std::size_t>(sizes));
    if (check.ok) return {std::move(p), attempt};
    if (attempt == 1 || check.worst_margin < worst.worst_margin) worst = check;
  }
  throw BudgetExhausted("good_partition", budget, "worst violation: " + worst.describe());
}

//==============================================================================
// Interval tree over block indices 0..d-1
//==============================================================================

struct Interval {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive

  std::size_t size() const { return end - begin; }
  bool contains(const Interval& other) const { return begin <= other.begin && other.end <= end; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// levels[0] = {[0, d)}; level i+1 halves every level-i interval (left half
/// takes the extra element); levels[depth] lists the d singletons.  depth is
/// the least s with d <= 2^s, so level depth-1 holds only sizes 1 and 2 and
/// the final step splits just the pairs.
struct IntervalTree {
  std::size_t d = 0;
  std::size_t depth = 0;
  std::vector<std::vector<Interval>> levels;
};

inline IntervalTree interval_tree(std::size_t d) {
  if (d < 1) throw std::invalid_argument("interval tree needs d >= 1");
  IntervalTree tree;
  tree.d = d;
  while ((std::size_t{1} << tree.depth) < d) ++tree.depth;
  tree.levels.push_back({{0, d}});
  for (std::size_t level = 0; level < tree.depth; ++level) {
    std::vector<Interval> next;
    for (const Interval& iv : tree.levels.back()) {
      if (iv.size() == 1) {
        next.push_back(iv);
        continue;
      }
      std::size_t mid = iv.begin + (iv.size() + 1) / 2;
      next.push_back({iv.begin, mid});
      next.push_back({mid, iv.end});
    }
    tree.levels.push_back(std::move(next));
  }
  return tree;
}

//==============================================================================
// Block partition of one branch group
//==============================================================================

struct BlockPartition {
  Vertex center = 0;
  std::vector<Vertex> connectors;  // connectors[l] is paired with blocks[l]
  std::vector<VertexSet> blocks;
};

struct BlockParams {
  double alpha = 0.5;  // guaranteed δ(G[group]) / |group|
  double delta = 0.05;
  std::size_t level_budget = 200;
};

struct BlockPartitionOutcome {
  BlockPartition partition;
  std::size_t max_level_attempts = 0;
};

/// Block sizes C-1, ..., C-1, C-2 plus the optional per-block `extra`.
inline std::vector<std::size_t> block_sizes(std::size_t C, std::size_t d,
                                            std::span<const std::size_t> extra = {}) {
  std::vector<std::size_t> sizes(d, C - 1);
  sizes.back() = C - 2;
  for (std::size_t l = 0; l < extra.size() && l < d; ++l) sizes[l] += extra[l];
  return sizes;
}

struct BlockCheck {
  bool ok = true;
  std::string failure;
};

/// Independent check of a block partition: shape, sizes against `sizes`,
/// disjointness, and for each block l
///   d(center, V_l) >= θ|V_l|,  d(connectors[l], V_l) >= θ|V_l|,  δ(G[V_l]) >= θ·C
/// with θ = threshold.
inline BlockCheck check_block_partition(const Graph& g, const VertexSet& group,
                                        const BlockPartition& bp, std::size_t C,
                                        std::span<const std::size_t> sizes, double threshold) {
  auto fail = [](std::string why) { return BlockCheck{false, std::move(why)}; };
  const std::size_t d = bp.connectors.size();
  if (bp.blocks.size() != d || sizes.size() != d) return fail("block count does not match connector count");
  std::vector<Vertex> seen;
  seen.push_back(bp.center);
  seen.insert(seen.end(), bp.connectors.begin(), bp.connectors.end());
  std::size_t total = 1 + d;
  for (std::size_t l = 0; l < d; ++l) {
    if (bp.blocks[l].size() != sizes[l]) {
      return fail("block " + std::to_string(l) + " has size " + std::to_string(bp.blocks[l].size()) +
                  ", expected " + std::to_string(sizes[l]));
    }
    seen.insert(seen.end(), bp.blocks[l].begin(), bp.blocks[l].end());
    total += bp.blocks[l].size();
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    return fail("center, connectors and blocks are not pairwise disjoint");
  }
  if (total != group.size()) {
    return fail("sizes sum to " + std::to_string(total) + ", group has " + std::to_string(group.size()));
  }
  for (Vertex v : seen) {
    if (!group.contains(v)) return fail("vertex " + std::to_string(v) + " lies outside the group");
  }
  for (std::size_t l = 0; l < d; ++l) {
    const VertexSet& block = bp.blocks[l];
    std::size_t to_center = degree_into(g, bp.center, block);
    if (!detail::meets(to_center, threshold, block.size())) {
      return fail("center has degree " + std::to_string(to_center) + " into block " + std::to_string(l));
    }
    std::size_t to_conn = degree_into(g, bp.connectors[l], block);
    if (!detail::meets(to_conn, threshold, block.size())) {
      return fail("connector " + std::to_string(l) + " has degree " + std::to_string(to_conn) +
                  " into its block");
    }
    auto inner = min_degree_within(g, block);
    if (!detail::meets(inner.value, threshold, C)) {
      return fail("block " + std::to_string(l) + " has minimum degree " + std::to_string(inner.value));
    }
  }
  return {};
}

namespace detail {

struct BlockNode {
  Interval interval;
  VertexSet members;
};

// Degree events for a freshly split node.  Internal nodes (an interval of
// two or more blocks) check the set's own minimum degree and the degrees of
// the center and of every connector indexed by the interval, all relative to
// |V|.  Leaves check the final block conditions instead.  Returns the name of
// the first failed event, or nullptr.
inline const char* failed_event(const Graph& g, const BlockNode& node, Vertex center,
                                std::span<const Vertex> connectors, std::size_t C, double theta) {
  const VertexSet& set = node.members;
  const bool leaf = node.interval.size() == 1;
  if (!set.empty()) {
    auto inner = min_degree_within(g, set);
    if (!meets(inner.value, theta, leaf ? C : set.size())) return "A1 (minimum degree)";
  }
  if (!meets(degree_into(g, center, set), theta, set.size())) return "A2 (center degree)";
  for (std::size_t l = node.interval.begin; l < node.interval.end; ++l) {
    if (!meets(degree_into(g, connectors[l], set), theta, set.size())) {
      return leaf ? "A4 (connector degree)" : "A3 (connector degree)";
    }
  }
  return nullptr;
}

}  // namespace detail

/// Splits group \ ({center} ∪ connectors) into d blocks, block l paired with
/// connectors[l], by recursive random bisection along interval_tree(d).
/// Every split is re-randomized (up to params.level_budget times) until both
/// children pass their degree events at θ = alpha - delta.  `extra` adds
/// per-block vertices beyond the standard sizes (flexible sizing).
inline BlockPartitionOutcome block_partition(const Graph& g, const VertexSet& group, Vertex center,
                                             std::span<const Vertex> connectors,
                                             const BlockParams& params, std::uint64_t seed,
                                             std::span<const std::size_t> extra = {}) {
  const std::size_t d = connectors.size();
  if (d == 0) throw std::invalid_argument("block partition needs at least one connector");
  if (params.level_budget == 0) throw std::invalid_argument("level budget must be positive");
  group.validate_for(g);
  std::size_t extra_total = 0;
  for (auto e : extra) extra_total += e;
  if (extra.size() > d || group.size() < extra_total || (group.size() - extra_total) % d != 0) {
    throw std::invalid_argument("group size " + std::to_string(group.size()) +
                                " is not C*d plus the extra vertices");
  }
  const std::size_t C = (group.size() - extra_total) / d;
  if (C < 3) throw std::invalid_argument("block partition needs C >= 3");

  std::vector<Vertex> special{center};
  special.insert(special.end(), connectors.begin(), connectors.end());
  {
    std::vector<Vertex> sorted = special;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("center and connectors must be distinct");
    }
    for (Vertex v : special) {
      if (!group.contains(v)) throw std::invalid_argument("center/connector outside the group");
    }
  }
  auto inner = min_degree_within(g, group);
  if (!detail::meets(inner.value, params.alpha, group.size())) {
    throw PreconditionError("group minimum degree " + std::to_string(inner.value) +
                            " is below alpha*|group|");
  }

  const double theta = params.alpha - params.delta;
  const std::vector<std::size_t> sizes = block_sizes(C, d, extra);
  auto interval_weight = [&](const Interval& iv) {
    std::size_t w = 0;
    for (std::size_t l = iv.begin; l < iv.end; ++l) w += sizes[l];
    return w;
  };

  const IntervalTree tree = interval_tree(d);
  std::vector<detail::BlockNode> frontier{{tree.levels[0][0], group.without(special)}};
  BlockPartitionOutcome outcome;

  if (tree.depth == 0) {
    if (const char* event = detail::failed_event(g, frontier[0], center, connectors, C, theta)) {
      throw BudgetExhausted("block_partition", 1, std::string("level 0, block 0: ") + event);
    }
    outcome.max_level_attempts = 1;
  }

  for (std::size_t level = 0; level < tree.depth; ++level) {
    const auto& children = tree.levels[level + 1];
    std::vector<detail::BlockNode> next;
    next.reserve(children.size());
    std::size_t child = 0;
    for (std::size_t k = 0; k < frontier.size(); ++k) {
      const detail::BlockNode& node = frontier[k];
      if (node.interval.size() == 1) {
        next.push_back(node);
        ++child;
        continue;
      }
      const Interval left = children[child];
      const Interval right = children[child + 1];
      child += 2;
      const std::size_t left_size = interval_weight(left);
      std::vector<Vertex> pool(node.members.begin(), node.members.end());
      const char* event = nullptr;
      std::size_t attempt = 1;
      for (;; ++attempt) {
        Rng rng(derive_seed(seed, {0xb10c, level, k, attempt}));
        rng.shuffle(std::span<Vertex>(pool));
        const auto cut = pool.begin() + static_cast<std::ptrdiff_t>(left_size);
        detail::BlockNode a{left, VertexSet(std::vector<Vertex>(pool.begin(), cut))};
        detail::BlockNode b{right, VertexSet(std::vector<Vertex>(cut, pool.end()))};
        event = detail::failed_event(g, a, center, connectors, C, theta);
        if (event == nullptr) event = detail::failed_event(g, b, center, connectors, C, theta);
        if (event == nullptr) {
          next.push_back(std::move(a));
          next.push_back(std::move(b));
          break;
        }
        if (attempt == params.level_budget) {
          throw BudgetExhausted("block_partition", attempt,
                                "level " + std::to_string(level + 1) + ", interval [" +
                                    std::to_string(left.begin) + "," + std::to_string(right.end) +
                                    "): " + event);
        }
      }
      outcome.max_level_attempts = std::max(outcome.max_level_attempts, attempt);
    }
    frontier = std::move(next);
  }

  outcome.partition.center = center;
  outcome.partition.connectors.assign(connectors.begin(), connectors.end());
  for (auto& node : frontier) outcome.partition.blocks.push_back(std::move(node.members));

  BlockCheck verified = check_block_partition(g, group, outcome.partition, C, sizes, theta);
  if (!verified.ok) throw std::logic_error("block_partition produced an invalid partition: " + verified.failure);
  return outcome;
}

}  // namespace dirac

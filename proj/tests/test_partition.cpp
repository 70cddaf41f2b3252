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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "fixtures.hpp"

using namespace dirac;
using Catch::Approx;

namespace {

std::vector<std::size_t> sizes_of(const std::vector<Interval>& level) {
  std::vector<std::size_t> out;
  for (const auto& iv : level) out.push_back(iv.size());
  return out;
}

double min_degree_fraction(const Graph& g, const VertexSet& group) {
  return static_cast<double>(min_degree_within(g, group).value) / static_cast<double>(group.size());
}

}  // namespace

TEST_CASE("interval tree worked examples") {
  auto t1 = interval_tree(1);
  CHECK(t1.depth == 0);
  REQUIRE(t1.levels.size() == 1);
  CHECK(t1.levels[0] == std::vector<Interval>{{0, 1}});

  auto t2 = interval_tree(2);
  CHECK(t2.depth == 1);
  CHECK(t2.levels[1] == std::vector<Interval>{{0, 1}, {1, 2}});

  auto t5 = interval_tree(5);
  CHECK(t5.depth == 3);
  CHECK(sizes_of(t5.levels[1]) == std::vector<std::size_t>{3, 2});
  CHECK(sizes_of(t5.levels[2]) == std::vector<std::size_t>{2, 1, 1, 1});
  CHECK(t5.levels[3] == std::vector<Interval>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});

  CHECK_THROWS_AS(interval_tree(0), std::invalid_argument);
}

TEST_CASE("interval tree invariants for d up to 64") {
  for (std::size_t d = 1; d <= 64; ++d) {
    INFO("d = " << d);
    auto tree = interval_tree(d);
    const std::size_t s = tree.depth;
    CHECK(d <= (std::size_t{1} << s));
    if (s > 0) CHECK((std::size_t{1} << (s - 1)) < d);
    REQUIRE(tree.levels.size() == s + 1);
    for (std::size_t i = 0; i <= s; ++i) {
      const auto& level = tree.levels[i];
      std::size_t cursor = 0;
      const std::size_t cap = (d + (std::size_t{1} << i) - 1) >> i;
      for (const auto& iv : level) {
        CHECK(iv.begin == cursor);
        CHECK(iv.size() >= 1);
        CHECK(iv.size() <= cap);
        cursor = iv.end;
      }
      CHECK(cursor == d);
      if (i > 0) {
        for (const auto& iv : level) {
          auto parent = std::count_if(tree.levels[i - 1].begin(), tree.levels[i - 1].end(),
                                      [&](const Interval& p) { return p.contains(iv); });
          CHECK(parent == 1);
        }
      }
    }
    if (s > 0) {
      for (const auto& iv : tree.levels[s - 1]) CHECK(iv.size() <= 2);
    }
    CHECK(tree.levels[s].size() == d);
  }
}

TEST_CASE("hypergeometric tail bound") {
  CHECK(hypergeometric_tail_bound(100, 10.0) == Approx(0.2706705664732254).epsilon(1e-12));
  CHECK(hypergeometric_tail_bound(64, 16.0) == Approx(6.709252558050237e-4).epsilon(1e-12));
  CHECK_THROWS_AS(hypergeometric_tail_bound(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(hypergeometric_tail_bound(10, 0.0), std::invalid_argument);
}

TEST_CASE("concentration stays under the tail bound", "[statistical]") {
  const double freq = testing::concentration_frequency(100, 10.0, 500, 7);
  CHECK(freq <= hypergeometric_tail_bound(100, 10.0) + 0.05);
}

TEST_CASE("is_good_partition on hand-built partitions") {
  Graph k12 = complete_graph(12);
  Graph tri = complete_graph(3);
  GoodPartition p;
  p.parts = {VertexSet{0, 1, 2, 3}, VertexSet{4, 5, 6, 7}, VertexSet{8, 9, 10, 11}};
  p.part_size = 4;
  auto ok = is_good_partition(k12, tri, p, 0.5);
  CHECK(ok.ok);
  CHECK(ok.violated == PartitionCheck::Condition::kNone);
  CHECK(ok.worst_margin == Approx(1.0));  // 3 inside a part against 0.5 * 4

  GoodPartition uneven;
  uneven.parts = {VertexSet{0, 1, 2, 3, 4}, VertexSet{5, 6, 7}, VertexSet{8, 9, 10, 11}};
  uneven.part_size = 3;
  auto bad = is_good_partition(k12, tri, uneven, 0.5);
  CHECK_FALSE(bad.ok);
  CHECK(bad.violated == PartitionCheck::Condition::kEqualSizes);

  // Cliques {0..5} and {6..11}; splitting along them has no cross edges.
  Graph two = gen_two_clique_extremal(6);
  Graph edge = Graph::from_edges(2, std::vector<Edge>{{0, 1}});
  GoodPartition halves;
  halves.parts = {VertexSet{0, 1, 2, 3, 4, 5}, VertexSet{6, 7, 8, 9, 10, 11}};
  halves.part_size = 6;
  auto cut = is_good_partition(two, edge, halves, 0.1);
  CHECK_FALSE(cut.ok);
  CHECK(cut.violated == PartitionCheck::Condition::kPairMinDegree);
  CHECK(cut.degree == 0);
  CHECK_FALSE(cut.describe().empty());

  GoodPartition overlapping;
  overlapping.parts = {VertexSet{0, 1, 2, 3, 4, 5}, VertexSet{5, 6, 7, 8, 9, 10}};
  CHECK_THROWS_AS(is_good_partition(two, edge, overlapping, 0.1), std::invalid_argument);
  GoodPartition wrong_count;
  wrong_count.parts = {VertexSet{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}};
  CHECK_THROWS_AS(is_good_partition(two, edge, wrong_count, 0.1), std::invalid_argument);
}

TEST_CASE("good_partition on complete and Dirac hosts") {
  const std::size_t n = 4, d = 3, C = 12;
  Graph h = complete_graph(n);
  Graph kn = complete_graph(C * d * n);
  auto out = good_partition(kn, h, 0.6, 0.1, 10, 1);
  CHECK(out.attempts == 1);
  CHECK(is_good_partition(kn, h, out.partition, 0.5).ok);
  CHECK(out.partition.part_size == C * d);

  // Perfect matching pattern on a Dirac host.
  Graph matching = Graph::from_edges(4, std::vector<Edge>{{0, 1}, {2, 3}});
  Graph host = gen_dirac_host({4, 1, 20, 0.2, 11});
  auto m = good_partition(host, matching, 0.6, 0.1, 5, 3);
  CHECK(m.attempts <= 5);
  CHECK(is_good_partition(host, matching, m.partition, 0.5).ok);

  // Dense but non-complete host.
  Graph er = gen_erdos_renyi(144, 0.9, 5);
  const double alpha = static_cast<double>(min_degree(er).value) / 144.0;
  auto e = good_partition(er, h, alpha, 0.1, 200, 9);
  CHECK(is_good_partition(er, h, e.partition, alpha - 0.1).ok);

  SECTION("same seed, same partition") {
    auto again = good_partition(er, h, alpha, 0.1, 200, 9);
    CHECK(again.attempts == e.attempts);
    for (std::size_t i = 0; i < n; ++i) CHECK(again.partition.parts[i] == e.partition.parts[i]);
  }
}

TEST_CASE("good_partition errors") {
  Graph h = complete_graph(4);
  Graph two = gen_two_clique_extremal(72);
  CHECK_THROWS_AS(good_partition(two, h, 0.6, 0.1, 10, 0), PreconditionError);
  CHECK_THROWS_AS(good_partition(complete_graph(10), h, 0.6, 0.1, 10, 0), PreconditionError);

  // Condition holds (71 >= 0.49 * 144) but the cliques rarely split evenly enough.
  try {
    good_partition(two, h, 0.49, 0.0, 3, 0);
    FAIL("expected BudgetExhausted");
  } catch (const BudgetExhausted& ex) {
    CHECK(ex.stage() == "good_partition");
    CHECK(ex.attempts() == 3);
    CHECK(ex.detail().find("worst violation") != std::string::npos);
  }
}

TEST_CASE("block sizes") {
  CHECK(block_sizes(12, 3) == std::vector<std::size_t>{11, 11, 10});
  CHECK(block_sizes(8, 1) == std::vector<std::size_t>{6});
  std::vector<std::size_t> extra{2, 0, 1};
  CHECK(block_sizes(12, 3, extra) == std::vector<std::size_t>{13, 11, 11});
}

TEST_CASE("block_partition on complete groups") {
  for (std::size_t d : {1u, 2u, 3u, 5u, 8u}) {
    const std::size_t C = 10;
    INFO("d = " << d);
    Graph g = complete_graph(C * d + 7);
    std::vector<Vertex> members(C * d);
    for (std::size_t i = 0; i < members.size(); ++i) members[i] = static_cast<Vertex>(i + 7);
    VertexSet group(members);
    std::vector<Vertex> connectors;
    for (std::size_t l = 0; l < d; ++l) connectors.push_back(static_cast<Vertex>(8 + l));
    auto out = block_partition(g, group, 7, connectors, {0.75, 0.1, 10}, 4);
    const auto sizes = block_sizes(C, d);
    CHECK(check_block_partition(g, group, out.partition, C, sizes, 0.65).ok);
    CHECK(out.max_level_attempts == 1);
    std::size_t total = 1 + d;
    for (const auto& b : out.partition.blocks) total += b.size();
    CHECK(total == C * d);
  }
}

TEST_CASE("block_partition on a group of a Dirac host") {
  const std::size_t n = 4, d = 3, C = 12;
  Graph h = complete_graph(n);
  Graph g = gen_dirac_host({n, d, C, 0.2, 21});
  auto gp = good_partition(g, h, 0.6, 0.05, 50, 2);
  const VertexSet& group = gp.partition.parts[0];
  auto m = group.members();
  std::vector<Vertex> connectors{m[1], m[2], m[3]};
  BlockParams params{0.6, 0.05, 200};
  auto out = block_partition(g, group, m[0], connectors, params, 8);
  std::vector<std::size_t> got;
  for (const auto& b : out.partition.blocks) got.push_back(b.size());
  CHECK(got == std::vector<std::size_t>{11, 11, 10});
  CHECK(check_block_partition(g, group, out.partition, C, block_sizes(C, d), params.alpha - params.delta).ok);
}

TEST_CASE("block_partition on non-complete groups across C and d") {
  for (std::size_t d : {2u, 4u, 6u}) {
    for (std::size_t C : {8u, 14u, 20u}) {
      INFO("d = " << d << ", C = " << C);
      Graph g = gen_erdos_renyi(C * d, 0.85, derive_seed(3, {d, C}));
      VertexSet group = VertexSet::range(static_cast<Vertex>(C * d));
      std::vector<Vertex> connectors;
      for (std::size_t l = 0; l < d; ++l) connectors.push_back(static_cast<Vertex>(l + 1));
      BlockParams params{min_degree_fraction(g, group), 0.2, 500};
      auto out = block_partition(g, group, 0, connectors, params, 17);
      CHECK(check_block_partition(g, group, out.partition, C, block_sizes(C, d), params.alpha - params.delta).ok);
    }
  }
}

TEST_CASE("block_partition errors") {
  Graph g = complete_graph(30);
  std::vector<Vertex> all(30);
  for (std::size_t i = 0; i < 30; ++i) all[i] = static_cast<Vertex>(i);
  VertexSet group(all);
  std::vector<Vertex> none;
  std::vector<Vertex> dup{1, 1, 2};
  std::vector<Vertex> three{1, 2, 3};
  std::vector<Vertex> four{1, 2, 3, 4};
  CHECK_THROWS_AS(block_partition(g, group, 0, none, {}, 0), std::invalid_argument);
  CHECK_THROWS_AS(block_partition(g, group, 0, dup, {}, 0), std::invalid_argument);
  CHECK_THROWS_AS(block_partition(g, group, 1, three, {}, 0), std::invalid_argument);
  CHECK_THROWS_AS(block_partition(g, group, 0, four, {}, 0), std::invalid_argument);  // 30 % 4 != 0
  CHECK_THROWS_AS(block_partition(g, group, 0, three, {0.5, 0.05, 0}, 0), std::invalid_argument);
  std::vector<Vertex> fifteen{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
  CHECK_THROWS_AS(block_partition(g, group, 0, fifteen, {}, 0), std::invalid_argument);  // C = 2

  // Two cliques of 10 inside a 20-vertex group, d = 1: the only block mixes
  // both cliques, and a vertex of the clique losing center and connector has
  // 7 neighbours in a block of 18 against 0.45 * 20 = 9.
  Graph two = gen_two_clique_extremal(10);
  std::vector<Vertex> v20(20);
  for (std::size_t i = 0; i < 20; ++i) v20[i] = static_cast<Vertex>(i);
  std::vector<Vertex> one{1};
  try {
    block_partition(two, VertexSet(v20), 0, one, {0.45, 0.0, 5}, 0);
    FAIL("expected BudgetExhausted");
  } catch (const BudgetExhausted& ex) {
    CHECK(ex.stage() == "block_partition");
  }
  CHECK_THROWS_AS(block_partition(two, VertexSet(v20), 0, one, {0.5, 0.0, 5}, 0), PreconditionError);
}

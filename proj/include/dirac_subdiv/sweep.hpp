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

// Success-rate experiments over grids of (n, d, C, epsilon).

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "dirac_subdiv/embedder.hpp"
#include "dirac_subdiv/generators.hpp"
#include "dirac_subdiv/graph.hpp"
#include "dirac_subdiv/random.hpp"

namespace dirac {

enum class HostKind { kDirac, kComplete, kTwoClique };

inline std::string to_string(HostKind kind) {
  switch (kind) {
    case HostKind::kDirac:
      return "dirac";
    case HostKind::kComplete:
      return "complete";
    case HostKind::kTwoClique:
      return "two-clique";
  }
  return "?";
}

inline HostKind parse_host_kind(const std::string& name) {
  if (name == "dirac") return HostKind::kDirac;
  if (name == "complete") return HostKind::kComplete;
  if (name == "two-clique") return HostKind::kTwoClique;
  throw std::invalid_argument("unknown host kind '" + name + "'");
}

struct SweepSpec {
  std::vector<std::size_t> ns{4};
  std::vector<std::size_t> ds{3};
  std::vector<std::size_t> Cs{12};
  std::vector<double> epsilons{0.25};
  std::size_t trials = 5;
  std::uint64_t seed_base = 0;
  HostKind host = HostKind::kDirac;
  EmbedConfig embed;       // seed, C and epsilon are overwritten per trial
  std::size_t threads = 0;  // 0: DIRAC_SUBDIV_THREADS, else hardware concurrency
};

struct SweepRow {
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t C = 0;
  double epsilon = 0.0;
  HostKind host = HostKind::kDirac;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  double mean_global_attempts = 0.0;
  double mean_good_partition_attempts = 0.0;
  double mean_block_partition_retries = 0.0;
  double mean_hampath_restarts = 0.0;
  double mean_wall_ms = 0.0;
  bool non_monotone = false;
  std::string note;
};

/// Worker count: explicit value, else DIRAC_SUBDIV_THREADS, else the
/// hardware concurrency (at least 1).
inline std::size_t resolve_thread_count(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("DIRAC_SUBDIV_THREADS")) {
    char* end = nullptr;
    unsigned long value = std::strtoul(env, &end, 10);
    if (end != env && value > 0) return value;
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

namespace detail {

struct TrialResult {
  bool success = false;
  EmbedStats stats;
  double wall_ms = 0.0;
  std::string note;
};

inline TrialResult run_trial(const SweepSpec& spec, std::size_t n, std::size_t d, std::size_t C, double epsilon,
                             std::uint64_t seed) {
  TrialResult result;
  try {
    Graph h = d + 1 == n ? complete_graph(n) : gen_random_regular(n, d, derive_seed(seed, {'H'}));
    const std::size_t n_host = C * d * n;
    Graph g;
    switch (spec.host) {
      case HostKind::kDirac:
        g = gen_dirac_host({n, d, C, epsilon, derive_seed(seed, {'G'})});
        break;
      case HostKind::kComplete:
        g = complete_graph(n_host);
        break;
      case HostKind::kTwoClique:
        g = gen_two_clique_extremal((n_host + 1) / 2);
        break;
    }
    EmbedConfig cfg = spec.embed;
    cfg.C = C;
    cfg.epsilon = epsilon;
    cfg.seed = derive_seed(seed, {'E'});
    EmbedReport report = embed_subdivision(g, h, cfg);
    result.success = report.success;
    result.stats = report.stats;
    result.wall_ms = report.wall_ms;
    if (!report.success) result.note = report.failed_stage;
  } catch (const std::exception& e) {
    result.note = "generation";
  }
  return result;
}

// Flags rows whose success rate exceeds that of a row with larger epsilon in
// the same (n, d, C, host) series.
inline void flag_non_monotone(std::vector<SweepRow>& rows) {
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, HostKind>, std::vector<SweepRow*>> series;
  for (auto& row : rows) {
    if (row.trials > 0) series[{row.n, row.d, row.C, row.host}].push_back(&row);
  }
  for (auto& [key, members] : series) {
    for (SweepRow* row : members) {
      for (const SweepRow* other : members) {
        if (other->epsilon > row->epsilon && row->success_rate > other->success_rate) row->non_monotone = true;
      }
    }
  }
}

}  // namespace detail

/// Runs every (n, d, C, epsilon) cell `trials` times.  Trial seeds are
/// derive_seed(seed_base, {cell, trial}) and results are aggregated by index,
/// so the rows do not depend on the thread count.  Invalid cells and failing
/// trials are recorded in the row, never thrown.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("sweep needs at least one trial per cell");
  std::vector<SweepRow> rows;
  for (std::size_t n : spec.ns) {
    for (std::size_t d : spec.ds) {
      for (std::size_t C : spec.Cs) {
        for (double eps : spec.epsilons) {
          SweepRow row;
          row.n = n;
          row.d = d;
          row.C = C;
          row.epsilon = eps;
          row.host = spec.host;
          if (n < 2 || d < 1 || d >= n || (n * d) % 2 != 0 || C < 3 || !(eps > 0.0)) {
            row.note = "invalid cell";
          } else {
            row.trials = spec.trials;
          }
          rows.push_back(row);
        }
      }
    }
  }

  struct Task {
    std::size_t row;
    std::size_t trial;
  };
  std::vector<Task> tasks;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t t = 0; t < rows[r].trials; ++t) tasks.push_back({r, t});
  }
  std::vector<detail::TrialResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      const SweepRow& row = rows[tasks[k].row];
      results[k] = detail::run_trial(spec, row.n, row.d, row.C, row.epsilon,
                                     derive_seed(spec.seed_base, {tasks[k].row, tasks[k].trial}));
    }
  };
  const std::size_t n_threads = std::min(resolve_thread_count(spec.threads), std::max<std::size_t>(tasks.size(), 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < n_threads; ++w) pool.emplace_back(worker);
    worker();
  }

  std::vector<std::map<std::string, std::size_t>> notes(rows.size());
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    SweepRow& row = rows[tasks[k].row];
    const auto& r = results[k];
    row.successes += r.success ? 1 : 0;
    row.mean_global_attempts += static_cast<double>(r.stats.global_attempts);
    row.mean_good_partition_attempts += static_cast<double>(r.stats.good_partition_attempts);
    row.mean_block_partition_retries += static_cast<double>(r.stats.block_partition_retries);
    row.mean_hampath_restarts += static_cast<double>(r.stats.hampath_restarts);
    row.mean_wall_ms += r.wall_ms;
    if (!r.note.empty()) ++notes[tasks[k].row][r.note];
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    SweepRow& row = rows[r];
    if (row.trials == 0) continue;
    const double t = static_cast<double>(row.trials);
    row.success_rate = static_cast<double>(row.successes) / t;
    row.mean_global_attempts /= t;
    row.mean_good_partition_attempts /= t;
    row.mean_block_partition_retries /= t;
    row.mean_hampath_restarts /= t;
    row.mean_wall_ms /= t;
    std::string joined;
    for (const auto& [stage, count] : notes[r]) {
      joined += (joined.empty() ? "" : " ") + stage + ":" + std::to_string(count);
    }
    row.note = joined;
  }
  detail::flag_non_monotone(rows);
  return rows;
}

namespace detail {

inline std::string fixed(double value, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << value;
  return out.str();
}

}  // namespace detail

/// Machine-readable result table.  Deliberately free of timings so that a
/// rerun with the same seed base reproduces it byte for byte.
inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "n,d,C,epsilon,host,trials,successes,success_rate,mean_global_attempts,"
         "mean_good_partition_attempts,mean_block_partition_retries,mean_hampath_restarts,non_monotone,note\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.d << ',' << r.C << ',' << detail::fixed(r.epsilon, 4) << ',' << to_string(r.host) << ','
        << r.trials << ',' << r.successes << ',' << detail::fixed(r.success_rate, 4) << ','
        << detail::fixed(r.mean_global_attempts, 3) << ',' << detail::fixed(r.mean_good_partition_attempts, 3) << ','
        << detail::fixed(r.mean_block_partition_retries, 3) << ',' << detail::fixed(r.mean_hampath_restarts, 3)
        << ',' << (r.non_monotone ? 1 : 0) << ',' << r.note << '\n';
  }
}

/// Aligned table for humans, including mean wall time per trial.
inline void write_sweep_table(std::ostream& out, const std::vector<SweepRow>& rows) {
  const std::vector<std::string> header{"n", "d", "C", "eps", "host", "ok/trials", "rate", "gp_att", "hp_rst",
                                        "ms", "flag", "note"};
  std::vector<std::vector<std::string>> cells{header};
  for (const auto& r : rows) {
    cells.push_back({std::to_string(r.n), std::to_string(r.d), std::to_string(r.C), detail::fixed(r.epsilon, 3),
                     to_string(r.host), std::to_string(r.successes) + "/" + std::to_string(r.trials),
                     detail::fixed(r.success_rate, 2), detail::fixed(r.mean_good_partition_attempts, 1),
                     detail::fixed(r.mean_hampath_restarts, 1), detail::fixed(r.mean_wall_ms, 1),
                     r.non_monotone ? "non-monotone" : "", r.note});
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      out << std::left << std::setw(static_cast<int>(width[c]) + 2) << line[c];
    }
    out << '\n';
  }
}

}  // namespace dirac

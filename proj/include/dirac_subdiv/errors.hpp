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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace dirac {

/// Input violates a documented precondition of an operation (as opposed to a
/// malformed argument, which is reported as std::invalid_argument).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A randomized generator gave up after its retry budget.
class GenerationFailure : public std::runtime_error {
 public:
  GenerationFailure(const std::string& what, std::size_t attempts)
      : std::runtime_error(what + " (after " + std::to_string(attempts) + " attempts)"),
        attempts_(attempts) {}

  std::size_t attempts() const noexcept { return attempts_; }

 private:
  std::size_t attempts_;
};

/// A verify-and-retry loop ran out of attempts.  `detail` names the check
/// that kept failing.
class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted(std::string stage, std::size_t attempts, std::string detail)
      : std::runtime_error(stage + ": budget exhausted after " + std::to_string(attempts) +
                           " attempts; " + detail),
        stage_(std::move(stage)),
        attempts_(attempts),
        detail_(std::move(detail)) {}

  const std::string& stage() const noexcept { return stage_; }
  std::size_t attempts() const noexcept { return attempts_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string stage_;
  std::size_t attempts_;
  std::string detail_;
};

/// Connector selection found no unused cross edge for pattern edge (i, j).
class ConnectorStarved : public std::runtime_error {
 public:
  ConnectorStarved(std::size_t i, std::size_t j)
      : std::runtime_error("no unused cross edge between parts " + std::to_string(i) + " and " +
                           std::to_string(j)),
        i_(i),
        j_(j) {}

  std::size_t i() const noexcept { return i_; }
  std::size_t j() const noexcept { return j_; }

 private:
  std::size_t i_;
  std::size_t j_;
};

class SizeLimitExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace dirac

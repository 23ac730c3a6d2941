// Copyright 2026 The seerl Authors
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

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace seerl {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Invalid input to a numeric routine: non-finite values, dimension mismatch.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid or inconsistent configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A caller broke a documented precondition (e.g. sampling more than stored).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A loss or target became NaN/Inf during training.
class NonFiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Seeded random stream. Named substreams of one master seed are
/// statistically independent and stable across platforms that share the
/// same standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0);

  /// Stream derived from (seed, name); the same pair always yields the same
  /// sequence.
  static Rng substream(std::uint64_t seed, std::string_view name);

  double uniform();                       // [0, 1)
  double uniform(double low, double high);
  double normal();                        // N(0, 1)
  std::uint64_t next_u64();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  std::string serialize() const;
  void deserialize(const std::string& state);

  friend bool operator==(const Rng& a, const Rng& b) {
    return a.engine_ == b.engine_ && a.normal_ == b.normal_;
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

std::uint64_t fnv1a64(std::string_view text);

}  // namespace seerl

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
#include <filesystem>
#include <fstream>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "seerl/approx/checkpoint.hpp"
#include "seerl/envs.hpp"
#include "seerl/explore/see.hpp"
#include "seerl/harness/config.hpp"

namespace seerl::harness {

/// One evaluation point. Unavailable quantities (no finished training
/// episode yet, no update since the last row) are NaN.
struct MetricsRow {
  std::int64_t step = 0;
  std::int64_t episode = 0;
  double eval_return_mean = 0.0;
  double eval_return_stderr = 0.0;
  double train_episode_return = 0.0;
  double exploration_reward_mean = 0.0;
  double p_exploit_mean = 0.0;
  double exploit_critic_loss = 0.0;
  double exploit_actor_loss = 0.0;
  double explore_critic_loss = 0.0;
  double explore_actor_loss = 0.0;
  double wall_time = 0.0;
  /// Fraction of evaluation episodes that earned the goal reward at least once.
  double eval_goal_rate = 0.0;
};

/// Column names in file order.
const std::vector<std::string>& metrics_columns();
std::string metrics_header();
/// Comma-separated row; doubles use shortest round-trip formatting.
std::string format_metrics_row(const MetricsRow& row);

/// Appends rows to `<dir>/metrics.csv`, flushing after each one.
class MetricsWriter {
 public:
  explicit MetricsWriter(const std::filesystem::path& path);
  void write(const MetricsRow& row);

 private:
  std::ofstream out_;
};

struct EvalResult {
  double mean = 0.0;
  double stderr_ = 0.0;  // standard error of the mean, 0 for one episode
  double goal_rate = 0.0;
  std::vector<double> returns;
};

/// Environment-scale action for an observation.
using Policy = std::function<Vector(const Vector&)>;

/// Runs `episodes` full episodes of `policy` on `env`; episode i resets
/// with a seed derived from (seed, i). Requires episodes >= 1.
EvalResult evaluate(const Policy& policy, envs::Environment& env, int episodes, std::uint64_t seed);

/// Deterministic exploitation policy of `agent`, mapped to env bounds.
Policy exploitation_policy(const explore::Agent& agent, const envs::MdpSpec& spec);

struct TrainHooks {
  /// Called after each metrics row; returning true ends training early.
  std::function<bool(const MetricsRow&)> stop;
  /// Called after every environment step (step index, transition, mix decision or nullptr).
  std::function<void(std::int64_t, const envs::Transition&, const explore::MixDecision*)> on_step;
};

struct TrainResult {
  std::vector<MetricsRow> rows;
  MetricsRow final_row;
  approx::Checkpoint checkpoint;
  bool stopped_early = false;
};

/// Runs a full training session. With `out_dir` set, writes
/// metrics.csv, config.txt and checkpoint.json under it. A non-finite loss
/// aborts with NonFiniteError after the rows so far are on disk.
TrainResult train(const TrainConfig& config, const TrainHooks& hooks = {});

/// Snapshot of all learner parameters, update counts and temperatures.
approx::Checkpoint make_checkpoint(const explore::Agent& agent, const TrainConfig& config);
/// Restores parameters written by make_checkpoint into an agent built with
/// the same configuration. Throws DomainError on a topology mismatch.
void restore_checkpoint(const approx::Checkpoint& checkpoint, explore::Agent& agent);

/// Config echo as "key = value" lines, readable back as a config file.
std::string format_config(const TrainConfig& config);

}  // namespace seerl::harness

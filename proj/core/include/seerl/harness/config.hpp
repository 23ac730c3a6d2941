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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seerl/base/actor_critic.hpp"
#include "seerl/envs.hpp"
#include "seerl/explore/see.hpp"

namespace seerl::harness {

/// Every knob of a training run. Defaults are the classic-control
/// hyperparameters used for Pendulum and LocalOptimumCar.
struct TrainConfig {
  base::Algo algo = base::Algo::kSac;
  bool see_enabled = true;
  std::string env = "pendulum";
  envs::RewardVariant variant = envs::RewardVariant::kDense;
  std::uint64_t seed = 0;

  std::int64_t total_steps = 100000;
  std::int64_t warm_up_steps = 1000;
  std::int64_t eval_every = 1000;
  int eval_episodes = 10;

  double learning_rate = 1e-3;
  int batch_size = 256;
  double gamma = 0.99;
  std::int64_t buffer_size = 200000;
  double tau = 0.005;
  std::vector<int> hidden_dims{400, 300};
  int probe_count = 16;

  // SAC
  double initial_temperature = 1.0;
  std::optional<double> target_entropy;  // unset = auto (-action_dim)
  bool exploration_entropy_in_target = true;

  // TD3
  int policy_delay = 2;
  double target_noise = 0.2;
  double target_noise_clip = 0.5;
  double action_noise = 0.1;      // base TD3 rollout noise
  double see_action_noise = 0.0;  // TD3+SEE candidate noise

  // Behavior-policy mixing
  double mix_lambda = 0.5;
  double mix_temperature = 1.0;

  explore::AblationMode ablation;

  std::string out_dir;  // empty: keep everything in memory
  bool record_wall_time = false;
  bool write_checkpoint = true;

  /// Throws ConfigError on any invalid value.
  void validate() const;

  /// Ordered key/value pairs; keys match the long CLI flag names.
  std::vector<std::pair<std::string, std::string>> echo() const;
};

std::string format_hidden_dims(const std::vector<int>& dims);
/// Parses "400,300"; throws ConfigError on malformed input.
std::vector<int> parse_hidden_dims(const std::string& text);

base::LearnerConfig learner_config(const TrainConfig& config, const envs::MdpSpec& spec);
explore::AgentConfig agent_config(const TrainConfig& config, const envs::MdpSpec& spec);

}  // namespace seerl::harness

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
#include <string_view>
#include <vector>

#include "seerl/approx/networks.hpp"
#include "seerl/approx/param_set.hpp"
#include "seerl/approx/tape.hpp"
#include "seerl/base/optimizer.hpp"
#include "seerl/envs.hpp"

namespace seerl::base {

enum class Algo { kSac, kTd3 };

std::string_view to_string(Algo algo);
Algo parse_algo(std::string_view text);

/// How twin critics are combined into the value the actor ascends: SAC
/// takes the minimum, TD3 the first critic.
enum class ValueRule { kMinOfTwin, kFirst };

ValueRule value_rule(Algo algo);
double actor_value(ValueRule rule, double q1, double q2);
approx::Var actor_value(ValueRule rule, approx::Var q1, approx::Var q2);

/// How the critic target combines the reward with the bootstrapped value.
enum class TargetRule {
  kAdditive,   // r + gamma * (1 - terminated) * next
  kMaxReward,  // max(r, gamma * next), r alone on terminal transitions
};

double bellman_target(TargetRule rule, double reward, double next_value, double gamma,
                      bool terminated);

/// A minibatch in matrix form. Actions are in the normalized [-1, 1] space.
struct Batch {
  Matrix obs;
  Matrix action;
  Vector reward;
  Vector terminated;  // 1.0 or 0.0
  Matrix next_obs;

  Eigen::Index size() const { return obs.rows(); }
};

Batch make_batch(const std::vector<envs::Transition>& transitions,
                 const approx::ActionScaling& scaling);

struct LearnerConfig {
  Algo algo = Algo::kSac;
  int obs_dim = 1;
  int action_dim = 1;
  std::vector<int> hidden_dims{400, 300};
  double learning_rate = 1e-3;
  double gamma = 0.99;
  double tau = 0.005;
  // SAC
  double initial_temperature = 1.0;
  std::optional<double> target_entropy;  // unset = -action_dim
  bool entropy_in_target = true;
  // TD3
  int policy_delay = 2;
  double target_noise = 0.2;
  double target_noise_clip = 0.5;
  // Fingerprint conditioning of both critics (0 = plain critics).
  int probe_count = 0;
  Vector obs_low;
  Vector obs_high;

  void validate() const;
};

struct CriticUpdateInfo {
  double loss = 0.0;
  Vector target;
  Vector q1;
  Vector q2;
};

struct ActorUpdateInfo {
  bool updated = false;
  double actor_loss = 0.0;
  double temperature_loss = 0.0;
  double alpha = 0.0;
  double mean_log_prob = 0.0;
};

struct UpdateInfo {
  CriticUpdateInfo critic;
  ActorUpdateInfo actor;
};

/// Twin-critic actor-critic learner implementing the unmodified SAC and TD3
/// update rules. The same machinery drives the exploration objective: the
/// reward vector, the target rule and an optional conditioning value
/// function are parameters of the update.
class ActorCritic {
  // Declared first: the public parameter members are built from these.
  LearnerConfig config_;
  approx::Critic critic_net_;
  std::optional<approx::SquashedGaussianPolicy> gaussian_;
  std::optional<approx::DeterministicPolicy> deterministic_;
  std::int64_t update_count_ = 0;

 public:
  ActorCritic(LearnerConfig config, Rng& init_rng);

  const LearnerConfig& config() const { return config_; }
  Algo algo() const { return config_.algo; }
  ValueRule rule() const { return value_rule(config_.algo); }

  /// SAC temperature; 0 for TD3.
  double alpha() const;
  double target_entropy() const;

  /// Both critics at (obs, action), parameters frozen.
  std::pair<approx::Var, approx::Var> critic_values(approx::Tape& tape, approx::Var obs,
                                                    approx::Var action,
                                                    const approx::QEvaluator* condition) const;
  /// Value used by the actor update (min of twins for SAC, first for TD3).
  approx::Var value(approx::Tape& tape, approx::Var obs, approx::Var action,
                    const approx::QEvaluator* condition = nullptr) const;
  /// Frozen evaluator of value(); captures this learner by reference.
  approx::QEvaluator evaluator() const;

  /// Bootstrapped next-state value per transition: min target critics at a
  /// next action from the current policy, minus the entropy term for SAC;
  /// TD3 uses the smoothed target policy.
  Vector next_state_value(const Batch& batch, Rng& rng,
                          const approx::QEvaluator* condition = nullptr) const;

  /// One optimizer step on both critics toward
  /// bellman_target(rule, rewards, next_state_value).
  CriticUpdateInfo critic_update(const Batch& batch, const Vector& rewards, TargetRule rule,
                                 Rng& rng, const approx::QEvaluator* condition = nullptr);
  /// Actor step (and temperature step for SAC).
  ActorUpdateInfo actor_update(const Batch& batch, Rng& rng,
                               const approx::QEvaluator* condition = nullptr);
  void update_targets();

  /// One full gradient step of the base algorithm: critics every call;
  /// SAC updates actor, temperature and targets every call, TD3 updates
  /// actor and targets every policy_delay calls.
  UpdateInfo update(const Batch& batch, Rng& rng);
  UpdateInfo update(const Batch& batch, const Vector& rewards, TargetRule rule, Rng& rng,
                    const approx::QEvaluator* condition);

  /// Normalized action for one observation. SAC samples unless
  /// `deterministic`; TD3 adds N(0, noise_std) and clips to [-1, 1].
  Vector act(const Vector& obs, Rng& rng, bool deterministic, double noise_std = 0.0) const;

  std::int64_t update_count() const { return update_count_; }

  // Parameters and optimizer state are public for checkpointing and tests.
  approx::ParamSet actor;
  approx::ParamSet target_actor;  // TD3 only
  approx::ParamSet critic1;
  approx::ParamSet critic2;
  approx::ParamSet target_critic1;
  approx::ParamSet target_critic2;
  approx::ParamSet log_alpha;  // SAC only: entry "log_alpha", 1x1

  Adam actor_optimizer;
  Adam critic1_optimizer;
  Adam critic2_optimizer;
  std::optional<Adam> alpha_optimizer;

  const approx::Critic& critic_net() const { return critic_net_; }
  const std::optional<approx::SquashedGaussianPolicy>& gaussian_policy() const { return gaussian_; }
  const std::optional<approx::DeterministicPolicy>& deterministic_policy() const {
    return deterministic_;
  }
  void set_update_count(std::int64_t n) { update_count_ = n; }

 private:
  approx::Var policy_action(approx::Tape& tape, const approx::ParamSet& params, approx::Var obs,
                            const Matrix& noise, approx::Var* log_prob, bool trainable) const;
};

}  // namespace seerl::base

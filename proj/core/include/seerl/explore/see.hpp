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

#include <optional>
#include <utility>

#include "seerl/approx/networks.hpp"
#include "seerl/base/actor_critic.hpp"
#include "seerl/envs.hpp"
#include "seerl/types.hpp"

namespace seerl::explore {

/// Switches that each replace one component of the exploration method.
struct AblationMode {
  bool no_conditioning = false;  // exploration critic sees (s, a) only
  bool no_max_update = false;    // additive Bellman target instead of the max target
  bool no_mixing = false;        // strict alternation instead of Boltzmann selection

  bool any() const { return no_conditioning || no_max_update || no_mixing; }
  friend bool operator==(const AblationMode&, const AblationMode&) = default;
};

/// Boltzmann selection between the two candidate actions. The logits are
/// lambda * A_Q / temperature and (1 - lambda) * A_Delta / temperature.
struct MixConfig {
  double lambda = 0.5;
  double temperature = 1.0;

  void validate() const;
};

enum class Candidate { kExploit = 0, kExplore = 1 };

struct MixDecision {
  Vector exploit_action;
  Vector explore_action;
  double exploit_advantage = 0.0;
  double explore_advantage = 0.0;
  double p_exploit = 0.5;
  double p_explore = 0.5;
  Candidate chosen = Candidate::kExploit;

  const Vector& action() const {
    return chosen == Candidate::kExploit ? exploit_action : explore_action;
  }
};

// ---- scalar building blocks -------------------------------------------

/// |r + gamma * (1 - terminated) * q_next - q_current|.
double exploration_reward(double reward, double gamma, bool terminated, double q_next,
                          double q_current);

/// max(r_delta, gamma * next_value) on non-terminal transitions, r_delta on
/// terminal ones.
double max_bellman_target(double r_delta, double next_value, double gamma, bool terminated);

struct RelativeAdvantages {
  double exploit = 0.0;  // Q(s, a_Q) - Q(s, a_Delta)
  double explore = 0.0;  // Delta(s, a_Delta) - Delta(s, a_Q)
};

RelativeAdvantages relative_advantages(double q_at_exploit, double q_at_explore,
                                       double delta_at_explore, double delta_at_exploit);

/// Selection probabilities (p_exploit, p_explore); they sum to one exactly.
std::pair<double, double> selection_probabilities(double exploit_advantage,
                                                  double explore_advantage,
                                                  const MixConfig& mix);

/// Draws one candidate under the Boltzmann distribution over the two
/// scaled advantages. Candidate actions in the result are left empty.
MixDecision behavior_sample(double exploit_advantage, double explore_advantage,
                            const MixConfig& mix, Rng& rng);

/// Strict alternation used when mixing is ablated; starts with exploitation.
class Alternator {
 public:
  Candidate next();
  void reset() { next_ = Candidate::kExploit; }

 private:
  Candidate next_ = Candidate::kExploit;
};

// ---- network-level operations -----------------------------------------

/// Per-transition exploration reward using the online exploitation
/// critics and next actions sampled from the exploitation actor.
Vector exploration_rewards(const base::Batch& batch, const base::ActorCritic& exploit, Rng& rng);

/// Relative advantages of two candidate actions at `obs`. `condition` is
/// the exploitation value function the exploration critic is conditioned
/// on, or nullptr when conditioning is ablated.
RelativeAdvantages relative_advantages(const Vector& obs, const Vector& exploit_action,
                                       const Vector& explore_action,
                                       const base::ActorCritic& exploit,
                                       const base::ActorCritic& explore,
                                       const approx::QEvaluator* condition);

/// Conditioned exploration value Delta(s, a, theta) under the actor-update
/// rule, for a single state-action pair (normalized action).
double conditioned_value(const base::ActorCritic& explore, const Vector& obs,
                         const Vector& action, const approx::QEvaluator* condition);

// ---- agent --------------------------------------------------------------

struct AgentConfig {
  base::LearnerConfig learner;  // exploitation objective; exploration copies it
  bool see_enabled = true;
  AblationMode ablation;
  MixConfig mix;
  int probe_count = 16;
  /// Gaussian noise added to TD3 rollout actions when SEE is disabled.
  double base_action_noise = 0.1;
  /// Noise on both TD3 candidate actions when SEE is enabled.
  double see_action_noise = 0.0;
  /// SAC only: keep the exploration policy's entropy term in the
  /// exploration critic target.
  bool exploration_entropy_in_target = true;
};

struct ActionChoice {
  Vector action;  // normalized
  std::optional<MixDecision> mix;
};

struct AgentUpdate {
  base::UpdateInfo exploit;
  std::optional<base::UpdateInfo> explore;
  double exploration_reward_mean = 0.0;
  Vector exploration_rewards;
};

/// Exploitation learner plus, when enabled, the exploration learner and the
/// mixed behavior policy. The exploitation learner is updated exactly as
/// the base algorithm would be; exploration only consumes its parameters.
class Agent {
 public:
  Agent(AgentConfig config, const envs::MdpSpec& spec, Rng& init_rng);
  Agent(const Agent&) = delete;
  Agent& operator=(const Agent&) = delete;

  const AgentConfig& config() const { return config_; }
  base::ActorCritic& exploit() { return exploit_; }
  const base::ActorCritic& exploit() const { return exploit_; }
  base::ActorCritic* explore() { return explore_ ? &*explore_ : nullptr; }
  const base::ActorCritic* explore() const { return explore_ ? &*explore_ : nullptr; }

  /// Value function the exploration critic is conditioned on, or nullptr
  /// without SEE or under the no-conditioning ablation.
  const approx::QEvaluator* condition() const { return condition_ ? &*condition_ : nullptr; }

  /// Training-rollout action (after warm-up).
  ActionChoice select_action(const Vector& obs, Rng& rng);
  /// Evaluation action: deterministic exploitation policy.
  Vector evaluation_action(const Vector& obs) const;

  /// One gradient step: the unmodified base update with `exploit_rng`,
  /// then (with SEE) the exploration update with `explore_rng`.
  AgentUpdate update(const base::Batch& batch, Rng& exploit_rng, Rng& explore_rng);

  const Alternator& alternator() const { return alternator_; }

 private:
  AgentConfig config_;
  base::ActorCritic exploit_;
  std::optional<base::ActorCritic> explore_;
  std::optional<approx::QEvaluator> condition_;
  Alternator alternator_;
};

}  // namespace seerl::explore

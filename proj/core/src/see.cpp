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

#include "seerl/explore/see.hpp"

#include <algorithm>
#include <cmath>

namespace seerl::explore {

using approx::Tape;
using approx::Var;

void MixConfig::validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("MixConfig: lambda must lie in [0, 1]");
  if (!(temperature > 0.0)) throw ConfigError("MixConfig: temperature must be positive");
}

double exploration_reward(double reward, double gamma, bool terminated, double q_next,
                          double q_current) {
  return std::abs(reward + (terminated ? 0.0 : gamma * q_next) - q_current);
}

double max_bellman_target(double r_delta, double next_value, double gamma, bool terminated) {
  return base::bellman_target(base::TargetRule::kMaxReward, r_delta, next_value, gamma, terminated);
}

RelativeAdvantages relative_advantages(double q_at_exploit, double q_at_explore,
                                       double delta_at_explore, double delta_at_exploit) {
  return {q_at_exploit - q_at_explore, delta_at_explore - delta_at_exploit};
}

std::pair<double, double> selection_probabilities(double exploit_advantage,
                                                  double explore_advantage, const MixConfig& mix) {
  mix.validate();
  const double z_exploit = mix.lambda * exploit_advantage / mix.temperature;
  const double z_explore = (1.0 - mix.lambda) * explore_advantage / mix.temperature;
  const double top = std::max(z_exploit, z_explore);
  const double e_exploit = std::exp(z_exploit - top);
  const double e_explore = std::exp(z_explore - top);
  const double p = e_exploit / (e_exploit + e_explore);
  return {p, 1.0 - p};
}

MixDecision behavior_sample(double exploit_advantage, double explore_advantage,
                            const MixConfig& mix, Rng& rng) {
  if (!std::isfinite(exploit_advantage) || !std::isfinite(explore_advantage))
    throw NonFiniteError("behavior_sample: non-finite advantage");
  MixDecision d;
  d.exploit_advantage = exploit_advantage;
  d.explore_advantage = explore_advantage;
  std::tie(d.p_exploit, d.p_explore) = selection_probabilities(exploit_advantage, explore_advantage, mix);
  d.chosen = rng.uniform() < d.p_exploit ? Candidate::kExploit : Candidate::kExplore;
  return d;
}

Candidate Alternator::next() {
  const Candidate c = next_;
  next_ = c == Candidate::kExploit ? Candidate::kExplore : Candidate::kExploit;
  return c;
}

// ---------------------------------------------------------------------------

Vector exploration_rewards(const base::Batch& batch, const base::ActorCritic& exploit, Rng& rng) {
  const Eigen::Index n = batch.size();
  const int act_dim = exploit.config().action_dim;
  Tape tape;
  Var next_obs = tape.constant(batch.next_obs);
  Var next_action;
  if (const auto& policy = exploit.gaussian_policy()) {
    Matrix noise(n, act_dim);
    for (Eigen::Index j = 0; j < act_dim; ++j)
      for (Eigen::Index i = 0; i < n; ++i) noise(i, j) = rng.normal();
    next_action = policy->sample(tape, exploit.actor, next_obs, noise, false).action;
  } else {
    next_action = exploit.deterministic_policy()->forward(tape, exploit.actor, next_obs, false);
  }
  const Matrix q_next = exploit.value(tape, next_obs, next_action).value();
  const Matrix q_now = exploit.value(tape, tape.constant(batch.obs), tape.constant(batch.action)).value();

  const double gamma = exploit.config().gamma;
  Vector r_delta(n);
  for (Eigen::Index i = 0; i < n; ++i)
    r_delta[i] = exploration_reward(batch.reward[i], gamma, batch.terminated[i] > 0.5, q_next(i, 0),
                                    q_now(i, 0));
  if (!r_delta.allFinite()) throw NonFiniteError("exploration_rewards: non-finite reward");
  return r_delta;
}

RelativeAdvantages relative_advantages(const Vector& obs, const Vector& exploit_action,
                                       const Vector& explore_action,
                                       const base::ActorCritic& exploit,
                                       const base::ActorCritic& explore,
                                       const approx::QEvaluator* condition) {
  Tape tape;
  Matrix obs_rows(2, obs.size());
  obs_rows.row(0) = obs.transpose();
  obs_rows.row(1) = obs.transpose();
  Matrix actions(2, exploit_action.size());
  actions.row(0) = exploit_action.transpose();
  actions.row(1) = explore_action.transpose();
  Var o = tape.constant(obs_rows);
  Var a = tape.constant(actions);
  const Matrix q = exploit.value(tape, o, a).value();
  const Matrix delta = explore.value(tape, o, a, condition).value();
  return relative_advantages(q(0, 0), q(1, 0), delta(1, 0), delta(0, 0));
}

double conditioned_value(const base::ActorCritic& explore, const Vector& obs, const Vector& action,
                         const approx::QEvaluator* condition) {
  Tape tape;
  return explore
      .value(tape, tape.constant(obs.transpose()), tape.constant(action.transpose()), condition)
      .value()(0, 0);
}

// ---------------------------------------------------------------------------

namespace {

base::LearnerConfig exploration_learner(const AgentConfig& config, const envs::MdpSpec& spec) {
  base::LearnerConfig c = config.learner;
  c.probe_count = config.ablation.no_conditioning ? 0 : config.probe_count;
  c.obs_low = spec.obs_low;
  c.obs_high = spec.obs_high;
  c.entropy_in_target = config.exploration_entropy_in_target;
  return c;
}

const AgentConfig& checked(const AgentConfig& config, const envs::MdpSpec& spec) {
  spec.validate();
  if (config.learner.obs_dim != spec.state_dim || config.learner.action_dim != spec.action_dim)
    throw ConfigError("Agent: learner dimensions do not match the environment");
  if (config.see_enabled && !config.ablation.no_conditioning && config.probe_count < 1)
    throw ConfigError("Agent: probe count must be >= 1");
  config.mix.validate();
  return config;
}

}  // namespace

Agent::Agent(AgentConfig config, const envs::MdpSpec& spec, Rng& init_rng)
    : config_(checked(config, spec)), exploit_(config_.learner, init_rng) {
  if (!config_.see_enabled) return;
  explore_.emplace(exploration_learner(config_, spec), init_rng);
  if (!config_.ablation.no_conditioning) condition_ = exploit_.evaluator();
}

ActionChoice Agent::select_action(const Vector& obs, Rng& rng) {
  if (!explore_) {
    const bool td3 = exploit_.algo() == base::Algo::kTd3;
    return {exploit_.act(obs, rng, false, td3 ? config_.base_action_noise : 0.0), std::nullopt};
  }
  MixDecision d;
  d.exploit_action = exploit_.act(obs, rng, false, config_.see_action_noise);
  d.explore_action = explore_->act(obs, rng, false, config_.see_action_noise);
  if (config_.ablation.no_mixing) {
    d.chosen = alternator_.next();
    d.p_exploit = d.chosen == Candidate::kExploit ? 1.0 : 0.0;
    d.p_explore = 1.0 - d.p_exploit;
  } else {
    const RelativeAdvantages adv =
        relative_advantages(obs, d.exploit_action, d.explore_action, exploit_, *explore_, condition());
    MixDecision drawn = behavior_sample(adv.exploit, adv.explore, config_.mix, rng);
    drawn.exploit_action = std::move(d.exploit_action);
    drawn.explore_action = std::move(d.explore_action);
    d = std::move(drawn);
  }
  ActionChoice choice{d.action(), std::move(d)};
  return choice;
}

Vector Agent::evaluation_action(const Vector& obs) const {
  Rng unused(0);
  return exploit_.act(obs, unused, true);
}

AgentUpdate Agent::update(const base::Batch& batch, Rng& exploit_rng, Rng& explore_rng) {
  AgentUpdate out;
  out.exploit = exploit_.update(batch, exploit_rng);
  if (!explore_) return out;
  out.exploration_rewards = exploration_rewards(batch, exploit_, explore_rng);
  out.exploration_reward_mean = out.exploration_rewards.mean();
  const auto rule = config_.ablation.no_max_update ? base::TargetRule::kAdditive
                                                   : base::TargetRule::kMaxReward;
  out.explore = explore_->update(batch, out.exploration_rewards, rule, explore_rng, condition());
  return out;
}

}  // namespace seerl::explore

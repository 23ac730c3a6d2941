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

#include "seerl/base/actor_critic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace seerl::base {

using approx::ParamSet;
using approx::Tape;
using approx::Var;

namespace {

Matrix standard_normal(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.normal();
  return m;
}

void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) throw NonFiniteError(std::string(what) + " is not finite");
}

const LearnerConfig& validated(const LearnerConfig& config) {
  config.validate();
  return config;
}

ParamSet make_log_alpha(const LearnerConfig& config) {
  ParamSet p;
  if (config.algo == Algo::kSac)
    p.add("log_alpha", Matrix::Constant(1, 1, std::log(config.initial_temperature)));
  return p;
}

Vector probe_low(const LearnerConfig& c) {
  return c.obs_low.size() == c.obs_dim ? c.obs_low : Vector::Constant(c.obs_dim, -1.0);
}

Vector probe_high(const LearnerConfig& c) {
  return c.obs_high.size() == c.obs_dim ? c.obs_high : Vector::Constant(c.obs_dim, 1.0);
}

}  // namespace

std::string_view to_string(Algo algo) { return algo == Algo::kSac ? "sac" : "td3"; }

Algo parse_algo(std::string_view text) {
  if (text == "sac") return Algo::kSac;
  if (text == "td3") return Algo::kTd3;
  throw ConfigError("unknown algorithm '" + std::string(text) + "'");
}

ValueRule value_rule(Algo algo) { return algo == Algo::kSac ? ValueRule::kMinOfTwin : ValueRule::kFirst; }

double actor_value(ValueRule rule, double q1, double q2) {
  return rule == ValueRule::kMinOfTwin ? std::min(q1, q2) : q1;
}

Var actor_value(ValueRule rule, Var q1, Var q2) {
  return rule == ValueRule::kMinOfTwin ? approx::minimum(q1, q2) : q1;
}

double bellman_target(TargetRule rule, double reward, double next_value, double gamma,
                      bool terminated) {
  if (rule == TargetRule::kAdditive) return reward + (terminated ? 0.0 : gamma * next_value);
  if (terminated) return reward;
  return std::max(reward, gamma * next_value);
}

Batch make_batch(const std::vector<envs::Transition>& transitions,
                 const approx::ActionScaling& scaling) {
  if (transitions.empty()) throw PreconditionError("make_batch: empty batch");
  const auto n = static_cast<Eigen::Index>(transitions.size());
  const auto obs_dim = transitions.front().obs.size();
  const auto act_dim = transitions.front().action.size();
  Batch b;
  b.obs.resize(n, obs_dim);
  b.next_obs.resize(n, obs_dim);
  b.action.resize(n, act_dim);
  b.reward.resize(n);
  b.terminated.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& t = transitions[static_cast<std::size_t>(i)];
    if (t.obs.size() != obs_dim || t.next_obs.size() != obs_dim || t.action.size() != act_dim)
      throw DomainError("make_batch: inconsistent transition dimensions");
    b.obs.row(i) = t.obs.transpose();
    b.next_obs.row(i) = t.next_obs.transpose();
    b.action.row(i) = scaling.to_normalized(t.action).transpose();
    b.reward[i] = t.reward;
    b.terminated[i] = t.terminated ? 1.0 : 0.0;
  }
  return b;
}

void LearnerConfig::validate() const {
  if (obs_dim <= 0 || action_dim <= 0) throw ConfigError("LearnerConfig: dimensions must be positive");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("LearnerConfig: gamma must lie in [0, 1)");
  if (!(tau >= 0.0 && tau <= 1.0)) throw ConfigError("LearnerConfig: tau must lie in [0, 1]");
  if (!(learning_rate > 0.0)) throw ConfigError("LearnerConfig: learning rate must be positive");
  if (!(initial_temperature > 0.0)) throw ConfigError("LearnerConfig: temperature must be positive");
  if (policy_delay < 1) throw ConfigError("LearnerConfig: policy delay must be >= 1");
  if (target_noise < 0.0 || target_noise_clip < 0.0)
    throw ConfigError("LearnerConfig: target noise parameters must be non-negative");
  if (probe_count < 0) throw ConfigError("LearnerConfig: probe count must be >= 0");
}

// ---------------------------------------------------------------------------

ActorCritic::ActorCritic(LearnerConfig config, Rng& init_rng)
    : config_(validated(config)),
      critic_net_(config_.obs_dim, config_.action_dim, config_.hidden_dims, config_.probe_count),
      gaussian_(config_.algo == Algo::kSac
                    ? std::optional<approx::SquashedGaussianPolicy>(std::in_place, config_.obs_dim,
                                                                    config_.action_dim,
                                                                    config_.hidden_dims)
                    : std::nullopt),
      deterministic_(config_.algo == Algo::kTd3
                         ? std::optional<approx::DeterministicPolicy>(
                               std::in_place, config_.obs_dim, config_.action_dim,
                               config_.hidden_dims)
                         : std::nullopt),
      actor(gaussian_ ? gaussian_->init(init_rng) : deterministic_->init(init_rng)),
      target_actor(config_.algo == Algo::kTd3 ? actor : ParamSet{}),
      critic1(critic_net_.init(init_rng, probe_low(config_), probe_high(config_))),
      critic2(critic_net_.init(init_rng, probe_low(config_), probe_high(config_))),
      target_critic1(critic1),
      target_critic2(critic2),
      log_alpha(make_log_alpha(config_)),
      actor_optimizer(actor, config_.learning_rate),
      critic1_optimizer(critic1, config_.learning_rate),
      critic2_optimizer(critic2, config_.learning_rate) {
  if (config_.algo == Algo::kSac) alpha_optimizer.emplace(log_alpha, config_.learning_rate);
}

double ActorCritic::alpha() const {
  return config_.algo == Algo::kSac ? std::exp(log_alpha.value(0)(0, 0)) : 0.0;
}

double ActorCritic::target_entropy() const {
  return config_.target_entropy.value_or(-static_cast<double>(config_.action_dim));
}

std::pair<Var, Var> ActorCritic::critic_values(Tape& tape, Var obs, Var action,
                                               const approx::QEvaluator* condition) const {
  return {critic_net_.forward(tape, critic1, obs, action, condition, false),
          critic_net_.forward(tape, critic2, obs, action, condition, false)};
}

Var ActorCritic::value(Tape& tape, Var obs, Var action, const approx::QEvaluator* condition) const {
  if (rule() == ValueRule::kFirst)
    return critic_net_.forward(tape, critic1, obs, action, condition, false);
  auto [q1, q2] = critic_values(tape, obs, action, condition);
  return actor_value(rule(), q1, q2);
}

approx::QEvaluator ActorCritic::evaluator() const {
  if (critic_net_.conditioned())
    throw DomainError("ActorCritic::evaluator: conditioned critics cannot be fingerprinted");
  return [this](Tape& tape, Var obs, Var action) { return value(tape, obs, action, nullptr); };
}

Var ActorCritic::policy_action(Tape& tape, const ParamSet& params, Var obs, const Matrix& noise,
                               Var* log_prob, bool trainable) const {
  if (gaussian_) {
    auto s = gaussian_->sample(tape, params, obs, noise, trainable);
    if (log_prob) *log_prob = s.log_prob;
    return s.action;
  }
  return deterministic_->forward(tape, params, obs, trainable);
}

Vector ActorCritic::next_state_value(const Batch& batch, Rng& rng,
                                     const approx::QEvaluator* condition) const {
  const Eigen::Index n = batch.size();
  Tape tape;
  Var next_obs = tape.constant(batch.next_obs);
  Matrix noise = standard_normal(n, config_.action_dim, rng);
  Var next_action;
  Var log_prob;
  if (config_.algo == Algo::kSac) {
    next_action = policy_action(tape, actor, next_obs, noise, &log_prob, false);
  } else {
    const Matrix smoothing = (noise * config_.target_noise)
                                 .cwiseMax(-config_.target_noise_clip)
                                 .cwiseMin(config_.target_noise_clip);
    Var raw = deterministic_->forward(tape, target_actor, next_obs, false);
    next_action = tape.constant((raw.value() + smoothing).cwiseMax(-1.0).cwiseMin(1.0));
  }
  Var q1 = critic_net_.forward(tape, target_critic1, next_obs, next_action, condition, false);
  Var q2 = critic_net_.forward(tape, target_critic2, next_obs, next_action, condition, false);
  Vector v = q1.value().cwiseMin(q2.value()).col(0);
  if (config_.algo == Algo::kSac && config_.entropy_in_target)
    v -= alpha() * log_prob.value().col(0);
  return v;
}

CriticUpdateInfo ActorCritic::critic_update(const Batch& batch, const Vector& rewards,
                                            TargetRule rule, Rng& rng,
                                            const approx::QEvaluator* condition) {
  if (batch.size() == 0) throw PreconditionError("critic_update: empty batch");
  if (rewards.size() != batch.size()) throw DomainError("critic_update: reward length mismatch");
  const Vector next = next_state_value(batch, rng, condition);

  CriticUpdateInfo info;
  info.target.resize(batch.size());
  for (Eigen::Index i = 0; i < batch.size(); ++i)
    info.target[i] = bellman_target(rule, rewards[i], next[i], config_.gamma, batch.terminated[i] > 0.5);
  if (!info.target.allFinite()) throw NonFiniteError("critic_update: non-finite target");

  Tape tape;
  Var obs = tape.constant(batch.obs);
  Var action = tape.constant(batch.action);
  Var target = tape.constant(info.target);
  Var q1 = critic_net_.forward(tape, critic1, obs, action, condition, true);
  Var q2 = critic_net_.forward(tape, critic2, obs, action, condition, true);
  Var loss = 0.5 * (approx::mean(approx::square(q1 - target)) + approx::mean(approx::square(q2 - target)));
  info.loss = loss.scalar();
  require_finite(info.loss, "critic loss");
  info.q1 = q1.value().col(0);
  info.q2 = q2.value().col(0);

  tape.backward(loss);
  critic1_optimizer.step(critic1, tape.gradients(critic1));
  critic2_optimizer.step(critic2, tape.gradients(critic2));
  return info;
}

ActorUpdateInfo ActorCritic::actor_update(const Batch& batch, Rng& rng,
                                          const approx::QEvaluator* condition) {
  ActorUpdateInfo info;
  info.updated = true;
  Tape tape;
  Var obs = tape.constant(batch.obs);
  const Matrix noise = config_.algo == Algo::kSac
                           ? standard_normal(batch.size(), config_.action_dim, rng)
                           : Matrix::Zero(batch.size(), config_.action_dim);
  Var log_prob;
  Var action = policy_action(tape, actor, obs, noise, &log_prob, true);
  Var q = value(tape, obs, action, condition);

  const double current_alpha = alpha();
  Var loss = config_.algo == Algo::kSac ? approx::mean(log_prob * current_alpha - q)
                                        : -approx::mean(q);
  info.actor_loss = loss.scalar();
  require_finite(info.actor_loss, "actor loss");
  tape.backward(loss);
  actor_optimizer.step(actor, tape.gradients(actor));

  if (config_.algo == Algo::kSac) {
    info.mean_log_prob = log_prob.value().mean();
    // loss = alpha * mean(-log_prob - target_entropy); d/d(log alpha) = loss.
    const double gap = -info.mean_log_prob - target_entropy();
    info.temperature_loss = current_alpha * gap;
    require_finite(info.temperature_loss, "temperature loss");
    ParamSet grad = log_alpha.zeros_like();
    grad.value(0)(0, 0) = current_alpha * gap;
    alpha_optimizer->step(log_alpha, grad);
  }
  info.alpha = alpha();
  return info;
}

void ActorCritic::update_targets() {
  approx::soft_target_update(critic1, target_critic1, config_.tau);
  approx::soft_target_update(critic2, target_critic2, config_.tau);
  if (config_.algo == Algo::kTd3) approx::soft_target_update(actor, target_actor, config_.tau);
}

UpdateInfo ActorCritic::update(const Batch& batch, Rng& rng) {
  return update(batch, batch.reward, TargetRule::kAdditive, rng, nullptr);
}

UpdateInfo ActorCritic::update(const Batch& batch, const Vector& rewards, TargetRule rule, Rng& rng,
                               const approx::QEvaluator* condition) {
  ++update_count_;
  UpdateInfo info;
  info.critic = critic_update(batch, rewards, rule, rng, condition);
  if (config_.algo == Algo::kSac || update_count_ % config_.policy_delay == 0) {
    info.actor = actor_update(batch, rng, condition);
    update_targets();
  }
  return info;
}

Vector ActorCritic::act(const Vector& obs, Rng& rng, bool deterministic, double noise_std) const {
  Tape tape;
  Var o = tape.constant(obs.transpose());
  if (gaussian_) {
    if (deterministic) return gaussian_->deterministic(tape, actor, o, false).value().row(0).transpose();
    Matrix noise = standard_normal(1, config_.action_dim, rng);
    return gaussian_->sample(tape, actor, o, noise, false).action.value().row(0).transpose();
  }
  Vector a = deterministic_->forward(tape, actor, o, false).value().row(0).transpose();
  if (!deterministic && noise_std > 0.0)
    for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = std::clamp(a[i] + noise_std * rng.normal(), -1.0, 1.0);
  return a;
}

}  // namespace seerl::base

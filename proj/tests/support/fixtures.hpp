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

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "seerl/base/actor_critic.hpp"

namespace seerl::testing {

inline base::LearnerConfig tiny_config(base::Algo algo, int obs_dim = 1, int action_dim = 1) {
  base::LearnerConfig c;
  c.algo = algo;
  c.obs_dim = obs_dim;
  c.action_dim = action_dim;
  c.hidden_dims = {2};
  return c;
}

inline void zero_all(approx::ParamSet& p) {
  for (std::size_t i = 0; i < p.size(); ++i) p.value(i).setZero();
}

/// Every output equals `value` (one hidden layer, weights zeroed).
inline void make_constant_critic(approx::ParamSet& p, double value) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i].name.rfind("probe_", 0) != 0) p.value(i).setZero();
  p.at("l1.bias")(0, 0) = value;
}

/// Q(s, a) = sign * |a - peak| for a 1-D action, or Q = a when `tent` is false.
inline void make_action_critic(approx::ParamSet& p, int obs_dim, bool tent, double peak = 0.0,
                               double sign = -1.0) {
  make_constant_critic(p, 0.0);
  Matrix& w0 = p.at("l0.weight");
  Matrix& b0 = p.at("l0.bias");
  Matrix& w1 = p.at("l1.weight");
  w0(obs_dim, 0) = 1.0;
  w0(obs_dim, 1) = -1.0;
  b0(0, 0) = -peak;
  b0(0, 1) = peak;
  w1(0, 0) = tent ? sign : 1.0;
  w1(1, 0) = tent ? sign : -1.0;
}

/// Squashed Gaussian actor with a state-independent mean and log std.
inline void make_constant_gaussian(approx::ParamSet& p, double mean, double log_std) {
  zero_all(p);
  p.at("l1.bias")(0, 0) = mean;
  p.at("l1.bias")(0, 1) = log_std;
}

/// Deterministic actor emitting tanh(pre) for every state.
inline void make_constant_deterministic(approx::ParamSet& p, double pre) {
  zero_all(p);
  p.at("l1.bias")(0, 0) = pre;
}

/// log density of tanh(mean + exp(log_std) * eps) in the normalized action space.
inline double squashed_log_prob(double mean, double log_std, double eps) {
  const double u = mean + std::exp(log_std) * eps;
  const double t = std::tanh(u);
  return -0.5 * eps * eps - 0.5 * std::log(2.0 * std::numbers::pi) - log_std - std::log(1.0 - t * t);
}

inline base::Batch single_batch(double obs, double action, double reward, double next_obs,
                                bool terminated) {
  base::Batch b;
  b.obs = Matrix::Constant(1, 1, obs);
  b.action = Matrix::Constant(1, 1, action);
  b.reward = Vector::Constant(1, reward);
  b.terminated = Vector::Constant(1, terminated ? 1.0 : 0.0);
  b.next_obs = Matrix::Constant(1, 1, next_obs);
  return b;
}

inline base::Batch random_batch(int n, int obs_dim, int action_dim, Rng& rng, double p_terminal = 0.2) {
  base::Batch b;
  b.obs.resize(n, obs_dim);
  b.next_obs.resize(n, obs_dim);
  b.action.resize(n, action_dim);
  b.reward.resize(n);
  b.terminated.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < obs_dim; ++j) {
      b.obs(i, j) = rng.uniform(-1.0, 1.0);
      b.next_obs(i, j) = rng.uniform(-1.0, 1.0);
    }
    for (int j = 0; j < action_dim; ++j) b.action(i, j) = rng.uniform(-1.0, 1.0);
    b.reward[i] = rng.uniform(-1.0, 1.0);
    b.terminated[i] = rng.uniform() < p_terminal ? 1.0 : 0.0;
  }
  return b;
}

}  // namespace seerl::testing

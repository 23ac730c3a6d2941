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

#include <functional>
#include <utility>
#include <vector>

#include "seerl/approx/param_set.hpp"
#include "seerl/types.hpp"

/// Brute-force reference implementations. Everything here is deliberately
/// simple and independent of the learning code it is used to check.
namespace seerl::oracle {

/// Finite MDP. Transitions are stochastic in general; a deterministic MDP
/// has a single 1.0 entry per (s, a) row.
struct TabularMdp {
  int n_states = 1;
  int n_actions = 1;
  /// next_state[s][a] = list of (probability, next state index).
  std::vector<std::vector<std::vector<std::pair<double, int>>>> next;
  /// reward[s][a]
  std::vector<std::vector<double>> reward;
  /// Terminal states contribute no future value.
  std::vector<bool> terminal;
  double gamma = 0.99;

  /// Throws ConfigError on out-of-range indices or rows not summing to 1.
  void validate() const;

  static TabularMdp deterministic(int n_states, int n_actions,
                                  const std::vector<std::vector<int>>& next_state,
                                  std::vector<std::vector<double>> reward,
                                  std::vector<bool> terminal, double gamma);
  /// Random MDP with `n_states` <= 10 style sizes; rewards uniform in
  /// [-1, 1], a random number of successors per row.
  static TabularMdp random(int n_states, int n_actions, double gamma, Rng& rng,
                           bool stochastic = true);
};

/// Q[s][a]
using QTable = std::vector<std::vector<double>>;

QTable zero_q(const TabularMdp& mdp);

/// One application of the maximum-reward operator:
/// (TQ)(s, a) = max(r(s, a), gamma * E_{s'} max_a' Q(s', a')),
/// where a terminal successor is absorbing and contributes value 0.
QTable apply_max_reward_operator(const TabularMdp& mdp, const QTable& q);

struct ValueIterationResult {
  QTable q;
  int iterations = 0;
  double residual = 0.0;  // sup |TQ - Q| at the returned Q
};

/// Iterates the operator from Q = 0 until the sup-norm change drops below
/// `tol`. Requires gamma < 1; throws ConfigError if tol <= 0.
ValueIterationResult max_reward_value_iteration(const TabularMdp& mdp, double tol = 1e-8,
                                                int max_iterations = 1000000);

double sup_norm_distance(const QTable& a, const QTable& b);

/// max over `trials` random pairs of ||TQ - TQ'|| / ||Q - Q'|| (sup norm);
/// a pair with Q == Q' contributes 0.
double contraction_check(const TabularMdp& mdp, int trials, Rng& rng);

/// Closed-form two-way Boltzmann probabilities (p_exploit, p_explore) for
/// logits lambda * A_Q / tau and (1 - lambda) * A_Delta / tau.
std::pair<double, double> mixing_distribution_exact(double exploit_advantage,
                                                    double explore_advantage, double lambda,
                                                    double tau_mix);

/// Central differences (f(p + h e_i) - f(p - h e_i)) / 2h for every scalar
/// of `params`. Throws ConfigError if h <= 0.
approx::ParamSet finite_difference_gradients(
    const std::function<double(const approx::ParamSet&)>& loss, const approx::ParamSet& params,
    double h = 1e-5);

/// Largest single-step discounted reward gamma^k * r reachable from (s, a)
/// along any deterministic path of length <= depth (exhaustive search);
/// reaching a terminal state contributes 0.
/// Only defined for deterministic MDPs.
double best_discounted_reward_on_paths(const TabularMdp& mdp, int state, int action, int depth);

}  // namespace seerl::oracle

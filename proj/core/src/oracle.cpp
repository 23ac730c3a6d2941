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

#include "seerl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace seerl::oracle {

void TabularMdp::validate() const {
  if (n_states < 1 || n_actions < 1) throw ConfigError("TabularMdp: sizes must be positive");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("TabularMdp: gamma must lie in [0, 1)");
  if (static_cast<int>(next.size()) != n_states || static_cast<int>(reward.size()) != n_states ||
      static_cast<int>(terminal.size()) != n_states)
    throw ConfigError("TabularMdp: table sizes do not match n_states");
  for (int s = 0; s < n_states; ++s) {
    if (static_cast<int>(next[s].size()) != n_actions ||
        static_cast<int>(reward[s].size()) != n_actions)
      throw ConfigError("TabularMdp: table sizes do not match n_actions");
    for (int a = 0; a < n_actions; ++a) {
      double total = 0.0;
      for (auto [p, s2] : next[s][a]) {
        if (s2 < 0 || s2 >= n_states) throw ConfigError("TabularMdp: successor out of range");
        if (p < 0.0) throw ConfigError("TabularMdp: negative probability");
        total += p;
      }
      if (std::abs(total - 1.0) > 1e-12) throw ConfigError("TabularMdp: row does not sum to 1");
    }
  }
}

TabularMdp TabularMdp::deterministic(int n_states, int n_actions,
                                     const std::vector<std::vector<int>>& next_state,
                                     std::vector<std::vector<double>> reward,
                                     std::vector<bool> terminal, double gamma) {
  TabularMdp mdp;
  mdp.n_states = n_states;
  mdp.n_actions = n_actions;
  mdp.next.assign(static_cast<std::size_t>(n_states), {});
  for (int s = 0; s < n_states; ++s)
    for (int a = 0; a < n_actions; ++a) mdp.next[s].push_back({{1.0, next_state.at(s).at(a)}});
  mdp.reward = std::move(reward);
  mdp.terminal = std::move(terminal);
  mdp.gamma = gamma;
  mdp.validate();
  return mdp;
}

TabularMdp TabularMdp::random(int n_states, int n_actions, double gamma, Rng& rng, bool stochastic) {
  TabularMdp mdp;
  mdp.n_states = n_states;
  mdp.n_actions = n_actions;
  mdp.gamma = gamma;
  mdp.next.assign(static_cast<std::size_t>(n_states), {});
  mdp.reward.assign(static_cast<std::size_t>(n_states), std::vector<double>(n_actions));
  mdp.terminal.assign(static_cast<std::size_t>(n_states), false);
  for (int s = 0; s < n_states; ++s) {
    mdp.terminal[s] = n_states > 1 && rng.uniform() < 0.2;
    for (int a = 0; a < n_actions; ++a) {
      mdp.reward[s][a] = rng.uniform(-1.0, 1.0);
      const int k = stochastic ? 1 + static_cast<int>(rng.below(std::min(3, n_states))) : 1;
      std::vector<std::pair<double, int>> row;
      double total = 0.0;
      for (int i = 0; i < k; ++i) {
        const double w = rng.uniform(0.1, 1.0);
        row.emplace_back(w, static_cast<int>(rng.below(static_cast<std::uint64_t>(n_states))));
        total += w;
      }
      double acc = 0.0;
      for (std::size_t i = 0; i + 1 < row.size(); ++i) {
        row[i].first /= total;
        acc += row[i].first;
      }
      row.back().first = 1.0 - acc;
      mdp.next[s].push_back(std::move(row));
    }
  }
  mdp.validate();
  return mdp;
}

QTable zero_q(const TabularMdp& mdp) {
  return QTable(static_cast<std::size_t>(mdp.n_states), std::vector<double>(mdp.n_actions, 0.0));
}

QTable apply_max_reward_operator(const TabularMdp& mdp, const QTable& q) {
  std::vector<double> state_value(static_cast<std::size_t>(mdp.n_states));
  for (int s = 0; s < mdp.n_states; ++s)
    state_value[s] = mdp.terminal[s] ? 0.0 : *std::max_element(q[s].begin(), q[s].end());
  QTable out = zero_q(mdp);
  for (int s = 0; s < mdp.n_states; ++s) {
    for (int a = 0; a < mdp.n_actions; ++a) {
      double expected = 0.0;
      for (auto [p, s2] : mdp.next[s][a]) expected += p * state_value[s2];
      out[s][a] = std::max(mdp.reward[s][a], mdp.gamma * expected);
    }
  }
  return out;
}

double sup_norm_distance(const QTable& a, const QTable& b) {
  double d = 0.0;
  for (std::size_t s = 0; s < a.size(); ++s)
    for (std::size_t k = 0; k < a[s].size(); ++k) d = std::max(d, std::abs(a[s][k] - b[s][k]));
  return d;
}

ValueIterationResult max_reward_value_iteration(const TabularMdp& mdp, double tol,
                                                int max_iterations) {
  if (!(tol > 0.0)) throw ConfigError("max_reward_value_iteration: tol must be positive");
  mdp.validate();
  ValueIterationResult result;
  result.q = zero_q(mdp);
  for (int it = 1; it <= max_iterations; ++it) {
    QTable next = apply_max_reward_operator(mdp, result.q);
    const double change = sup_norm_distance(next, result.q);
    result.q = std::move(next);
    result.iterations = it;
    if (change < tol) break;
  }
  result.residual = sup_norm_distance(apply_max_reward_operator(mdp, result.q), result.q);
  return result;
}

double contraction_check(const TabularMdp& mdp, int trials, Rng& rng) {
  if (trials < 1) throw ConfigError("contraction_check: trials must be >= 1");
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    QTable q1 = zero_q(mdp);
    QTable q2 = zero_q(mdp);
    const double scale = rng.uniform(0.1, 10.0);
    for (int s = 0; s < mdp.n_states; ++s)
      for (int a = 0; a < mdp.n_actions; ++a) {
        q1[s][a] = scale * rng.uniform(-1.0, 1.0);
        q2[s][a] = scale * rng.uniform(-1.0, 1.0);
      }
    const double denom = sup_norm_distance(q1, q2);
    if (denom == 0.0) continue;
    const double num =
        sup_norm_distance(apply_max_reward_operator(mdp, q1), apply_max_reward_operator(mdp, q2));
    worst = std::max(worst, num / denom);
  }
  return worst;
}

std::pair<double, double> mixing_distribution_exact(double exploit_advantage,
                                                    double explore_advantage, double lambda,
                                                    double tau_mix) {
  if (!(tau_mix > 0.0)) throw ConfigError("mixing_distribution_exact: tau must be positive");
  // Two-way softmax written as a logistic of the logit gap.
  const double gap = (lambda * exploit_advantage - (1.0 - lambda) * explore_advantage) / tau_mix;
  const double p = 1.0 / (1.0 + std::exp(-gap));
  return {p, 1.0 - p};
}

approx::ParamSet finite_difference_gradients(
    const std::function<double(const approx::ParamSet&)>& loss, const approx::ParamSet& params,
    double h) {
  if (!(h > 0.0)) throw ConfigError("finite_difference_gradients: h must be positive");
  approx::ParamSet grads = params.zeros_like();
  approx::ParamSet probe = params;
  for (std::size_t e = 0; e < params.size(); ++e) {
    for (Eigen::Index k = 0; k < params.value(e).size(); ++k) {
      const double original = params.value(e).data()[k];
      probe.value(e).data()[k] = original + h;
      const double up = loss(probe);
      probe.value(e).data()[k] = original - h;
      const double down = loss(probe);
      probe.value(e).data()[k] = original;
      grads.value(e).data()[k] = (up - down) / (2.0 * h);
    }
  }
  return grads;
}

double best_discounted_reward_on_paths(const TabularMdp& mdp, int state, int action, int depth) {
  const auto& row = mdp.next.at(state).at(action);
  if (row.size() != 1) throw ConfigError("best_discounted_reward_on_paths: MDP must be deterministic");
  double best = mdp.reward[state][action];
  if (depth <= 1) return best;
  const int s2 = row.front().second;
  // A terminal successor is absorbing with value 0.
  if (mdp.terminal[s2]) return std::max(best, 0.0);
  double tail = -std::numeric_limits<double>::infinity();
  for (int a2 = 0; a2 < mdp.n_actions; ++a2)
    tail = std::max(tail, best_discounted_reward_on_paths(mdp, s2, a2, depth - 1));
  return std::max(best, mdp.gamma * tail);
}

}  // namespace seerl::oracle

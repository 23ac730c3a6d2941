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

#include <cstddef>
#include <functional>
#include <vector>

#include "seerl/approx/param_set.hpp"
#include "seerl/approx/tape.hpp"
#include "seerl/types.hpp"

namespace seerl::approx {

enum class Activation { kRelu, kTanh };

struct MlpSpec {
  int input_dim = 1;
  int output_dim = 1;
  std::vector<int> hidden_dims{400, 300};
  Activation activation = Activation::kRelu;

  void validate() const;
  /// Number of (weight, bias) layers.
  std::size_t layer_count() const { return hidden_dims.size() + 1; }
};

/// Appends layers "<prefix>l<i>.weight" (in x out) and "<prefix>l<i>.bias"
/// (1 x out) to `params`. Weights and biases are fan-in uniform; the output
/// layer is additionally multiplied by `final_layer_scale`.
void append_mlp(ParamSet& params, const MlpSpec& spec, Rng& rng, double final_layer_scale,
                const std::string& prefix = "");
ParamSet init_mlp(const MlpSpec& spec, Rng& rng, double final_layer_scale = 1.0);

/// Forward pass with the MLP stored at entries [first_entry, first_entry +
/// 2 * layer_count()). Hidden layers use spec.activation; the output is linear.
Var mlp_forward(Tape& tape, const ParamSet& params, const MlpSpec& spec, Var input,
                bool trainable = true, std::size_t first_entry = 0);
/// Tape-free single-sample convenience wrapper.
Vector mlp_forward(const ParamSet& params, const MlpSpec& spec, const Vector& input);

/// Maps policy actions in [-1, 1]^d to environment bounds and back.
struct ActionScaling {
  Vector low;
  Vector high;

  Vector to_env(const Vector& normalized) const;
  Vector to_normalized(const Vector& env_action) const;
  Matrix to_normalized_rows(const Matrix& env_actions) const;
};

inline constexpr double kLogStdMin = -20.0;
inline constexpr double kLogStdMax = 2.0;

struct GaussianPolicyOutput {
  Vector action;             // environment scale, strictly inside the bounds
  Vector normalized_action;  // in (-1, 1)
  double log_prob = 0.0;     // density of normalized_action
  Vector pre_squash_mean;
  Vector log_std;
};

/// Tanh-squashed diagonal Gaussian policy: the network emits the mean and
/// log standard deviation of the pre-squash Gaussian.
class SquashedGaussianPolicy {
 public:
  SquashedGaussianPolicy(int obs_dim, int action_dim, std::vector<int> hidden_dims);

  ParamSet init(Rng& rng) const;

  struct Sample {
    Var action;    // normalized, batch x action_dim
    Var log_prob;  // batch x 1, includes the squash correction
    Var mean;
    Var log_std;
  };
  /// Reparameterised draw given standard-normal `noise` (batch x action_dim).
  Sample sample(Tape& tape, const ParamSet& params, Var obs, const Matrix& noise,
                bool trainable = true) const;
  /// tanh(mean), the evaluation-mode action.
  Var deterministic(Tape& tape, const ParamSet& params, Var obs, bool trainable = true) const;

  GaussianPolicyOutput sample(const ParamSet& params, const Vector& obs, Rng& rng,
                              const ActionScaling& scaling) const;
  GaussianPolicyOutput deterministic(const ParamSet& params, const Vector& obs,
                                     const ActionScaling& scaling) const;

  const MlpSpec& mlp() const { return spec_; }
  int action_dim() const { return action_dim_; }

 private:
  GaussianPolicyOutput sample_with_noise(const ParamSet& params, const Vector& obs,
                                         const Vector& noise, const ActionScaling& scaling) const;
  MlpSpec spec_;
  int action_dim_;
};

/// Deterministic tanh policy (TD3 actor).
class DeterministicPolicy {
 public:
  DeterministicPolicy(int obs_dim, int action_dim, std::vector<int> hidden_dims);

  ParamSet init(Rng& rng) const;
  Var forward(Tape& tape, const ParamSet& params, Var obs, bool trainable = true) const;
  /// Normalized action for one observation.
  Vector act(const ParamSet& params, const Vector& obs) const;

  const MlpSpec& mlp() const { return spec_; }
  int action_dim() const { return action_dim_; }

 private:
  MlpSpec spec_;
  int action_dim_;
};

/// Value of a state-action batch under some fixed critic; used to
/// fingerprint a value function.
using QEvaluator = std::function<Var(Tape&, Var obs, Var action)>;

struct FingerprintProbes {
  Matrix states;   // n x state_dim
  Matrix actions;  // n x action_dim, normalized action space
};

/// Probes drawn uniformly inside the given observation bounds and [-1, 1]
/// per action dimension.
FingerprintProbes init_probes(int count, const Vector& obs_low, const Vector& obs_high,
                              int action_dim, Rng& rng);

/// phi = (q(s_1, a_1), ..., q(s_n, a_n)) as a 1 x n row.
Var fingerprint_embed(Tape& tape, const QEvaluator& q_eval, Var probe_states, Var probe_actions);
Vector fingerprint_embed(const QEvaluator& q_eval, const FingerprintProbes& probes);

/// State-action critic Q(s, a), optionally conditioned on another value
/// function through a fingerprint of `probe_count` learnable probes.
///
/// Parameter layout: MLP entries first, then "probe_states" and
/// "probe_actions" when probe_count > 0. Network input is
/// concat(s, a) or concat(s, a, phi).
class Critic {
 public:
  Critic(int obs_dim, int action_dim, std::vector<int> hidden_dims, int probe_count = 0);

  /// `obs_low`/`obs_high` bound the probe states; unused without probes.
  ParamSet init(Rng& rng, const Vector& obs_low, const Vector& obs_high) const;
  ParamSet init(Rng& rng) const;

  /// `condition` is required exactly when probe_count > 0. Its critic
  /// parameters are never trained through this call; gradients flow into
  /// the probes.
  Var forward(Tape& tape, const ParamSet& params, Var obs, Var action,
              const QEvaluator* condition = nullptr, bool trainable = true) const;
  /// The fingerprint this critic sees for `condition`.
  Var embedding(Tape& tape, const ParamSet& params, const QEvaluator& condition,
                bool trainable = true) const;

  bool conditioned() const { return probe_count_ > 0; }
  int probe_count() const { return probe_count_; }
  const MlpSpec& mlp() const { return spec_; }

 private:
  MlpSpec spec_;
  int obs_dim_;
  int action_dim_;
  int probe_count_;
};

}  // namespace seerl::approx

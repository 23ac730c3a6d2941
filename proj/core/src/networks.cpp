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

#include "seerl/approx/networks.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace seerl::approx {
namespace {

constexpr double kSquashEdge = 1.0 - 1e-9;
const double kHalfLogTwoPi = 0.5 * std::log(2.0 * std::numbers::pi);

Matrix row(const Vector& v) { return v.transpose(); }

}  // namespace

void MlpSpec::validate() const {
  if (input_dim <= 0 || output_dim <= 0) throw ConfigError("MlpSpec: dimensions must be positive");
  if (hidden_dims.empty()) throw ConfigError("MlpSpec: hidden_dims must not be empty");
  for (int h : hidden_dims)
    if (h <= 0) throw ConfigError("MlpSpec: hidden layer widths must be positive");
}

void append_mlp(ParamSet& params, const MlpSpec& spec, Rng& rng, double final_layer_scale,
                const std::string& prefix) {
  spec.validate();
  int fan_in = spec.input_dim;
  for (std::size_t layer = 0; layer < spec.layer_count(); ++layer) {
    const bool last = layer + 1 == spec.layer_count();
    const int fan_out = last ? spec.output_dim : spec.hidden_dims[layer];
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    const double scale = last ? final_layer_scale : 1.0;
    Matrix w(fan_in, fan_out);
    Matrix b(1, fan_out);
    for (Eigen::Index j = 0; j < w.cols(); ++j)
      for (Eigen::Index i = 0; i < w.rows(); ++i) w(i, j) = scale * rng.uniform(-bound, bound);
    for (Eigen::Index j = 0; j < b.cols(); ++j) b(0, j) = scale * rng.uniform(-bound, bound);
    const std::string stem = prefix + "l" + std::to_string(layer);
    params.add(stem + ".weight", std::move(w));
    params.add(stem + ".bias", std::move(b));
    fan_in = fan_out;
  }
}

ParamSet init_mlp(const MlpSpec& spec, Rng& rng, double final_layer_scale) {
  ParamSet params;
  append_mlp(params, spec, rng, final_layer_scale);
  return params;
}

Var mlp_forward(Tape& tape, const ParamSet& params, const MlpSpec& spec, Var input, bool trainable,
                std::size_t first_entry) {
  if (input.cols() != spec.input_dim) throw DomainError("mlp_forward: input width mismatch");
  if (first_entry + 2 * spec.layer_count() > params.size())
    throw DomainError("mlp_forward: parameter set too small for this MLP");
  Var h = input;
  for (std::size_t layer = 0; layer < spec.layer_count(); ++layer) {
    Var w = tape.param(params, first_entry + 2 * layer, trainable);
    Var b = tape.param(params, first_entry + 2 * layer + 1, trainable);
    h = affine(h, w, b);
    if (layer + 1 < spec.layer_count())
      h = spec.activation == Activation::kRelu ? relu(h) : tanh(h);
  }
  return h;
}

Vector mlp_forward(const ParamSet& params, const MlpSpec& spec, const Vector& input) {
  Tape tape;
  Var out = mlp_forward(tape, params, spec, tape.constant(row(input)), false);
  return out.value().row(0).transpose();
}

// ---- action scaling -------------------------------------------------------

Vector ActionScaling::to_env(const Vector& normalized) const {
  return (low.array() + (normalized.array() + 1.0) * 0.5 * (high - low).array()).matrix();
}

Vector ActionScaling::to_normalized(const Vector& env_action) const {
  return (2.0 * (env_action - low).array() / (high - low).array() - 1.0).matrix();
}

Matrix ActionScaling::to_normalized_rows(const Matrix& env_actions) const {
  Matrix out(env_actions.rows(), env_actions.cols());
  for (Eigen::Index r = 0; r < env_actions.rows(); ++r)
    out.row(r) = to_normalized(env_actions.row(r).transpose()).transpose();
  return out;
}

// ---- squashed Gaussian ----------------------------------------------------

SquashedGaussianPolicy::SquashedGaussianPolicy(int obs_dim, int action_dim,
                                               std::vector<int> hidden_dims)
    : spec_{obs_dim, 2 * action_dim, std::move(hidden_dims), Activation::kRelu},
      action_dim_(action_dim) {
  spec_.validate();
}

ParamSet SquashedGaussianPolicy::init(Rng& rng) const { return init_mlp(spec_, rng, 1e-2); }

SquashedGaussianPolicy::Sample SquashedGaussianPolicy::sample(Tape& tape, const ParamSet& params,
                                                              Var obs, const Matrix& noise,
                                                              bool trainable) const {
  if (noise.rows() != obs.rows() || noise.cols() != action_dim_)
    throw DomainError("SquashedGaussianPolicy::sample: noise shape mismatch");
  Var out = mlp_forward(tape, params, spec_, obs, trainable);
  Sample s;
  s.mean = slice_cols(out, 0, action_dim_);
  s.log_std = clamp(slice_cols(out, action_dim_, action_dim_), kLogStdMin, kLogStdMax);
  Var pre_squash = gaussian_sample(s.mean, s.log_std, noise);
  s.action = clamp(tanh(pre_squash), -kSquashEdge, kSquashEdge);

  const Matrix base = (-0.5 * noise.array().square() - kHalfLogTwoPi).matrix();
  Var gaussian_log_prob = tape.constant(base) - s.log_std;
  // log(1 - tanh(u)^2) = 2 * (log 2 - u - softplus(-2u))
  Var squash_correction = 2.0 * ((-pre_squash + std::numbers::ln2) - softplus(-2.0 * pre_squash));
  s.log_prob = row_sum(gaussian_log_prob - squash_correction);
  return s;
}

Var SquashedGaussianPolicy::deterministic(Tape& tape, const ParamSet& params, Var obs,
                                          bool trainable) const {
  Var out = mlp_forward(tape, params, spec_, obs, trainable);
  return clamp(tanh(slice_cols(out, 0, action_dim_)), -kSquashEdge, kSquashEdge);
}

GaussianPolicyOutput SquashedGaussianPolicy::sample_with_noise(const ParamSet& params,
                                                               const Vector& obs,
                                                               const Vector& noise,
                                                               const ActionScaling& scaling) const {
  Tape tape;
  Sample s = sample(tape, params, tape.constant(row(obs)), row(noise), false);
  GaussianPolicyOutput out;
  out.normalized_action = s.action.value().row(0).transpose();
  out.action = scaling.to_env(out.normalized_action);
  out.log_prob = s.log_prob.value()(0, 0);
  out.pre_squash_mean = s.mean.value().row(0).transpose();
  out.log_std = s.log_std.value().row(0).transpose();
  return out;
}

GaussianPolicyOutput SquashedGaussianPolicy::sample(const ParamSet& params, const Vector& obs,
                                                    Rng& rng, const ActionScaling& scaling) const {
  Vector noise(action_dim_);
  for (Eigen::Index i = 0; i < noise.size(); ++i) noise[i] = rng.normal();
  return sample_with_noise(params, obs, noise, scaling);
}

GaussianPolicyOutput SquashedGaussianPolicy::deterministic(const ParamSet& params,
                                                           const Vector& obs,
                                                           const ActionScaling& scaling) const {
  GaussianPolicyOutput out = sample_with_noise(params, obs, Vector::Zero(action_dim_), scaling);
  return out;
}

// ---- deterministic --------------------------------------------------------

DeterministicPolicy::DeterministicPolicy(int obs_dim, int action_dim, std::vector<int> hidden_dims)
    : spec_{obs_dim, action_dim, std::move(hidden_dims), Activation::kRelu},
      action_dim_(action_dim) {
  spec_.validate();
}

ParamSet DeterministicPolicy::init(Rng& rng) const { return init_mlp(spec_, rng, 1e-2); }

Var DeterministicPolicy::forward(Tape& tape, const ParamSet& params, Var obs, bool trainable) const {
  return clamp(tanh(mlp_forward(tape, params, spec_, obs, trainable)), -kSquashEdge, kSquashEdge);
}

Vector DeterministicPolicy::act(const ParamSet& params, const Vector& obs) const {
  Tape tape;
  return forward(tape, params, tape.constant(row(obs)), false).value().row(0).transpose();
}

// ---- fingerprinting -------------------------------------------------------

FingerprintProbes init_probes(int count, const Vector& obs_low, const Vector& obs_high,
                              int action_dim, Rng& rng) {
  if (count < 1) throw ConfigError("init_probes: probe count must be >= 1");
  if (obs_low.size() != obs_high.size()) throw ConfigError("init_probes: bound length mismatch");
  FingerprintProbes probes;
  probes.states.resize(count, obs_low.size());
  probes.actions.resize(count, action_dim);
  for (int i = 0; i < count; ++i) {
    for (Eigen::Index j = 0; j < obs_low.size(); ++j)
      probes.states(i, j) = rng.uniform(obs_low[j], obs_high[j]);
    for (int j = 0; j < action_dim; ++j) probes.actions(i, j) = rng.uniform(-1.0, 1.0);
  }
  return probes;
}

Var fingerprint_embed(Tape& tape, const QEvaluator& q_eval, Var probe_states, Var probe_actions) {
  if (probe_states.rows() != probe_actions.rows())
    throw DomainError("fingerprint_embed: probe state/action counts differ");
  Var values = q_eval(tape, probe_states, probe_actions);
  if (values.cols() != 1 || values.rows() != probe_states.rows())
    throw DomainError("fingerprint_embed: evaluator must return one value per probe");
  return transpose(values);
}

Vector fingerprint_embed(const QEvaluator& q_eval, const FingerprintProbes& probes) {
  Tape tape;
  Var phi = fingerprint_embed(tape, q_eval, tape.constant(probes.states),
                              tape.constant(probes.actions));
  return phi.value().row(0).transpose();
}

// ---- critic ---------------------------------------------------------------

Critic::Critic(int obs_dim, int action_dim, std::vector<int> hidden_dims, int probe_count)
    : spec_{obs_dim + action_dim + probe_count, 1, std::move(hidden_dims), Activation::kRelu},
      obs_dim_(obs_dim),
      action_dim_(action_dim),
      probe_count_(probe_count) {
  if (probe_count < 0) throw ConfigError("Critic: probe count must be >= 0");
  spec_.validate();
}

ParamSet Critic::init(Rng& rng, const Vector& obs_low, const Vector& obs_high) const {
  ParamSet params = init_mlp(spec_, rng, 1e-2);
  if (probe_count_ > 0) {
    if (obs_low.size() != obs_dim_ || obs_high.size() != obs_dim_)
      throw ConfigError("Critic::init: observation bounds have the wrong length");
    FingerprintProbes probes = init_probes(probe_count_, obs_low, obs_high, action_dim_, rng);
    params.add("probe_states", std::move(probes.states));
    params.add("probe_actions", std::move(probes.actions));
  }
  return params;
}

ParamSet Critic::init(Rng& rng) const {
  return init(rng, Vector::Constant(obs_dim_, -1.0), Vector::Constant(obs_dim_, 1.0));
}

Var Critic::embedding(Tape& tape, const ParamSet& params, const QEvaluator& condition,
                      bool trainable) const {
  if (probe_count_ == 0) throw DomainError("Critic::embedding: critic has no probes");
  const std::size_t probes_at = 2 * spec_.layer_count();
  Var states = tape.param(params, probes_at, trainable);
  Var actions = tape.param(params, probes_at + 1, trainable);
  return fingerprint_embed(tape, condition, states, actions);
}

Var Critic::forward(Tape& tape, const ParamSet& params, Var obs, Var action,
                    const QEvaluator* condition, bool trainable) const {
  if (obs.cols() != obs_dim_ || action.cols() != action_dim_ || obs.rows() != action.rows())
    throw DomainError("Critic::forward: input shape mismatch");
  if (probe_count_ == 0) return mlp_forward(tape, params, spec_, concat_cols({obs, action}), trainable);
  if (condition == nullptr) throw DomainError("Critic::forward: conditioned critic needs a value function");
  Var phi = broadcast_rows(embedding(tape, params, *condition, trainable), obs.rows());
  return mlp_forward(tape, params, spec_, concat_cols({obs, action, phi}), trainable);
}

}  // namespace seerl::approx

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

#include "seerl/harness/config.hpp"

#include <charconv>
#include <sstream>

namespace seerl::harness {
namespace {

std::string fmt_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

std::string fmt_bool(bool v) { return v ? "true" : "false"; }

}  // namespace

void TrainConfig::validate() const {
  if (!envs::is_known_env(env)) throw ConfigError("unknown environment '" + env + "'");
  if (total_steps < 0) throw ConfigError("total_steps must be >= 0");
  if (warm_up_steps < 0) throw ConfigError("warm_up_steps must be >= 0");
  if (eval_every < 1) throw ConfigError("eval_every must be >= 1");
  if (eval_episodes < 1) throw ConfigError("eval_episodes must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw ConfigError("gamma must lie in [0, 1)");
  if (buffer_size < 1) throw ConfigError("buffer_size must be >= 1");
  if (!(tau >= 0.0 && tau <= 1.0)) throw ConfigError("tau must lie in [0, 1]");
  if (hidden_dims.empty()) throw ConfigError("hidden_dims must not be empty");
  for (int h : hidden_dims)
    if (h < 1) throw ConfigError("hidden_dims entries must be positive");
  if (see_enabled && !ablation.no_conditioning && probe_count < 1)
    throw ConfigError("probe_count must be >= 1");
  if (!(initial_temperature > 0.0)) throw ConfigError("initial_temperature must be positive");
  if (policy_delay < 1) throw ConfigError("policy_delay must be >= 1");
  if (target_noise < 0.0 || target_noise_clip < 0.0 || action_noise < 0.0 || see_action_noise < 0.0)
    throw ConfigError("noise parameters must be non-negative");
  if (!(mix_lambda >= 0.0 && mix_lambda <= 1.0)) throw ConfigError("mix_lambda must lie in [0, 1]");
  if (!(mix_temperature > 0.0)) throw ConfigError("mix_temperature must be positive");
}

std::vector<std::pair<std::string, std::string>> TrainConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> kv{
      {"algo", std::string(base::to_string(algo))},
      {"see", fmt_bool(see_enabled)},
      {"env", env},
      {"reward", std::string(envs::to_string(variant))},
      {"seed", std::to_string(seed)},
      {"steps", std::to_string(total_steps)},
      {"warmup", std::to_string(warm_up_steps)},
      {"eval-every", std::to_string(eval_every)},
      {"eval-episodes", std::to_string(eval_episodes)},
      {"lr", fmt_double(learning_rate)},
      {"batch-size", std::to_string(batch_size)},
      {"gamma", fmt_double(gamma)},
      {"buffer-size", std::to_string(buffer_size)},
      {"tau", fmt_double(tau)},
      {"hidden-dims", format_hidden_dims(hidden_dims)},
      {"probes", std::to_string(probe_count)},
      {"initial-temperature", fmt_double(initial_temperature)},
      {"target-entropy", target_entropy ? fmt_double(*target_entropy) : "auto"},
      {"exploration-entropy-in-target", fmt_bool(exploration_entropy_in_target)},
      {"policy-delay", std::to_string(policy_delay)},
      {"target-noise", fmt_double(target_noise)},
      {"target-noise-clip", fmt_double(target_noise_clip)},
      {"action-noise", fmt_double(action_noise)},
      {"see-action-noise", fmt_double(see_action_noise)},
      {"mix-lambda", fmt_double(mix_lambda)},
      {"mix-temperature", fmt_double(mix_temperature)},
      {"no-conditioning", fmt_bool(ablation.no_conditioning)},
      {"no-max-update", fmt_bool(ablation.no_max_update)},
      {"no-mixing", fmt_bool(ablation.no_mixing)},
      {"out", out_dir},
  };
  return kv;
}

std::string format_hidden_dims(const std::vector<int>& dims) {
  std::string out;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(dims[i]);
  }
  return out;
}

std::vector<int> parse_hidden_dims(const std::string& text) {
  std::vector<int> dims;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string_view part(text.data() + start, end - start);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc() || ptr != part.data() + part.size() || value < 1)
      throw ConfigError("malformed hidden dims '" + text + "'");
    dims.push_back(value);
    start = end + 1;
  }
  return dims;
}

base::LearnerConfig learner_config(const TrainConfig& c, const envs::MdpSpec& spec) {
  base::LearnerConfig l;
  l.algo = c.algo;
  l.obs_dim = spec.state_dim;
  l.action_dim = spec.action_dim;
  l.hidden_dims = c.hidden_dims;
  l.learning_rate = c.learning_rate;
  l.gamma = c.gamma;
  l.tau = c.tau;
  l.initial_temperature = c.initial_temperature;
  l.target_entropy = c.target_entropy;
  l.policy_delay = c.policy_delay;
  l.target_noise = c.target_noise;
  l.target_noise_clip = c.target_noise_clip;
  return l;
}

explore::AgentConfig agent_config(const TrainConfig& c, const envs::MdpSpec& spec) {
  explore::AgentConfig a;
  a.learner = learner_config(c, spec);
  a.see_enabled = c.see_enabled;
  a.ablation = c.ablation;
  a.mix = {c.mix_lambda, c.mix_temperature};
  a.probe_count = c.probe_count;
  a.base_action_noise = c.action_noise;
  a.see_action_noise = c.see_action_noise;
  a.exploration_entropy_in_target = c.exploration_entropy_in_target;
  return a;
}

}  // namespace seerl::harness

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

#include "seerl/harness/train.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "seerl/buffer.hpp"

namespace seerl::harness {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

// Running mean over the updates / episodes between two metrics rows.
struct Mean {
  double sum = 0.0;
  std::int64_t n = 0;
  void add(double v) {
    sum += v;
    ++n;
  }
  double value() const { return n ? sum / static_cast<double>(n) : kNaN; }
  void clear() { *this = {}; }
};

struct Window {
  Mean train_return, r_delta, p_exploit, exploit_critic, exploit_actor, explore_critic, explore_actor;
  void clear() { *this = {}; }
};

approx::ActionScaling scaling_of(const envs::MdpSpec& spec) { return {spec.action_low, spec.action_high}; }

}  // namespace

// ---- metrics ----------------------------------------------------------------

const std::vector<std::string>& metrics_columns() {
  static const std::vector<std::string> columns{
      "step",           "episode",
      "eval_return_mean", "eval_return_stderr",
      "train_episode_return", "exploration_reward_mean",
      "p_q_mean",       "exploit_critic_loss",
      "exploit_actor_loss", "explore_critic_loss",
      "explore_actor_loss", "wall_time",
      "eval_goal_rate"};
  return columns;
}

std::string metrics_header() {
  std::string out;
  for (const auto& c : metrics_columns()) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

std::string format_metrics_row(const MetricsRow& r) {
  std::ostringstream out;
  out << r.step << ',' << r.episode << ',' << fmt(r.eval_return_mean) << ','
      << fmt(r.eval_return_stderr) << ',' << fmt(r.train_episode_return) << ','
      << fmt(r.exploration_reward_mean) << ',' << fmt(r.p_exploit_mean) << ','
      << fmt(r.exploit_critic_loss) << ',' << fmt(r.exploit_actor_loss) << ','
      << fmt(r.explore_critic_loss) << ',' << fmt(r.explore_actor_loss) << ','
      << fmt(r.wall_time) << ',' << fmt(r.eval_goal_rate);
  return out.str();
}

MetricsWriter::MetricsWriter(const std::filesystem::path& path) : out_(path, std::ios::trunc) {
  if (!out_) throw ConfigError("cannot open metrics file '" + path.string() + "'");
  out_ << metrics_header() << '\n';
  out_.flush();
}

void MetricsWriter::write(const MetricsRow& row) {
  out_ << format_metrics_row(row) << '\n';
  out_.flush();
}

// ---- evaluation -------------------------------------------------------------

EvalResult evaluate(const Policy& policy, envs::Environment& env, int episodes, std::uint64_t seed) {
  if (episodes < 1) throw PreconditionError("evaluate: episodes must be >= 1");
  EvalResult result;
  int hits = 0;
  for (int i = 0; i < episodes; ++i) {
    Rng seeds = Rng::substream(seed, "eval-episode-" + std::to_string(i));
    Vector obs = env.reset(seeds.next_u64());
    double total = 0.0;
    bool goal = false;
    while (true) {
      const envs::StepResult step = env.step(policy(obs));
      total += step.reward;
      goal = goal || step.in_goal;
      if (step.terminated || step.truncated) break;
      obs = step.next_obs;
    }
    result.returns.push_back(total);
    hits += goal ? 1 : 0;
  }
  const double n = static_cast<double>(episodes);
  result.mean = std::accumulate(result.returns.begin(), result.returns.end(), 0.0) / n;
  if (episodes > 1) {
    double ss = 0.0;
    for (double r : result.returns) ss += (r - result.mean) * (r - result.mean);
    result.stderr_ = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  result.goal_rate = hits / n;
  return result;
}

Policy exploitation_policy(const explore::Agent& agent, const envs::MdpSpec& spec) {
  const approx::ActionScaling scaling = scaling_of(spec);
  return [&agent, scaling](const Vector& obs) { return scaling.to_env(agent.evaluation_action(obs)); };
}

// ---- checkpoints ------------------------------------------------------------

namespace {

void store_learner(approx::Checkpoint& cp, const std::string& prefix, const base::ActorCritic& l) {
  cp.params[prefix + ".actor"] = l.actor;
  cp.params[prefix + ".critic1"] = l.critic1;
  cp.params[prefix + ".critic2"] = l.critic2;
  cp.params[prefix + ".target_critic1"] = l.target_critic1;
  cp.params[prefix + ".target_critic2"] = l.target_critic2;
  if (!l.target_actor.empty()) cp.params[prefix + ".target_actor"] = l.target_actor;
  if (!l.log_alpha.empty()) cp.params[prefix + ".log_alpha"] = l.log_alpha;
  cp.scalars[prefix + ".update_count"] = static_cast<double>(l.update_count());
}

void load_into(const approx::Checkpoint& cp, const std::string& key, approx::ParamSet& target) {
  auto it = cp.params.find(key);
  if (it == cp.params.end()) throw DomainError("checkpoint: missing parameter set '" + key + "'");
  if (!it->second.same_topology(target))
    throw DomainError("checkpoint: parameter set '" + key + "' has a different topology");
  target = it->second;
}

void restore_learner(const approx::Checkpoint& cp, const std::string& prefix, base::ActorCritic& l) {
  load_into(cp, prefix + ".actor", l.actor);
  load_into(cp, prefix + ".critic1", l.critic1);
  load_into(cp, prefix + ".critic2", l.critic2);
  load_into(cp, prefix + ".target_critic1", l.target_critic1);
  load_into(cp, prefix + ".target_critic2", l.target_critic2);
  if (!l.target_actor.empty()) load_into(cp, prefix + ".target_actor", l.target_actor);
  if (!l.log_alpha.empty()) load_into(cp, prefix + ".log_alpha", l.log_alpha);
  if (auto it = cp.scalars.find(prefix + ".update_count"); it != cp.scalars.end())
    l.set_update_count(static_cast<std::int64_t>(it->second));
}

}  // namespace

approx::Checkpoint make_checkpoint(const explore::Agent& agent, const TrainConfig& config) {
  approx::Checkpoint cp;
  for (auto& [k, v] : config.echo()) cp.config[k] = v;
  store_learner(cp, "exploit", agent.exploit());
  if (agent.explore()) store_learner(cp, "explore", *agent.explore());
  return cp;
}

void restore_checkpoint(const approx::Checkpoint& checkpoint, explore::Agent& agent) {
  restore_learner(checkpoint, "exploit", agent.exploit());
  if (agent.explore()) restore_learner(checkpoint, "explore", *agent.explore());
}

std::string format_config(const TrainConfig& config) {
  std::string out;
  for (const auto& [k, v] : config.echo()) out += k + " = \"" + v + "\"\n";
  return out;
}

// ---- training loop ----------------------------------------------------------

TrainResult train(const TrainConfig& config, const TrainHooks& hooks) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();

  auto env = envs::make_env(config.env, config.variant);
  auto eval_env = env->clone();
  const envs::MdpSpec& spec = env->spec();
  const approx::ActionScaling scaling = scaling_of(spec);

  Rng init_rng = Rng::substream(config.seed, "init");
  Rng env_rng = Rng::substream(config.seed, "env");
  Rng policy_rng = Rng::substream(config.seed, "policy");
  Rng buffer_rng = Rng::substream(config.seed, "buffer");
  Rng exploit_rng = Rng::substream(config.seed, "exploit-update");
  Rng explore_rng = Rng::substream(config.seed, "explore-update");

  explore::Agent agent(agent_config(config, spec), spec, init_rng);
  buffer::ReplayBuffer replay(static_cast<std::size_t>(config.buffer_size));

  std::optional<MetricsWriter> writer;
  if (!config.out_dir.empty()) {
    std::filesystem::create_directories(config.out_dir);
    std::ofstream(std::filesystem::path(config.out_dir) / "config.txt") << format_config(config);
    writer.emplace(std::filesystem::path(config.out_dir) / "metrics.csv");
  }

  TrainResult result;
  Window window;
  std::int64_t episode = 0;
  std::int64_t eval_index = 0;

  const auto emit_row = [&](std::int64_t step) {
    const EvalResult ev =
        evaluate(exploitation_policy(agent, spec), *eval_env, config.eval_episodes,
                 Rng::substream(config.seed, "eval-" + std::to_string(eval_index++)).next_u64());
    MetricsRow row;
    row.step = step;
    row.episode = episode;
    row.eval_return_mean = ev.mean;
    row.eval_return_stderr = ev.stderr_;
    row.eval_goal_rate = ev.goal_rate;
    row.train_episode_return = window.train_return.value();
    row.exploration_reward_mean = window.r_delta.value();
    row.p_exploit_mean = window.p_exploit.value();
    row.exploit_critic_loss = window.exploit_critic.value();
    row.exploit_actor_loss = window.exploit_actor.value();
    row.explore_critic_loss = window.explore_critic.value();
    row.explore_actor_loss = window.explore_actor.value();
    row.wall_time = config.record_wall_time
                        ? std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count()
                        : 0.0;
    window.clear();
    if (writer) writer->write(row);
    result.rows.push_back(row);
    return hooks.stop && hooks.stop(row);
  };

  bool stop = emit_row(0);
  Vector obs = env->reset(env_rng.next_u64());
  double episode_return = 0.0;

  for (std::int64_t step = 1; step <= config.total_steps && !stop; ++step) {
    Vector env_action(spec.action_dim);
    std::optional<explore::MixDecision> mix;
    if (step <= config.warm_up_steps) {
      for (int i = 0; i < spec.action_dim; ++i)
        env_action[i] = policy_rng.uniform(spec.action_low[i], spec.action_high[i]);
    } else {
      explore::ActionChoice choice = agent.select_action(obs, policy_rng);
      env_action = scaling.to_env(choice.action);
      if (choice.mix) window.p_exploit.add(choice.mix->p_exploit);
      mix = std::move(choice.mix);
    }

    const envs::StepResult outcome = env->step(env_action);
    envs::Transition t{obs, env_action, outcome.reward, outcome.next_obs, outcome.terminated};
    if (hooks.on_step) hooks.on_step(step, t, mix ? &*mix : nullptr);
    replay.push(std::move(t));
    episode_return += outcome.reward;

    if (outcome.terminated || outcome.truncated) {
      window.train_return.add(episode_return);
      episode_return = 0.0;
      ++episode;
      obs = env->reset(env_rng.next_u64());
    } else {
      obs = outcome.next_obs;
    }

    if (step > config.warm_up_steps && replay.size() >= static_cast<std::size_t>(config.batch_size)) {
      const base::Batch batch =
          base::make_batch(replay.sample(static_cast<std::size_t>(config.batch_size), buffer_rng), scaling);
      const explore::AgentUpdate u = agent.update(batch, exploit_rng, explore_rng);
      window.exploit_critic.add(u.exploit.critic.loss);
      if (u.exploit.actor.updated) window.exploit_actor.add(u.exploit.actor.actor_loss);
      if (u.explore) {
        window.r_delta.add(u.exploration_reward_mean);
        window.explore_critic.add(u.explore->critic.loss);
        if (u.explore->actor.updated) window.explore_actor.add(u.explore->actor.actor_loss);
      }
    }

    if (step % config.eval_every == 0) stop = emit_row(step);
  }

  result.stopped_early = stop && (result.rows.back().step < config.total_steps);
  result.final_row = result.rows.back();
  result.checkpoint = make_checkpoint(agent, config);
  result.checkpoint.rng_states = {{"init", init_rng.serialize()},
                                  {"env", env_rng.serialize()},
                                  {"policy", policy_rng.serialize()},
                                  {"buffer", buffer_rng.serialize()},
                                  {"exploit-update", exploit_rng.serialize()},
                                  {"explore-update", explore_rng.serialize()}};
  if (writer && config.write_checkpoint)
    approx::save_checkpoint(result.checkpoint, std::filesystem::path(config.out_dir) / "checkpoint.json");
  return result;
}

}  // namespace seerl::harness

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

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>

#include "seerl/harness/train.hpp"

namespace seerl::cli {

std::optional<ParsedArgs> parse_args(const std::vector<std::string>& argv, std::ostream& out,
                                     std::ostream& err, int& exit_code) {
  ParsedArgs parsed;
  harness::TrainConfig& c = parsed.config;

  CLI::App app{"Off-policy actor-critic training with SEE exploration", "seerl"};
  app.set_config("--config", "", "Key-value configuration file mirroring the flags");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  CLI::App* run = app.add_subcommand("run", "Train one agent and write metrics and a checkpoint");
  run->fallthrough();

  std::string algo = "sac";
  std::string reward = "dense";
  std::string hidden = harness::format_hidden_dims(c.hidden_dims);
  std::string target_entropy = "auto";
  std::vector<std::string> ablations;
  bool see = c.see_enabled;

  app.add_option("--algo", algo, "Base algorithm")->check(CLI::IsMember({"sac", "td3"}));
  app.add_flag("--see,!--no-see", see, "Enable the SEE exploration extension");
  app.add_option("--env", c.env, "Environment id")
      ->check(CLI::IsMember({"pendulum", "local-optimum-car", "two-goal-plane"}));
  app.add_option("--reward", reward, "Reward variant")
      ->check(CLI::IsMember({"dense", "sparse", "adverse"}));
  app.add_option("--seed", c.seed, "Master seed");
  app.add_option("--steps", c.total_steps, "Total environment steps")->check(CLI::NonNegativeNumber);
  app.add_option("--warmup", c.warm_up_steps, "Uniform-random warm-up steps")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--eval-every", c.eval_every, "Steps between evaluations")->check(CLI::PositiveNumber);
  app.add_option("--eval-episodes", c.eval_episodes, "Episodes per evaluation")
      ->check(CLI::PositiveNumber);
  app.add_option("--ablation", ablations, "no-conditioning | no-max-update | no-mixing (repeatable)")
      ->check(CLI::IsMember({"no-conditioning", "no-max-update", "no-mixing"}))
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_flag("--no-conditioning", c.ablation.no_conditioning, "Same as --ablation no-conditioning");
  app.add_flag("--no-max-update", c.ablation.no_max_update, "Same as --ablation no-max-update");
  app.add_flag("--no-mixing", c.ablation.no_mixing, "Same as --ablation no-mixing");
  app.add_option("--hidden-dims", hidden, "Comma-separated hidden layer widths");
  app.add_option("--out", c.out_dir, "Output directory");

  app.add_option("--lr", c.learning_rate, "Adam learning rate");
  app.add_option("--batch-size", c.batch_size, "Mini-batch size");
  app.add_option("--gamma", c.gamma, "Discount factor");
  app.add_option("--buffer-size", c.buffer_size, "Replay capacity");
  app.add_option("--tau", c.tau, "Target network rate");
  app.add_option("--probes", c.probe_count, "Fingerprint probe count");
  app.add_option("--initial-temperature", c.initial_temperature, "Initial SAC temperature");
  app.add_option("--target-entropy", target_entropy, "SAC target entropy or 'auto'");
  app.add_option("--exploration-entropy-in-target", c.exploration_entropy_in_target,
                  "Keep the entropy term in the exploration critic target");
  app.add_option("--policy-delay", c.policy_delay, "TD3 actor update period");
  app.add_option("--target-noise", c.target_noise, "TD3 target smoothing std");
  app.add_option("--target-noise-clip", c.target_noise_clip, "TD3 target smoothing clip");
  app.add_option("--action-noise", c.action_noise, "Base TD3 rollout noise std");
  app.add_option("--see-action-noise", c.see_action_noise, "TD3+SEE rollout noise std");
  app.add_option("--mix-lambda", c.mix_lambda, "Advantage mixing factor");
  app.add_option("--mix-temperature", c.mix_temperature, "Boltzmann temperature");
  app.add_flag("--wall-time", c.record_wall_time, "Record wall-clock time in metrics");
  app.add_flag("--dry-run", parsed.dry_run, "Print the configuration and exit");

  std::vector<std::string> args(argv.rbegin(), argv.rend() - 1);
  try {
    app.parse(args);
    c.algo = base::parse_algo(algo);
    c.variant = envs::parse_variant(reward);
    c.see_enabled = see;
    c.hidden_dims = harness::parse_hidden_dims(hidden);
    if (target_entropy == "auto") {
      c.target_entropy.reset();
    } else {
      try {
        c.target_entropy = std::stod(target_entropy);
      } catch (const std::exception&) {
        throw ConfigError("malformed target entropy '" + target_entropy + "'");
      }
    }
    for (const auto& a : ablations) {
      if (a == "no-conditioning") c.ablation.no_conditioning = true;
      if (a == "no-max-update") c.ablation.no_max_update = true;
      if (a == "no-mixing") c.ablation.no_mixing = true;
    }
    c.validate();
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    exit_code = 0;
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    exit_code = 0;
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    exit_code = e.get_exit_code() == 0 ? 2 : e.get_exit_code();
    return std::nullopt;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    exit_code = 2;
    return std::nullopt;
  }
  exit_code = 0;
  return parsed;
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  int code = 0;
  auto parsed = parse_args(argv, out, err, code);
  if (!parsed) return code;
  out << harness::format_config(parsed->config);
  if (parsed->dry_run) return 0;
  try {
    const harness::TrainResult result = harness::train(parsed->config);
    const harness::MetricsRow& r = result.final_row;
    out << "final step " << r.step << " eval_return_mean " << r.eval_return_mean << " stderr "
        << r.eval_return_stderr << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace seerl::cli

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

#include <array>
#include <memory>
#include <string>
#include <string_view>

#include "seerl/types.hpp"

namespace seerl::envs {

enum class RewardVariant { kDense, kSparse, kAdverse };

std::string_view to_string(RewardVariant variant);
/// Parses "dense" | "sparse" | "adverse"; throws ConfigError otherwise.
RewardVariant parse_variant(std::string_view text);

struct MdpSpec {
  int state_dim = 0;
  int action_dim = 0;
  Vector action_low;
  Vector action_high;
  // Observation bounds used for probe initialisation; [-1, 1] where the
  // underlying quantity is unbounded.
  Vector obs_low;
  Vector obs_high;
  int max_episode_steps = 1;
  double discount_hint = 0.99;

  /// Throws ConfigError if any invariant is violated.
  void validate() const;
};

struct StepResult {
  Vector next_obs;
  double reward = 0.0;
  bool terminated = false;
  bool truncated = false;
  /// True when this transition earned the task's goal reward (upright
  /// pendulum, either car goal, either plane goal).
  bool in_goal = false;
};

struct Transition {
  Vector obs;
  Vector action;
  double reward = 0.0;
  Vector next_obs;
  bool terminated = false;
};

// Pure step functions. They hold no episode bookkeeping; the Environment
// wrappers below add reset, step counting and truncation.

struct PendulumState {
  double angle = 0.0;
  double angular_velocity = 0.0;
};

struct PendulumOutcome {
  PendulumState next;
  double reward = 0.0;
  bool in_goal = false;
};

inline constexpr double kPendulumMaxTorque = 2.0;
inline constexpr double kPendulumMaxSpeed = 8.0;
inline constexpr double kPendulumGoalDegrees = 10.0;

/// One inverted-pendulum step (g=10, m=1, l=1, dt=0.05). Reward terms are
/// evaluated on the pre-step state, matching the dense cost convention.
PendulumOutcome pendulum_step(PendulumState state, double torque, RewardVariant variant);
Vector pendulum_observation(PendulumState state);
/// Wraps an angle to [-pi, pi).
double normalize_angle(double angle);

struct CarState {
  double position = 0.0;
  double velocity = 0.0;
};

struct CarOutcome {
  CarState next;
  double reward = 0.0;
  bool terminated = false;
  bool in_goal = false;
};

inline constexpr double kCarRightGoal = 0.45;
inline constexpr double kCarLeftGoal = -1.1;
inline constexpr double kCarRightReward = 100.0;
inline constexpr double kCarLeftReward = 10.0;

/// Continuous mountain car with an additional lesser goal on the left.
CarOutcome local_optimum_car_step(CarState state, double force, RewardVariant variant);

struct PlaneConfig {
  std::array<double, 2> goal_a{-0.5, 0.5};
  std::array<double, 2> goal_b{0.5, 0.5};
  std::array<double, 2> start{0.0, -0.5};
  double start_jitter = 0.05;
  double goal_radius = 0.05;
  double max_step = 0.05;
};

struct PlaneOutcome {
  std::array<double, 2> next;
  double reward = 0.0;
  bool terminated = false;
  /// 0 for goal_a, 1 for goal_b, -1 if no goal was entered.
  int goal_index = -1;
};

PlaneOutcome two_goal_plane_step(std::array<double, 2> position,
                                 std::array<double, 2> displacement, const PlaneConfig& config);

/// Uniform episodic interface. Instances are single-threaded state machines.
class Environment {
 public:
  virtual ~Environment() = default;

  const MdpSpec& spec() const { return spec_; }
  RewardVariant variant() const { return variant_; }
  virtual std::string_view id() const = 0;

  /// Starts a new episode; equal seeds give equal initial states.
  virtual Vector reset(std::uint64_t seed) = 0;
  /// Advances one step. Throws DomainError on non-finite actions and
  /// PreconditionError if called before reset() or after the episode ended.
  StepResult step(const Vector& action);

  int episode_steps() const { return steps_; }
  virtual std::unique_ptr<Environment> clone() const = 0;

 protected:
  Environment(MdpSpec spec, RewardVariant variant);
  virtual StepResult step_impl(const Vector& action) = 0;
  void begin_episode() {
    steps_ = 0;
    done_ = false;
  }

 private:
  MdpSpec spec_;
  RewardVariant variant_;
  int steps_ = 0;
  bool done_ = true;
};

class Pendulum final : public Environment {
 public:
  explicit Pendulum(RewardVariant variant);
  std::string_view id() const override { return "pendulum"; }
  Vector reset(std::uint64_t seed) override;
  std::unique_ptr<Environment> clone() const override { return std::make_unique<Pendulum>(*this); }
  PendulumState state() const { return state_; }
  /// Places the pendulum at an explicit state (tests, scripted controllers).
  void set_state(PendulumState state);

 private:
  StepResult step_impl(const Vector& action) override;
  PendulumState state_;
};

class LocalOptimumCar final : public Environment {
 public:
  explicit LocalOptimumCar(RewardVariant variant);
  std::string_view id() const override { return "local-optimum-car"; }
  Vector reset(std::uint64_t seed) override;
  std::unique_ptr<Environment> clone() const override {
    return std::make_unique<LocalOptimumCar>(*this);
  }
  CarState state() const { return state_; }
  void set_state(CarState state);

 private:
  StepResult step_impl(const Vector& action) override;
  CarState state_;
};

/// Point agent on the square [-1, 1]^2 with two rewarding terminal goals.
/// The reward variant has no effect; every variant is the sparse task.
class TwoGoalPlane final : public Environment {
 public:
  explicit TwoGoalPlane(RewardVariant variant = RewardVariant::kSparse, PlaneConfig config = {});
  std::string_view id() const override { return "two-goal-plane"; }
  Vector reset(std::uint64_t seed) override;
  std::unique_ptr<Environment> clone() const override {
    return std::make_unique<TwoGoalPlane>(*this);
  }
  const PlaneConfig& config() const { return config_; }
  std::array<double, 2> position() const { return position_; }
  void set_position(std::array<double, 2> position);
  /// Goal entered on the most recent step, -1 if none.
  int last_goal() const { return last_goal_; }

 private:
  StepResult step_impl(const Vector& action) override;
  PlaneConfig config_;
  std::array<double, 2> position_{0.0, 0.0};
  int last_goal_ = -1;
};

/// Registry lookup by id ("pendulum", "local-optimum-car", "two-goal-plane").
std::unique_ptr<Environment> make_env(std::string_view id, RewardVariant variant);
bool is_known_env(std::string_view id);

}  // namespace seerl::envs

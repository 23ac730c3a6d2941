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

#include "seerl/envs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace seerl::envs {
namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) throw DomainError(std::string(what) + " is not finite");
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) throw DomainError(std::string(what) + " is not finite");
}

Vector make_vector(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

}  // namespace

std::string_view to_string(RewardVariant variant) {
  switch (variant) {
    case RewardVariant::kDense:
      return "dense";
    case RewardVariant::kSparse:
      return "sparse";
    case RewardVariant::kAdverse:
      return "adverse";
  }
  return "unknown";
}

RewardVariant parse_variant(std::string_view text) {
  if (text == "dense") return RewardVariant::kDense;
  if (text == "sparse") return RewardVariant::kSparse;
  if (text == "adverse") return RewardVariant::kAdverse;
  throw ConfigError("unknown reward variant '" + std::string(text) + "'");
}

void MdpSpec::validate() const {
  if (state_dim <= 0 || action_dim <= 0) throw ConfigError("MdpSpec: dimensions must be positive");
  if (action_low.size() != action_dim || action_high.size() != action_dim)
    throw ConfigError("MdpSpec: action bound length mismatch");
  if (obs_low.size() != state_dim || obs_high.size() != state_dim)
    throw ConfigError("MdpSpec: observation bound length mismatch");
  if (!(action_low.array() < action_high.array()).all())
    throw ConfigError("MdpSpec: action_low must be < action_high");
  if (max_episode_steps < 1) throw ConfigError("MdpSpec: max_episode_steps must be >= 1");
  if (!(discount_hint >= 0.0 && discount_hint < 1.0))
    throw ConfigError("MdpSpec: discount_hint must lie in [0, 1)");
}

// ---------------------------------------------------------------- pendulum

double normalize_angle(double angle) {
  return std::fmod(std::fmod(angle + kPi, 2.0 * kPi) + 2.0 * kPi, 2.0 * kPi) - kPi;
}

Vector pendulum_observation(PendulumState state) {
  return make_vector({std::cos(state.angle), std::sin(state.angle), state.angular_velocity});
}

PendulumOutcome pendulum_step(PendulumState state, double torque, RewardVariant variant) {
  require_finite(state.angle, "pendulum angle");
  require_finite(state.angular_velocity, "pendulum angular velocity");
  require_finite(torque, "pendulum torque");

  constexpr double g = 10.0;
  constexpr double m = 1.0;
  constexpr double l = 1.0;
  constexpr double dt = 0.05;

  const double u = std::clamp(torque, -kPendulumMaxTorque, kPendulumMaxTorque);
  const double angle = normalize_angle(state.angle);
  const double action_cost = 0.001 * u * u;

  PendulumOutcome out;
  out.in_goal = std::abs(angle) <= kPendulumGoalDegrees * kPi / 180.0;
  switch (variant) {
    case RewardVariant::kDense:
      out.reward = -(angle * angle + 0.1 * state.angular_velocity * state.angular_velocity +
                     action_cost);
      break;
    case RewardVariant::kSparse:
      out.reward = out.in_goal ? 1.0 : 0.0;
      break;
    case RewardVariant::kAdverse:
      out.reward = (out.in_goal ? 1.0 : 0.0) - action_cost;
      break;
  }

  double velocity =
      state.angular_velocity + (3.0 * g / (2.0 * l) * std::sin(state.angle) + 3.0 / (m * l * l) * u) * dt;
  velocity = std::clamp(velocity, -kPendulumMaxSpeed, kPendulumMaxSpeed);
  out.next.angle = state.angle + velocity * dt;
  out.next.angular_velocity = velocity;
  return out;
}

// ---------------------------------------------------------------- car

CarOutcome local_optimum_car_step(CarState state, double force, RewardVariant variant) {
  require_finite(state.position, "car position");
  require_finite(state.velocity, "car velocity");
  require_finite(force, "car force");

  constexpr double kMinPosition = -1.2;
  constexpr double kMaxPosition = 0.6;
  constexpr double kMaxSpeed = 0.07;
  constexpr double kPower = 0.0015;

  const double f = std::clamp(force, -1.0, 1.0);
  double velocity = state.velocity + f * kPower - 0.0025 * std::cos(3.0 * state.position);
  velocity = std::clamp(velocity, -kMaxSpeed, kMaxSpeed);
  double position = std::clamp(state.position + velocity, kMinPosition, kMaxPosition);
  if (position == kMinPosition && velocity < 0.0) velocity = 0.0;

  CarOutcome out;
  out.next = {position, velocity};
  double goal_reward = 0.0;
  if (position >= kCarRightGoal) {
    goal_reward = kCarRightReward;
    out.terminated = true;
  } else if (position <= kCarLeftGoal) {
    goal_reward = kCarLeftReward;
    out.terminated = true;
  }
  out.in_goal = out.terminated;

  const double action_cost = 0.1 * f * f;
  switch (variant) {
    case RewardVariant::kDense:
      out.reward = goal_reward - action_cost - std::abs(position - kCarRightGoal);
      break;
    case RewardVariant::kSparse:
      out.reward = goal_reward;
      break;
    case RewardVariant::kAdverse:
      out.reward = goal_reward - action_cost;
      break;
  }
  return out;
}

// ---------------------------------------------------------------- plane

PlaneOutcome two_goal_plane_step(std::array<double, 2> position,
                                 std::array<double, 2> displacement, const PlaneConfig& config) {
  for (double v : position) require_finite(v, "plane position");
  for (double v : displacement) require_finite(v, "plane displacement");

  const double norm = std::hypot(displacement[0], displacement[1]);
  double scale = 1.0;
  if (norm > config.max_step) scale = config.max_step / norm;

  PlaneOutcome out;
  for (int i = 0; i < 2; ++i)
    out.next[i] = std::clamp(position[i] + scale * displacement[i], -1.0, 1.0);

  const auto within = [&](const std::array<double, 2>& goal) {
    return std::hypot(out.next[0] - goal[0], out.next[1] - goal[1]) <= config.goal_radius;
  };
  if (within(config.goal_a)) {
    out.goal_index = 0;
  } else if (within(config.goal_b)) {
    out.goal_index = 1;
  }
  out.terminated = out.goal_index >= 0;
  out.reward = out.terminated ? 1.0 : 0.0;
  return out;
}

// ---------------------------------------------------------------- wrappers

Environment::Environment(MdpSpec spec, RewardVariant variant)
    : spec_(std::move(spec)), variant_(variant) {
  spec_.validate();
}

StepResult Environment::step(const Vector& action) {
  if (done_) throw PreconditionError(std::string(id()) + ": step() called without an active episode");
  if (action.size() != spec_.action_dim)
    throw DomainError(std::string(id()) + ": action has wrong dimension");
  require_finite(action, "action");
  StepResult result = step_impl(action);
  ++steps_;
  if (!result.terminated && steps_ >= spec_.max_episode_steps) result.truncated = true;
  done_ = result.terminated || result.truncated;
  return result;
}

Pendulum::Pendulum(RewardVariant variant)
    : Environment(MdpSpec{.state_dim = 3,
                          .action_dim = 1,
                          .action_low = make_vector({-kPendulumMaxTorque}),
                          .action_high = make_vector({kPendulumMaxTorque}),
                          .obs_low = make_vector({-1.0, -1.0, -kPendulumMaxSpeed}),
                          .obs_high = make_vector({1.0, 1.0, kPendulumMaxSpeed}),
                          .max_episode_steps = 200,
                          .discount_hint = 0.99},
                  variant) {}

Vector Pendulum::reset(std::uint64_t seed) {
  Rng rng = Rng::substream(seed, "pendulum.reset");
  if (variant() == RewardVariant::kDense) {
    state_.angle = rng.uniform(-kPi, kPi);
    state_.angular_velocity = rng.uniform(-1.0, 1.0);
  } else {
    state_ = {kPi, 0.0};
  }
  begin_episode();
  return pendulum_observation(state_);
}

void Pendulum::set_state(PendulumState state) {
  require_finite(state.angle, "pendulum angle");
  require_finite(state.angular_velocity, "pendulum angular velocity");
  state_ = state;
  begin_episode();
}

StepResult Pendulum::step_impl(const Vector& action) {
  const PendulumOutcome out = pendulum_step(state_, action[0], variant());
  state_ = out.next;
  StepResult result;
  result.next_obs = pendulum_observation(state_);
  result.reward = out.reward;
  result.in_goal = out.in_goal;
  return result;
}

LocalOptimumCar::LocalOptimumCar(RewardVariant variant)
    : Environment(MdpSpec{.state_dim = 2,
                          .action_dim = 1,
                          .action_low = make_vector({-1.0}),
                          .action_high = make_vector({1.0}),
                          .obs_low = make_vector({-1.2, -0.07}),
                          .obs_high = make_vector({0.6, 0.07}),
                          .max_episode_steps = 999,
                          .discount_hint = 0.99},
                  variant) {}

Vector LocalOptimumCar::reset(std::uint64_t seed) {
  Rng rng = Rng::substream(seed, "car.reset");
  state_ = {rng.uniform(-0.6, -0.4), 0.0};
  begin_episode();
  return make_vector({state_.position, state_.velocity});
}

void LocalOptimumCar::set_state(CarState state) {
  require_finite(state.position, "car position");
  require_finite(state.velocity, "car velocity");
  state_ = state;
  begin_episode();
}

StepResult LocalOptimumCar::step_impl(const Vector& action) {
  const CarOutcome out = local_optimum_car_step(state_, action[0], variant());
  state_ = out.next;
  StepResult result;
  result.next_obs = make_vector({state_.position, state_.velocity});
  result.reward = out.reward;
  result.terminated = out.terminated;
  result.in_goal = out.in_goal;
  return result;
}

TwoGoalPlane::TwoGoalPlane(RewardVariant variant, PlaneConfig config)
    : Environment(MdpSpec{.state_dim = 2,
                          .action_dim = 2,
                          .action_low = make_vector({-config.max_step, -config.max_step}),
                          .action_high = make_vector({config.max_step, config.max_step}),
                          .obs_low = make_vector({-1.0, -1.0}),
                          .obs_high = make_vector({1.0, 1.0}),
                          .max_episode_steps = 200,
                          .discount_hint = 0.9},
                  variant),
      config_(config) {
  if (!(config_.goal_radius > 0.0) || !(config_.max_step > 0.0))
    throw ConfigError("TwoGoalPlane: goal radius and max step must be positive");
}

Vector TwoGoalPlane::reset(std::uint64_t seed) {
  Rng rng = Rng::substream(seed, "plane.reset");
  for (int i = 0; i < 2; ++i)
    position_[i] = config_.start[i] + rng.uniform(-config_.start_jitter, config_.start_jitter);
  last_goal_ = -1;
  begin_episode();
  return make_vector({position_[0], position_[1]});
}

void TwoGoalPlane::set_position(std::array<double, 2> position) {
  for (double v : position) require_finite(v, "plane position");
  position_ = position;
  last_goal_ = -1;
  begin_episode();
}

StepResult TwoGoalPlane::step_impl(const Vector& action) {
  const PlaneOutcome out = two_goal_plane_step(position_, {action[0], action[1]}, config_);
  position_ = out.next;
  last_goal_ = out.goal_index;
  StepResult result;
  result.next_obs = make_vector({position_[0], position_[1]});
  result.reward = out.reward;
  result.terminated = out.terminated;
  result.in_goal = out.terminated;
  return result;
}

bool is_known_env(std::string_view id) {
  return id == "pendulum" || id == "local-optimum-car" || id == "two-goal-plane";
}

std::unique_ptr<Environment> make_env(std::string_view id, RewardVariant variant) {
  if (id == "pendulum") return std::make_unique<Pendulum>(variant);
  if (id == "local-optimum-car") return std::make_unique<LocalOptimumCar>(variant);
  if (id == "two-goal-plane") return std::make_unique<TwoGoalPlane>(variant);
  throw ConfigError("unknown environment '" + std::string(id) + "'");
}

}  // namespace seerl::envs

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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "seerl/envs.hpp"

namespace seerl::envs {
namespace {

constexpr double kPi = std::numbers::pi;

Vector scalar(double x) { return Vector::Constant(1, x); }

TEST(RewardVariantTest, ParsesKnownNames) {
  EXPECT_EQ(parse_variant("dense"), RewardVariant::kDense);
  EXPECT_EQ(parse_variant("sparse"), RewardVariant::kSparse);
  EXPECT_EQ(parse_variant("adverse"), RewardVariant::kAdverse);
  EXPECT_EQ(to_string(RewardVariant::kAdverse), "adverse");
  EXPECT_THROW(parse_variant("bogus"), ConfigError);
}

TEST(MdpSpecTest, RejectsInvertedBounds) {
  MdpSpec spec = make_env("pendulum", RewardVariant::kDense)->spec();
  EXPECT_NO_THROW(spec.validate());
  spec.action_low[0] = 3.0;
  EXPECT_THROW(spec.validate(), ConfigError);
  spec = make_env("pendulum", RewardVariant::kDense)->spec();
  spec.max_episode_steps = 0;
  EXPECT_THROW(spec.validate(), ConfigError);
}

// ---- pendulum ----------------------------------------------------------------

TEST(PendulumStepTest, UprightSparseEarnsOne) {
  EXPECT_EQ(pendulum_step({0.0, 0.0}, 0.0, RewardVariant::kSparse).reward, 1.0);
}

TEST(PendulumStepTest, HangingSparseEarnsZero) {
  EXPECT_EQ(pendulum_step({kPi, 0.0}, 0.0, RewardVariant::kSparse).reward, 0.0);
}

TEST(PendulumStepTest, AdverseChargesActionCost) {
  EXPECT_NEAR(pendulum_step({kPi, 0.0}, 2.0, RewardVariant::kAdverse).reward, -0.004, 1e-15);
}

TEST(PendulumStepTest, GoalRegionIsTenDegrees) {
  const double edge = 10.0 * kPi / 180.0;
  EXPECT_EQ(pendulum_step({edge - 1e-9, 0.0}, 0.0, RewardVariant::kSparse).reward, 1.0);
  EXPECT_EQ(pendulum_step({-edge + 1e-9, 0.0}, 0.0, RewardVariant::kSparse).reward, 1.0);
  EXPECT_EQ(pendulum_step({edge + 1e-9, 0.0}, 0.0, RewardVariant::kSparse).reward, 0.0);
  EXPECT_EQ(pendulum_step({2.0 * kPi, 0.0}, 0.0, RewardVariant::kSparse).reward, 1.0);
}

TEST(PendulumStepTest, DenseCostMatchesFormula) {
  const PendulumState s{1.0, -2.0};
  const double expected = -(1.0 + 0.1 * 4.0 + 0.001 * 0.25);
  EXPECT_NEAR(pendulum_step(s, 0.5, RewardVariant::kDense).reward, expected, 1e-15);
}

TEST(PendulumStepTest, DynamicsMatchHandUpdate) {
  const PendulumState s{0.3, 0.7};
  const double u = 1.5;
  const double v = 0.7 + (15.0 * std::sin(0.3) + 3.0 * u) * 0.05;
  const PendulumOutcome out = pendulum_step(s, u, RewardVariant::kDense);
  EXPECT_DOUBLE_EQ(out.next.angular_velocity, v);
  EXPECT_DOUBLE_EQ(out.next.angle, 0.3 + v * 0.05);
}

TEST(PendulumStepTest, ClipsTorqueAndSpeed) {
  const PendulumOutcome a = pendulum_step({1.0, 0.0}, 50.0, RewardVariant::kAdverse);
  const PendulumOutcome b = pendulum_step({1.0, 0.0}, 2.0, RewardVariant::kAdverse);
  EXPECT_EQ(a.next.angular_velocity, b.next.angular_velocity);
  EXPECT_EQ(a.reward, b.reward);
  EXPECT_EQ(pendulum_step({kPi / 2, 7.99}, 2.0, RewardVariant::kDense).next.angular_velocity, 8.0);
}

TEST(PendulumStepTest, RejectsNonFinite) {
  EXPECT_THROW(pendulum_step({NAN, 0.0}, 0.0, RewardVariant::kDense), DomainError);
  EXPECT_THROW(pendulum_step({0.0, 0.0}, INFINITY, RewardVariant::kDense), DomainError);
}

TEST(PendulumEnvTest, SparseAndAdverseStartPointingDown) {
  for (auto variant : {RewardVariant::kSparse, RewardVariant::kAdverse}) {
    auto env = make_env("pendulum", variant);
    for (std::uint64_t seed : {0u, 7u, 12345u}) {
      const Vector obs = env->reset(seed);
      EXPECT_NEAR(obs[0], -1.0, 1e-15);
      EXPECT_NEAR(obs[1], 0.0, 1e-15);
      EXPECT_EQ(obs[2], 0.0);
    }
  }
}

TEST(PendulumEnvTest, DenseResetDependsOnSeed) {
  auto env = make_env("pendulum", RewardVariant::kDense);
  const Vector a = env->reset(1);
  const Vector b = env->reset(1);
  const Vector c = env->reset(2);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
  EXPECT_LE(std::abs(a[2]), 1.0);
}

TEST(PendulumEnvTest, TruncatesAtTwoHundredSteps) {
  auto env = make_env("pendulum", RewardVariant::kSparse);
  env->reset(0);
  for (int i = 1; i <= 200; ++i) {
    const StepResult r = env->step(scalar(0.0));
    EXPECT_FALSE(r.terminated);
    EXPECT_EQ(r.truncated, i == 200);
  }
  EXPECT_THROW(env->step(scalar(0.0)), PreconditionError);
}

TEST(PendulumEnvTest, RejectsBadActions) {
  auto env = make_env("pendulum", RewardVariant::kDense);
  EXPECT_THROW(env->step(scalar(0.0)), PreconditionError);
  env->reset(0);
  EXPECT_THROW(env->step(scalar(NAN)), DomainError);
  EXPECT_THROW(env->step(Vector::Zero(2)), DomainError);
}

TEST(PendulumEnvTest, BalancingControllerCollectsEveryStep) {
  Pendulum env(RewardVariant::kSparse);
  env.set_state({0.05, 0.0});
  double total = 0.0;
  int in_goal_steps = 0;
  for (bool done = false; !done;) {
    const PendulumState s = env.state();
    const double u = -10.0 * normalize_angle(s.angle) - 2.0 * s.angular_velocity;
    const StepResult r = env.step(scalar(u));
    total += r.reward;
    in_goal_steps += r.in_goal ? 1 : 0;
    done = r.terminated || r.truncated;
  }
  EXPECT_EQ(in_goal_steps, 200);
  EXPECT_EQ(total, 200.0);
}

// ---- local optimum car ---------------------------------------------------------

TEST(LocalOptimumCarTest, LeftGoalPaysTenAndTerminates) {
  const CarOutcome out = local_optimum_car_step({-1.09, -0.02}, 0.0, RewardVariant::kSparse);
  EXPECT_LE(out.next.position, kCarLeftGoal);
  EXPECT_EQ(out.reward, 10.0);
  EXPECT_TRUE(out.terminated);
}

TEST(LocalOptimumCarTest, RightGoalPaysHundredAndTerminates) {
  const CarOutcome out = local_optimum_car_step({0.44, 0.02}, 0.0, RewardVariant::kSparse);
  EXPECT_GE(out.next.position, kCarRightGoal);
  EXPECT_EQ(out.reward, 100.0);
  EXPECT_TRUE(out.terminated);
}

TEST(LocalOptimumCarTest, SparseMidTrackIsZero) {
  for (double f : {-1.0, 0.0, 0.3, 1.0}) {
    const CarOutcome out = local_optimum_car_step({-0.5, 0.0}, f, RewardVariant::kSparse);
    EXPECT_EQ(out.reward, 0.0);
    EXPECT_FALSE(out.terminated);
  }
}

TEST(LocalOptimumCarTest, AdverseAndDenseRewards) {
  const CarOutcome adverse = local_optimum_car_step({-0.5, 0.0}, 0.5, RewardVariant::kAdverse);
  EXPECT_DOUBLE_EQ(adverse.reward, -0.025);
  const CarOutcome dense = local_optimum_car_step({-0.5, 0.0}, 0.5, RewardVariant::kDense);
  EXPECT_DOUBLE_EQ(dense.reward, -0.025 - std::abs(dense.next.position - 0.45));
}

TEST(LocalOptimumCarTest, DynamicsMatchHandUpdate) {
  const CarOutcome out = local_optimum_car_step({-0.5, 0.01}, 0.8, RewardVariant::kSparse);
  const double v = 0.01 + 0.8 * 0.0015 - 0.0025 * std::cos(-1.5);
  EXPECT_DOUBLE_EQ(out.next.velocity, v);
  EXPECT_DOUBLE_EQ(out.next.position, -0.5 + v);
}

TEST(LocalOptimumCarTest, ClipsVelocity) {
  const CarOutcome out = local_optimum_car_step({-0.5, 0.069}, 1.0, RewardVariant::kSparse);
  EXPECT_EQ(out.next.velocity, 0.07);
}

TEST(LocalOptimumCarTest, EnvTruncatesAt999) {
  auto env = make_env("local-optimum-car", RewardVariant::kSparse);
  EXPECT_EQ(env->spec().max_episode_steps, 999);
  env->reset(3);
  StepResult r;
  int steps = 0;
  do {
    r = env->step(scalar(0.0));
    ++steps;
  } while (!r.terminated && !r.truncated);
  EXPECT_EQ(steps, 999);
  EXPECT_TRUE(r.truncated);
}

// ---- two-goal plane ----------------------------------------------------------

TEST(TwoGoalPlaneTest, EnteringGoalPaysAndTerminates) {
  const PlaneConfig config;
  const PlaneOutcome out = two_goal_plane_step({-0.5, 0.47}, {0.0, 0.03}, config);
  EXPECT_EQ(out.reward, 1.0);
  EXPECT_TRUE(out.terminated);
  EXPECT_EQ(out.goal_index, 0);
  EXPECT_EQ(two_goal_plane_step({0.5, 0.44}, {0.0, 0.05}, config).goal_index, 1);
}

TEST(TwoGoalPlaneTest, CenterStepPaysNothing) {
  const PlaneOutcome out = two_goal_plane_step({0.0, 0.0}, {0.01, 0.01}, PlaneConfig{});
  EXPECT_EQ(out.reward, 0.0);
  EXPECT_FALSE(out.terminated);
  EXPECT_EQ(out.goal_index, -1);
}

TEST(TwoGoalPlaneTest, ClipsDisplacementNorm) {
  const PlaneOutcome out = two_goal_plane_step({0.0, 0.0}, {0.06, 0.08}, PlaneConfig{});
  EXPECT_NEAR(std::hypot(out.next[0], out.next[1]), 0.05, 1e-15);
  EXPECT_NEAR(out.next[0] / out.next[1], 0.75, 1e-12);
}

TEST(TwoGoalPlaneTest, StaysOnThePlane) {
  const PlaneOutcome out = two_goal_plane_step({0.99, -0.99}, {0.05, -0.05}, PlaneConfig{});
  EXPECT_EQ(out.next[0], 1.0);
  EXPECT_EQ(out.next[1], -1.0);
}

TEST(TwoGoalPlaneTest, ResetNearStart) {
  TwoGoalPlane env;
  const Vector obs = env.reset(9);
  EXPECT_LE(std::abs(obs[0] - 0.0), 0.05);
  EXPECT_LE(std::abs(obs[1] + 0.5), 0.05);
  EXPECT_EQ(env.reset(9), obs);
}

TEST(RegistryTest, KnowsAllEnvironments) {
  for (const char* id : {"pendulum", "local-optimum-car", "two-goal-plane"}) {
    EXPECT_TRUE(is_known_env(id));
    EXPECT_EQ(make_env(id, RewardVariant::kSparse)->id(), id);
  }
  EXPECT_FALSE(is_known_env("cartpole"));
  EXPECT_THROW(make_env("cartpole", RewardVariant::kDense), ConfigError);
}

// ---- properties ---------------------------------------------------------------

class EnvPropertyTest : public ::testing::TestWithParam<std::tuple<const char*, RewardVariant>> {};

TEST_P(EnvPropertyTest, EqualSeedsGiveBitwiseEqualRollouts) {
  const auto [id, variant] = GetParam();
  const auto rollout = [&](std::uint64_t seed) {
    auto env = make_env(id, variant);
    Rng actions(seed);
    std::vector<double> trace;
    Vector obs = env->reset(seed);
    trace.insert(trace.end(), obs.data(), obs.data() + obs.size());
    for (int i = 0; i < 300; ++i) {
      Vector a(env->spec().action_dim);
      for (int j = 0; j < a.size(); ++j)
        a[j] = actions.uniform(env->spec().action_low[j], env->spec().action_high[j]);
      const StepResult r = env->step(a);
      trace.insert(trace.end(), r.next_obs.data(), r.next_obs.data() + r.next_obs.size());
      trace.push_back(r.reward);
      if (r.terminated || r.truncated) obs = env->reset(actions.next_u64());
    }
    return trace;
  };
  EXPECT_EQ(rollout(11), rollout(11));
}

TEST_P(EnvPropertyTest, ObservationsStayInBoundsAndTruncationIsExact) {
  const auto [id, variant] = GetParam();
  auto env = make_env(id, variant);
  const MdpSpec& spec = env->spec();
  Rng rng(5);
  for (int episode = 0; episode < 3; ++episode) {
    Vector obs = env->reset(rng.next_u64());
    for (int t = 1;; ++t) {
      EXPECT_TRUE((obs.array() >= spec.obs_low.array() - 1e-12).all());
      EXPECT_TRUE((obs.array() <= spec.obs_high.array() + 1e-12).all());
      Vector a(spec.action_dim);
      for (int j = 0; j < a.size(); ++j) a[j] = rng.uniform(spec.action_low[j], spec.action_high[j]);
      const StepResult r = env->step(a);
      obs = r.next_obs;
      if (r.truncated) EXPECT_EQ(t, spec.max_episode_steps);
      if (t == spec.max_episode_steps) EXPECT_TRUE(r.terminated || r.truncated);
      if (r.terminated || r.truncated) break;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(
    AllEnvs, EnvPropertyTest,
    ::testing::Combine(::testing::Values("pendulum", "local-optimum-car", "two-goal-plane"),
                       ::testing::Values(RewardVariant::kDense, RewardVariant::kSparse,
                                         RewardVariant::kAdverse)));

TEST(RewardOrderingTest, SparseRewardSetsAndAdverseBelowSparse) {
  Rng rng(21);
  for (int i = 0; i < 2000; ++i) {
    const PendulumState p{rng.uniform(-4.0, 4.0), rng.uniform(-8.0, 8.0)};
    const double u = rng.uniform(-2.0, 2.0);
    const double sparse = pendulum_step(p, u, RewardVariant::kSparse).reward;
    EXPECT_TRUE(sparse == 0.0 || sparse == 1.0);
    EXPECT_LE(pendulum_step(p, u, RewardVariant::kAdverse).reward, sparse);

    const CarState c{rng.uniform(-1.2, 0.6), rng.uniform(-0.07, 0.07)};
    const double f = rng.uniform(-1.0, 1.0);
    const double car_sparse = local_optimum_car_step(c, f, RewardVariant::kSparse).reward;
    EXPECT_TRUE(car_sparse == 0.0 || car_sparse == 10.0 || car_sparse == 100.0);
    EXPECT_LE(local_optimum_car_step(c, f, RewardVariant::kAdverse).reward, car_sparse);
  }
}

}  // namespace
}  // namespace seerl::envs

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

#include "fixtures.hpp"
#include "seerl/base/actor_critic.hpp"
#include "seerl/base/optimizer.hpp"

namespace seerl::base {
namespace {

using seerl::testing::make_action_critic;
using seerl::testing::make_constant_critic;
using seerl::testing::make_constant_deterministic;
using seerl::testing::make_constant_gaussian;
using seerl::testing::random_batch;
using seerl::testing::single_batch;
using seerl::testing::squashed_log_prob;
using seerl::testing::tiny_config;

TEST(ActorValueTest, SacTakesMinimumTd3TakesFirst) {
  EXPECT_EQ(actor_value(value_rule(Algo::kSac), 2.0, 3.0), 2.0);
  EXPECT_EQ(actor_value(value_rule(Algo::kSac), 3.0, 2.0), 2.0);
  EXPECT_EQ(actor_value(value_rule(Algo::kTd3), 2.0, 3.0), 2.0);
  EXPECT_EQ(actor_value(value_rule(Algo::kTd3), 3.0, 2.0), 3.0);
  EXPECT_EQ(actor_value(ValueRule::kMinOfTwin, 1.5, 1.5), actor_value(ValueRule::kFirst, 1.5, 1.5));
}

TEST(BellmanTargetTest, AdditiveAndMaxRules) {
  EXPECT_DOUBLE_EQ(bellman_target(TargetRule::kAdditive, 1.0, 2.0, 0.5, false), 2.0);
  EXPECT_EQ(bellman_target(TargetRule::kAdditive, 1.0, 2.0, 0.5, true), 1.0);
  EXPECT_EQ(bellman_target(TargetRule::kAdditive, 1.0, 2.0, 0.0, false), 1.0);
  EXPECT_DOUBLE_EQ(bellman_target(TargetRule::kMaxReward, 0.5, 2.0, 0.5, false), 1.0);
  EXPECT_EQ(bellman_target(TargetRule::kMaxReward, 3.0, 2.0, 0.5, false), 3.0);
  EXPECT_EQ(bellman_target(TargetRule::kMaxReward, 0.5, 2.0, 0.5, true), 0.5);
}

TEST(AlgoTest, ParsesNames) {
  EXPECT_EQ(parse_algo("sac"), Algo::kSac);
  EXPECT_EQ(parse_algo("td3"), Algo::kTd3);
  EXPECT_EQ(to_string(Algo::kTd3), "td3");
  EXPECT_THROW(parse_algo("ppo"), ConfigError);
}

TEST(MakeBatchTest, NormalizesActions) {
  std::vector<envs::Transition> ts{{Vector::Constant(1, 0.1), Vector::Constant(1, 2.0), 1.0,
                                    Vector::Constant(1, 0.2), true},
                                   {Vector::Constant(1, 0.3), Vector::Constant(1, -1.0), 0.0,
                                    Vector::Constant(1, 0.4), false}};
  const Batch b = make_batch(ts, {Vector::Constant(1, -2.0), Vector::Constant(1, 2.0)});
  EXPECT_EQ(b.size(), 2);
  EXPECT_EQ(b.action(0, 0), 1.0);
  EXPECT_EQ(b.action(1, 0), -0.5);
  EXPECT_EQ(b.terminated, (Vector(2) << 1.0, 0.0).finished());
  EXPECT_THROW(make_batch({}, {Vector::Constant(1, -2.0), Vector::Constant(1, 2.0)}), PreconditionError);
}

// ---- SAC ------------------------------------------------------------------------

class SacHandTest : public ::testing::Test {
 protected:
  SacHandTest() : rng_(1), learner_(tiny_config(Algo::kSac), rng_) {
    make_constant_critic(learner_.critic1, c1_);
    make_constant_critic(learner_.critic2, c2_);
    make_constant_critic(learner_.target_critic1, t1_);
    make_constant_critic(learner_.target_critic2, t2_);
    make_constant_gaussian(learner_.actor, mean_, log_std_);
  }
  Rng rng_;
  ActorCritic learner_;
  double c1_ = 0.3, c2_ = -0.2, t1_ = 1.5, t2_ = 1.1, mean_ = 0.2, log_std_ = -0.5;
};

TEST_F(SacHandTest, CriticLossMatchesHandComputation) {
  const Batch batch = single_batch(0.4, 0.1, 0.7, -0.3, false);
  Rng update(2);
  Rng replay = update;
  const double eps = replay.normal();
  const double next = std::min(t1_, t2_) - 1.0 * squashed_log_prob(mean_, log_std_, eps);
  const double y = 0.7 + 0.99 * next;
  const double expected = 0.5 * ((c1_ - y) * (c1_ - y) + (c2_ - y) * (c2_ - y));

  const CriticUpdateInfo info = learner_.critic_update(batch, batch.reward, TargetRule::kAdditive, update);
  EXPECT_NEAR(info.target[0], y, 1e-12);
  EXPECT_NEAR(info.loss, expected, 1e-12);
  EXPECT_EQ(info.q1[0], c1_);
  EXPECT_EQ(info.q2[0], c2_);
}

TEST_F(SacHandTest, TerminalTargetIsRewardExactly) {
  const Batch batch = single_batch(0.4, 0.1, 0.7, -0.3, true);
  Rng update(3);
  EXPECT_EQ(learner_.critic_update(batch, batch.reward, TargetRule::kAdditive, update).target[0], 0.7);
}

TEST_F(SacHandTest, MyopicTargetIsReward) {
  LearnerConfig c = tiny_config(Algo::kSac);
  c.gamma = 0.0;
  Rng init(4), update(5);
  ActorCritic myopic(c, init);
  const Batch batch = single_batch(0.4, 0.1, -0.25, -0.3, false);
  EXPECT_EQ(myopic.critic_update(batch, batch.reward, TargetRule::kAdditive, update).target[0], -0.25);
}

TEST_F(SacHandTest, ActorLossAndTemperatureStep) {
  const Batch batch = single_batch(0.4, 0.1, 0.7, -0.3, false);
  Rng update(6);
  Rng replay = update;
  const double logp = squashed_log_prob(mean_, log_std_, replay.normal());
  const ActorUpdateInfo info = learner_.actor_update(batch, update);
  EXPECT_TRUE(info.updated);
  EXPECT_NEAR(info.actor_loss, logp - std::min(c1_, c2_), 1e-12);
  EXPECT_NEAR(info.mean_log_prob, logp, 1e-12);
  const double gap = -logp - (-1.0);
  EXPECT_NEAR(info.temperature_loss, gap, 1e-12);
  // First Adam step moves log(alpha) by the learning rate against the gradient sign.
  EXPECT_NEAR(learner_.log_alpha.value(0)(0, 0), gap > 0 ? -1e-3 : 1e-3, 1e-9);
  EXPECT_GT(learner_.alpha(), 0.0);
}

TEST_F(SacHandTest, ZeroTemperatureLeavesNegativeMinQ) {
  learner_.log_alpha.value(0)(0, 0) = -1e4;
  ASSERT_EQ(learner_.alpha(), 0.0);
  Rng update(7);
  const ActorUpdateInfo info = learner_.actor_update(single_batch(0.0, 0.0, 0.0, 0.0, false), update);
  EXPECT_EQ(info.actor_loss, -std::min(c1_, c2_));
}

TEST_F(SacHandTest, AutoTargetEntropyIsNegativeActionDim) {
  EXPECT_EQ(learner_.target_entropy(), -1.0);
  Rng init(8);
  ActorCritic wide(tiny_config(Algo::kSac, 3, 4), init);
  EXPECT_EQ(wide.target_entropy(), -4.0);
  EXPECT_EQ(wide.alpha(), 1.0);
}

TEST_F(SacHandTest, NearDeterministicPolicyStaysFinite) {
  make_constant_gaussian(learner_.actor, 0.2, -100.0);
  Rng update(9);
  const ActorUpdateInfo info = learner_.actor_update(single_batch(0.0, 0.0, 0.0, 0.0, false), update);
  EXPECT_TRUE(std::isfinite(info.actor_loss));
  EXPECT_TRUE(std::isfinite(info.temperature_loss));
}

TEST(SacTest, TemperatureStaysPositiveOverManyUpdates) {
  Rng init(10), data(11), update(12);
  LearnerConfig c = tiny_config(Algo::kSac, 3, 1);
  c.hidden_dims = {16, 16};
  ActorCritic learner(c, init);
  const Batch batch = random_batch(32, 3, 1, data);
  for (int i = 0; i < 200; ++i) {
    const UpdateInfo info = learner.update(batch, update);
    EXPECT_TRUE(info.actor.updated);
    EXPECT_GT(info.actor.alpha, 0.0);
  }
  EXPECT_TRUE(learner.critic1.all_finite());
}

TEST(SacTest, EveryStepUpdatesTargets) {
  Rng init(13), data(14), update(15);
  ActorCritic learner(tiny_config(Algo::kSac, 2, 1), init);
  const approx::ParamSet before = learner.target_critic1;
  learner.update(random_batch(8, 2, 1, data), update);
  EXPECT_GT(approx::max_abs_difference(before, learner.target_critic1), 0.0);
}

// ---- TD3 ------------------------------------------------------------------------

TEST(Td3Test, ActorAndTargetsUpdateEverySecondStep) {
  Rng init(16), data(17), update(18);
  ActorCritic learner(tiny_config(Algo::kTd3, 2, 1), init);
  const Batch batch = random_batch(8, 2, 1, data);
  const approx::ParamSet actor0 = learner.actor;
  const approx::ParamSet target0 = learner.target_critic1;

  const UpdateInfo first = learner.update(batch, update);
  EXPECT_FALSE(first.actor.updated);
  EXPECT_EQ(learner.actor, actor0);
  EXPECT_EQ(learner.target_critic1, target0);

  const UpdateInfo second = learner.update(batch, update);
  EXPECT_TRUE(second.actor.updated);
  EXPECT_NE(learner.actor, actor0);
  EXPECT_NE(learner.target_critic1, target0);
  EXPECT_EQ(learner.update_count(), 2);
  EXPECT_EQ(learner.alpha(), 0.0);
}

TEST(Td3Test, TargetSmoothingNoiseIsClipped) {
  LearnerConfig c = tiny_config(Algo::kTd3);
  c.target_noise = 100.0;
  Rng init(19), data(20), update(21);
  ActorCritic learner(c, init);
  make_constant_deterministic(learner.target_actor, 0.0);
  make_action_critic(learner.target_critic1, 1, false);
  make_action_critic(learner.target_critic2, 1, false);
  const Batch batch = random_batch(500, 1, 1, data);
  const Vector next = learner.next_state_value(batch, update);
  EXPECT_LE(next.cwiseAbs().maxCoeff(), 0.5);
  const auto clipped = (next.cwiseAbs().array() == 0.5).count();
  EXPECT_GE(clipped, 490);
}

TEST(Td3Test, DefaultNoiseClipBoundsSmoothing) {
  Rng init(22), data(23), update(24);
  ActorCritic learner(tiny_config(Algo::kTd3), init);
  make_constant_deterministic(learner.target_actor, 0.0);
  make_action_critic(learner.target_critic1, 1, false);
  make_action_critic(learner.target_critic2, 1, false);
  const Vector next = learner.next_state_value(random_batch(2000, 1, 1, data), update);
  EXPECT_LE(next.cwiseAbs().maxCoeff(), 0.5);
  EXPECT_GT(next.cwiseAbs().maxCoeff(), 0.4);
}

TEST(Td3Test, ActorLossIsNegativeFirstCritic) {
  Rng init(25), update(26);
  ActorCritic learner(tiny_config(Algo::kTd3), init);
  make_constant_critic(learner.critic1, 2.0);
  make_constant_critic(learner.critic2, -5.0);
  EXPECT_EQ(learner.actor_update(single_batch(0.0, 0.0, 0.0, 0.0, false), update).actor_loss, -2.0);
}

TEST(Td3Test, TerminalTargetIsReward) {
  Rng init(27), update(28);
  ActorCritic learner(tiny_config(Algo::kTd3), init);
  const Batch batch = single_batch(0.5, 0.5, -3.25, 0.1, true);
  EXPECT_EQ(learner.critic_update(batch, batch.reward, TargetRule::kAdditive, update).target[0], -3.25);
}

TEST(Td3Test, ExplorationNoiseOnRolloutActions) {
  Rng init(29);
  ActorCritic learner(tiny_config(Algo::kTd3), init);
  make_constant_deterministic(learner.actor, 0.0);
  Rng rng(30);
  double sum = 0.0, sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double a = learner.act(Vector::Zero(1), rng, false, 0.1)[0];
    sum += a;
    sq += a * a;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.005);
  EXPECT_NEAR(std::sqrt(sq / n), 0.1, 0.005);
  EXPECT_EQ(learner.act(Vector::Zero(1), rng, false, 0.0)[0], 0.0);
}

// ---- shared machinery -------------------------------------------------------------

TEST(CriticLossTest, ZeroAtFixedPoint) {
  Rng init(31), update(32);
  ActorCritic learner(tiny_config(Algo::kTd3), init);
  make_constant_critic(learner.critic1, 0.8);
  make_constant_critic(learner.critic2, 0.8);
  const Batch batch = single_batch(0.0, 0.0, 0.8, 0.0, true);
  const approx::ParamSet before = learner.critic1;
  const CriticUpdateInfo info = learner.critic_update(batch, batch.reward, TargetRule::kAdditive, update);
  EXPECT_EQ(info.loss, 0.0);
  EXPECT_EQ(learner.critic1, before);
}

TEST(AdamTest, FirstStepMovesByLearningRate) {
  approx::ParamSet p;
  p.add("w", (Matrix(1, 3) << 1.0, 2.0, 3.0).finished());
  Adam adam(p, 0.1);
  approx::ParamSet g = p.zeros_like();
  g.value(0) << 4.0, -0.5, 0.0;
  adam.step(p, g);
  EXPECT_NEAR(p.value(0)(0, 0), 0.9, 1e-7);
  EXPECT_NEAR(p.value(0)(0, 1), 2.1, 1e-6);
  EXPECT_EQ(p.value(0)(0, 2), 3.0);
  EXPECT_EQ(adam.steps(), 1);
  g.value(0)(0, 0) = NAN;
  EXPECT_THROW(adam.step(p, g), NonFiniteError);
  approx::ParamSet other;
  other.add("v", Matrix::Zero(1, 1));
  EXPECT_THROW(adam.step(other, other), DomainError);
}

TEST(LearnerConfigTest, RejectsInvalidValues) {
  LearnerConfig c = tiny_config(Algo::kSac);
  c.gamma = 1.0;
  Rng rng(33);
  EXPECT_THROW(ActorCritic(c, rng), ConfigError);
  c = tiny_config(Algo::kSac);
  c.initial_temperature = 0.0;
  EXPECT_THROW(ActorCritic(c, rng), ConfigError);
}

TEST(LearnerTest, TargetsStartEqualToOnline) {
  Rng init(34);
  ActorCritic td3(tiny_config(Algo::kTd3, 2, 2), init);
  EXPECT_EQ(td3.target_critic1, td3.critic1);
  EXPECT_EQ(td3.target_actor, td3.actor);
  EXPECT_TRUE(td3.log_alpha.empty());
}

}  // namespace
}  // namespace seerl::base

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

#include <benchmark/benchmark.h>

#include "seerl/approx/networks.hpp"
#include "seerl/approx/tape.hpp"
#include "seerl/base/actor_critic.hpp"
#include "seerl/buffer.hpp"
#include "seerl/envs.hpp"
#include "seerl/explore/see.hpp"
#include "seerl/harness/config.hpp"

namespace {

using namespace seerl;

std::vector<int> hidden_from(const benchmark::State& state) {
  return {static_cast<int>(state.range(0)), static_cast<int>(state.range(0))};
}

base::Batch random_batch(const envs::MdpSpec& spec, int n, Rng& rng) {
  std::vector<envs::Transition> ts;
  for (int i = 0; i < n; ++i) {
    envs::Transition t;
    t.obs = Vector(spec.state_dim);
    t.next_obs = Vector(spec.state_dim);
    for (int j = 0; j < spec.state_dim; ++j) {
      t.obs[j] = rng.uniform(-1.0, 1.0);
      t.next_obs[j] = rng.uniform(-1.0, 1.0);
    }
    t.action = Vector(spec.action_dim);
    for (int j = 0; j < spec.action_dim; ++j)
      t.action[j] = rng.uniform(spec.action_low[j], spec.action_high[j]);
    t.reward = rng.uniform(-1.0, 0.0);
    t.terminated = false;
    ts.push_back(t);
  }
  return base::make_batch(ts, {spec.action_low, spec.action_high});
}

void BM_MlpForwardBackward(benchmark::State& state) {
  Rng rng(1);
  approx::MlpSpec spec{4, 1, hidden_from(state)};
  approx::ParamSet params = approx::init_mlp(spec, rng);
  Matrix input = Matrix::Random(256, 4);
  for (auto _ : state) {
    approx::Tape tape;
    approx::Var out = approx::mlp_forward(tape, params, spec, tape.input(input), true, 0);
    tape.backward(approx::mean(approx::square(out)));
    benchmark::DoNotOptimize(tape.gradients(params));
  }
}
BENCHMARK(BM_MlpForwardBackward)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

void run_agent_update(benchmark::State& state, base::Algo algo, bool see) {
  auto env = envs::make_env("pendulum", envs::RewardVariant::kDense);
  harness::TrainConfig c;
  c.algo = algo;
  c.see_enabled = see;
  c.hidden_dims = hidden_from(state);
  Rng init(2), data(3), u1(4), u2(5);
  explore::Agent agent(harness::agent_config(c, env->spec()), env->spec(), init);
  const base::Batch batch = random_batch(env->spec(), c.batch_size, data);
  for (auto _ : state) benchmark::DoNotOptimize(agent.update(batch, u1, u2));
}

void BM_SacUpdate(benchmark::State& state) { run_agent_update(state, base::Algo::kSac, false); }
void BM_SacSeeUpdate(benchmark::State& state) { run_agent_update(state, base::Algo::kSac, true); }
void BM_Td3SeeUpdate(benchmark::State& state) { run_agent_update(state, base::Algo::kTd3, true); }
BENCHMARK(BM_SacUpdate)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SacSeeUpdate)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Td3SeeUpdate)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SeeSelectAction(benchmark::State& state) {
  auto env = envs::make_env("pendulum", envs::RewardVariant::kAdverse);
  harness::TrainConfig c;
  c.hidden_dims = hidden_from(state);
  Rng init(2), rng(3);
  explore::Agent agent(harness::agent_config(c, env->spec()), env->spec(), init);
  const Vector obs = env->reset(0);
  for (auto _ : state) benchmark::DoNotOptimize(agent.select_action(obs, rng));
}
BENCHMARK(BM_SeeSelectAction)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_PendulumStep(benchmark::State& state) {
  auto env = envs::make_env("pendulum", envs::RewardVariant::kDense);
  env->reset(0);
  Vector u(1);
  u << 0.5;
  for (auto _ : state) {
    const envs::StepResult r = env->step(u);
    if (r.truncated) env->reset(0);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_PendulumStep);

void BM_BufferSample(benchmark::State& state) {
  buffer::ReplayBuffer replay(200000);
  Rng rng(4);
  envs::Transition t{Vector::Zero(3), Vector::Zero(1), 0.0, Vector::Zero(3), false};
  for (int i = 0; i < 100000; ++i) replay.push(t);
  for (auto _ : state) benchmark::DoNotOptimize(replay.sample(256, rng));
}
BENCHMARK(BM_BufferSample)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();

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

#include "seerl/base/optimizer.hpp"

#include <cmath>

namespace seerl::base {

Adam::Adam(const approx::ParamSet& like, double learning_rate, double beta1, double beta2,
           double epsilon)
    : learning_rate_(learning_rate),
      beta1_(beta1),
      beta2_(beta2),
      epsilon_(epsilon),
      m_(like.zeros_like()),
      v_(like.zeros_like()) {
  if (!(learning_rate > 0.0)) throw ConfigError("Adam: learning rate must be positive");
}

void Adam::step(approx::ParamSet& params, const approx::ParamSet& grads) {
  if (!params.same_topology(m_) || !grads.same_topology(m_))
    throw DomainError("Adam::step: topology mismatch");
  if (!grads.all_finite()) throw NonFiniteError("Adam::step: non-finite gradient");
  ++steps_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(steps_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(steps_));
  const double step_size = learning_rate_ / c1;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const Matrix& g = grads.value(i);
    Matrix& m = m_.value(i);
    Matrix& v = v_.value(i);
    m = beta1_ * m + (1.0 - beta1_) * g;
    v = beta2_ * v + (1.0 - beta2_) * g.cwiseProduct(g);
    params.value(i).array() -=
        step_size * m.array() / ((v.array() / c2).sqrt() + epsilon_);
  }
}

void Adam::restore(approx::ParamSet first, approx::ParamSet second, std::int64_t steps) {
  if (!first.same_topology(m_) || !second.same_topology(v_))
    throw DomainError("Adam::restore: topology mismatch");
  m_ = std::move(first);
  v_ = std::move(second);
  steps_ = steps;
}

}  // namespace seerl::base

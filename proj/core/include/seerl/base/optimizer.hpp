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

#include <cstdint>

#include "seerl/approx/param_set.hpp"

namespace seerl::base {

/// Adam with bias correction. Moments share the topology of the parameters
/// they were created for.
class Adam {
 public:
  explicit Adam(const approx::ParamSet& like, double learning_rate = 1e-3, double beta1 = 0.9,
                double beta2 = 0.999, double epsilon = 1e-8);

  /// Descends `grads` in place on `params`. Throws DomainError on a
  /// topology mismatch and NonFiniteError if a gradient is not finite.
  void step(approx::ParamSet& params, const approx::ParamSet& grads);

  std::int64_t steps() const { return steps_; }
  double learning_rate() const { return learning_rate_; }
  const approx::ParamSet& first_moment() const { return m_; }
  const approx::ParamSet& second_moment() const { return v_; }
  void restore(approx::ParamSet first, approx::ParamSet second, std::int64_t steps);

 private:
  double learning_rate_;
  double beta1_;
  double beta2_;
  double epsilon_;
  std::int64_t steps_ = 0;
  approx::ParamSet m_;
  approx::ParamSet v_;
};

}  // namespace seerl::base

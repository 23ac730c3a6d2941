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

#include <cstddef>
#include <vector>

#include "seerl/envs.hpp"
#include "seerl/types.hpp"

namespace seerl::buffer {

/// Default capacity for the classic-control environments.
inline constexpr std::size_t kDefaultCapacity = 200000;

/// Fixed-capacity FIFO ring of transitions with uniform sampling.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity = kDefaultCapacity);

  /// Appends `t`, evicting the oldest transition once full.
  void push(envs::Transition t);

  /// `n` independent uniform draws with replacement. Throws
  /// PreconditionError if fewer than `n` transitions are stored.
  std::vector<envs::Transition> sample(std::size_t n, Rng& rng) const;
  /// Same draws as sample(), returned as storage indices (0 = oldest).
  std::vector<std::size_t> sample_indices(std::size_t n, Rng& rng) const;

  /// i-th stored transition in insertion order, 0 being the oldest.
  const envs::Transition& at(std::size_t i) const;

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return size_ == 0; }

 private:
  std::size_t capacity_;
  std::size_t size_ = 0;
  std::size_t head_ = 0;  // next write position
  std::vector<envs::Transition> storage_;
};

}  // namespace seerl::buffer

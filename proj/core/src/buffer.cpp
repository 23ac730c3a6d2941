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

#include "seerl/buffer.hpp"

#include <algorithm>
#include <string>

namespace seerl::buffer {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ConfigError("ReplayBuffer: capacity must be positive");
  storage_.reserve(std::min<std::size_t>(capacity, 1 << 16));
}

void ReplayBuffer::push(envs::Transition t) {
  if (storage_.size() < capacity_) {
    storage_.push_back(std::move(t));
  } else {
    storage_[head_] = std::move(t);
  }
  head_ = (head_ + 1) % capacity_;
  if (size_ < capacity_) ++size_;
}

const envs::Transition& ReplayBuffer::at(std::size_t i) const {
  if (i >= size_) throw PreconditionError("ReplayBuffer::at: index out of range");
  if (size_ < capacity_) return storage_[i];
  return storage_[(head_ + i) % capacity_];
}

std::vector<std::size_t> ReplayBuffer::sample_indices(std::size_t n, Rng& rng) const {
  if (n == 0) throw PreconditionError("ReplayBuffer::sample: batch size must be positive");
  if (size_ < n)
    throw PreconditionError("ReplayBuffer::sample: requested " + std::to_string(n) +
                            " transitions but only " + std::to_string(size_) + " are stored");
  std::vector<std::size_t> out(n);
  for (auto& i : out) i = static_cast<std::size_t>(rng.below(size_));
  return out;
}

std::vector<envs::Transition> ReplayBuffer::sample(std::size_t n, Rng& rng) const {
  std::vector<envs::Transition> out;
  out.reserve(n);
  for (std::size_t i : sample_indices(n, rng)) out.push_back(at(i));
  return out;
}

}  // namespace seerl::buffer

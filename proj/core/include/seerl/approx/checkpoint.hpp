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

#include <filesystem>
#include <map>
#include <string>

#include "seerl/approx/param_set.hpp"

namespace seerl::approx {

/// Self-describing snapshot of a training run: named parameter sets with
/// shapes, named scalars (e.g. log temperatures), the RNG stream states and
/// an echo of the configuration. Serialized as JSON; doubles are written in
/// shortest round-trip form, so save/load is bitwise exact.
struct Checkpoint {
  std::map<std::string, ParamSet> params;
  std::map<std::string, double> scalars;
  std::map<std::string, std::string> rng_states;
  std::map<std::string, std::string> config;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

std::string checkpoint_to_string(const Checkpoint& checkpoint);
/// Throws DomainError on malformed input.
Checkpoint checkpoint_from_string(const std::string& text);

void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace seerl::approx

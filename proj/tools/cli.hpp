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

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "seerl/harness/config.hpp"

namespace seerl::cli {

struct ParsedArgs {
  harness::TrainConfig config;
  bool dry_run = false;  // echo the configuration and exit
};

/// Parses `seerl run ...` style arguments (argv[0] is the program name).
/// On failure writes usage text to `err`, sets `exit_code` and returns nullopt.
std::optional<ParsedArgs> parse_args(const std::vector<std::string>& argv, std::ostream& out,
                                     std::ostream& err, int& exit_code);

/// Full entry point: parse, echo the configuration, train.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace seerl::cli

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
#include <string>
#include <vector>

#include "seerl/types.hpp"

namespace seerl::approx {

struct ParamEntry {
  std::string name;
  Matrix value;
};

/// Named, ordered collection of real-valued arrays. The topology (names and
/// shapes) is fixed once built; only values change afterwards.
class ParamSet {
 public:
  ParamSet() = default;

  /// Appends an entry; throws ConfigError on a duplicate name.
  void add(std::string name, Matrix value);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const ParamEntry& operator[](std::size_t i) const { return entries_[i]; }
  Matrix& value(std::size_t i) { return entries_[i].value; }
  const Matrix& value(std::size_t i) const { return entries_[i].value; }

  /// Index of the entry called `name`; throws ConfigError if absent.
  std::size_t index_of(const std::string& name) const;
  bool contains(const std::string& name) const;
  const Matrix& at(const std::string& name) const { return entries_[index_of(name)].value; }
  Matrix& at(const std::string& name) { return entries_[index_of(name)].value; }

  /// Total number of scalars across all entries.
  std::size_t parameter_count() const;
  bool same_topology(const ParamSet& other) const;
  bool all_finite() const;

  /// Same names and shapes, every value zero.
  ParamSet zeros_like() const;

  /// Flattened copy in entry order (column-major within each entry).
  Vector flatten() const;
  /// Inverse of flatten(); throws DomainError on length mismatch.
  void assign_flat(const Vector& flat);

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  friend bool operator==(const ParamSet& a, const ParamSet& b);

 private:
  std::vector<ParamEntry> entries_;
};

/// target <- tau * online + (1 - tau) * target, elementwise.
void soft_target_update(const ParamSet& online, ParamSet& target, double tau);

/// Largest absolute elementwise difference; sets must share a topology.
double max_abs_difference(const ParamSet& a, const ParamSet& b);

}  // namespace seerl::approx

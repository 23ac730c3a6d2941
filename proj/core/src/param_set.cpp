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

#include "seerl/approx/param_set.hpp"

#include <algorithm>

namespace seerl::approx {

void ParamSet::add(std::string name, Matrix value) {
  if (contains(name)) throw ConfigError("ParamSet: duplicate entry '" + name + "'");
  entries_.push_back({std::move(name), std::move(value)});
}

std::size_t ParamSet::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].name == name) return i;
  throw ConfigError("ParamSet: no entry '" + name + "'");
}

bool ParamSet::contains(const std::string& name) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const ParamEntry& e) { return e.name == name; });
}

std::size_t ParamSet::parameter_count() const {
  std::size_t n = 0;
  for (const auto& e : entries_) n += static_cast<std::size_t>(e.value.size());
  return n;
}

bool ParamSet::same_topology(const ParamSet& other) const {
  if (entries_.size() != other.entries_.size()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& a = entries_[i];
    const auto& b = other.entries_[i];
    if (a.name != b.name || a.value.rows() != b.value.rows() || a.value.cols() != b.value.cols())
      return false;
  }
  return true;
}

bool ParamSet::all_finite() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const ParamEntry& e) { return e.value.allFinite(); });
}

ParamSet ParamSet::zeros_like() const {
  ParamSet out;
  for (const auto& e : entries_) out.add(e.name, Matrix::Zero(e.value.rows(), e.value.cols()));
  return out;
}

Vector ParamSet::flatten() const {
  Vector flat(static_cast<Eigen::Index>(parameter_count()));
  Eigen::Index offset = 0;
  for (const auto& e : entries_) {
    flat.segment(offset, e.value.size()) = e.value.reshaped();
    offset += e.value.size();
  }
  return flat;
}

void ParamSet::assign_flat(const Vector& flat) {
  if (flat.size() != static_cast<Eigen::Index>(parameter_count()))
    throw DomainError("ParamSet::assign_flat: length mismatch");
  Eigen::Index offset = 0;
  for (auto& e : entries_) {
    e.value.reshaped() = flat.segment(offset, e.value.size());
    offset += e.value.size();
  }
}

bool operator==(const ParamSet& a, const ParamSet& b) {
  if (!a.same_topology(b)) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.entries_[i].value != b.entries_[i].value) return false;
  return true;
}

void soft_target_update(const ParamSet& online, ParamSet& target, double tau) {
  if (!online.same_topology(target))
    throw DomainError("soft_target_update: parameter sets differ in topology");
  if (!(tau >= 0.0 && tau <= 1.0)) throw DomainError("soft_target_update: tau must lie in [0, 1]");
  for (std::size_t i = 0; i < online.size(); ++i)
    target.value(i) = tau * online.value(i) + (1.0 - tau) * target.value(i);
}

double max_abs_difference(const ParamSet& a, const ParamSet& b) {
  if (!a.same_topology(b)) throw DomainError("max_abs_difference: topology mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.value(i).size() > 0) m = std::max(m, (a.value(i) - b.value(i)).cwiseAbs().maxCoeff());
  return m;
}

}  // namespace seerl::approx

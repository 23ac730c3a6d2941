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

#include "seerl/approx/checkpoint.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace seerl::approx {
namespace {

using nlohmann::json;

constexpr const char* kFormat = "seerl-checkpoint";
constexpr int kVersion = 1;

json param_set_to_json(const ParamSet& params) {
  json entries = json::array();
  for (const auto& entry : params) {
    if (!entry.value.allFinite())
      throw DomainError("checkpoint: parameter '" + entry.name + "' is not finite");
    json data = json::array();
    // Row-major so the flat array reads naturally against the shape.
    for (Eigen::Index r = 0; r < entry.value.rows(); ++r)
      for (Eigen::Index c = 0; c < entry.value.cols(); ++c) data.push_back(entry.value(r, c));
    entries.push_back({{"name", entry.name},
                       {"shape", {entry.value.rows(), entry.value.cols()}},
                       {"data", std::move(data)}});
  }
  return entries;
}

ParamSet param_set_from_json(const json& entries) {
  ParamSet params;
  for (const auto& e : entries) {
    const auto rows = e.at("shape").at(0).get<Eigen::Index>();
    const auto cols = e.at("shape").at(1).get<Eigen::Index>();
    const auto& data = e.at("data");
    if (rows < 0 || cols < 0 || static_cast<Eigen::Index>(data.size()) != rows * cols)
      throw DomainError("checkpoint: data length does not match shape");
    Matrix m(rows, cols);
    std::size_t k = 0;
    for (Eigen::Index r = 0; r < rows; ++r)
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = data.at(k++).get<double>();
    params.add(e.at("name").get<std::string>(), std::move(m));
  }
  return params;
}

}  // namespace

std::string checkpoint_to_string(const Checkpoint& checkpoint) {
  json doc;
  doc["format"] = kFormat;
  doc["version"] = kVersion;
  doc["config"] = checkpoint.config;
  doc["rng"] = checkpoint.rng_states;
  for (const auto& [name, value] : checkpoint.scalars) {
    if (!std::isfinite(value)) throw DomainError("checkpoint: scalar '" + name + "' is not finite");
    doc["scalars"][name] = value;
  }
  if (checkpoint.scalars.empty()) doc["scalars"] = json::object();
  doc["params"] = json::object();
  for (const auto& [name, params] : checkpoint.params) doc["params"][name] = param_set_to_json(params);
  return doc.dump(1);
}

Checkpoint checkpoint_from_string(const std::string& text) {
  try {
    const json doc = json::parse(text);
    if (doc.at("format").get<std::string>() != kFormat) throw DomainError("checkpoint: unknown format");
    if (doc.at("version").get<int>() != kVersion) throw DomainError("checkpoint: unsupported version");
    Checkpoint cp;
    cp.config = doc.at("config").get<std::map<std::string, std::string>>();
    cp.rng_states = doc.at("rng").get<std::map<std::string, std::string>>();
    cp.scalars = doc.at("scalars").get<std::map<std::string, double>>();
    for (const auto& [name, entries] : doc.at("params").items())
      cp.params.emplace(name, param_set_from_json(entries));
    return cp;
  } catch (const json::exception& e) {
    throw DomainError(std::string("checkpoint: malformed document: ") + e.what());
  }
}

void save_checkpoint(const Checkpoint& checkpoint, const std::filesystem::path& path) {
  const std::string text = checkpoint_to_string(checkpoint);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DomainError("checkpoint: cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw DomainError("checkpoint: write failed for '" + path.string() + "'");
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("checkpoint: cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return checkpoint_from_string(buffer.str());
}

}  // namespace seerl::approx

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
#include <deque>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "seerl/approx/param_set.hpp"
#include "seerl/types.hpp"

namespace seerl::approx {

class Tape;

/// Handle to a node on a Tape. Values are batch-major matrices: one row per
/// sample, one column per feature.
class Var {
 public:
  Var() = default;

  const Matrix& value() const;
  Eigen::Index rows() const { return value().rows(); }
  Eigen::Index cols() const { return value().cols(); }
  /// Value of a 1x1 node.
  double scalar() const;

  Tape* tape() const { return tape_; }
  int id() const { return id_; }
  bool valid() const { return tape_ != nullptr; }

 private:
  friend class Tape;
  Var(Tape* tape, int id) : tape_(tape), id_(id) {}

  Tape* tape_ = nullptr;
  int id_ = -1;
};

/// Reverse-mode differentiation over a fixed set of matrix operations.
///
/// Nodes are recorded in creation order, which is a topological order, so
/// backward() is a single reverse sweep. A node requires a gradient only if
/// one of its inputs does; constants and non-trainable parameter bindings
/// cut the graph and cost nothing in the backward pass.
class Tape {
 public:
  using BackwardFn = std::function<void(Tape&, const Matrix& upstream)>;

  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  Var constant(Matrix value);
  /// Leaf whose gradient is wanted (e.g. a network input).
  Var input(Matrix value);
  /// Leaf bound to entry `index` of `params`. Repeated binding of the same
  /// (set, entry, trainable) triple returns the same node.
  Var param(const ParamSet& params, std::size_t index, bool trainable = true);
  Var param(const ParamSet& params, const std::string& name, bool trainable = true) {
    return param(params, params.index_of(name), trainable);
  }

  /// Accumulates d(loss)/d(node) for every node; `loss` must be 1x1.
  void backward(Var loss);
  /// Gradient of the last backward() loss w.r.t. `v`; zeros if unreachable.
  Matrix grad(Var v) const;
  /// Gradients for every entry of a trainable-bound ParamSet, zero for
  /// entries that were never bound.
  ParamSet gradients(const ParamSet& params) const;

  std::size_t node_count() const { return nodes_.size(); }

  // Building blocks for operations.
  Var record(Matrix value, const std::vector<Var>& inputs, BackwardFn backward);
  const Matrix& value_of(int id) const { return nodes_[static_cast<std::size_t>(id)].value; }
  bool requires_grad(Var v) const { return nodes_[static_cast<std::size_t>(v.id())].requires_grad; }
  void accumulate(Var v, const Matrix& g);

 private:
  struct Node {
    Matrix value;
    bool requires_grad = false;
    BackwardFn backward;
  };

  Var leaf(Matrix value, bool requires_grad);

  std::deque<Node> nodes_;
  std::vector<Matrix> grads_;
  std::vector<char> has_grad_;
  std::map<std::tuple<const ParamSet*, std::size_t, bool>, int> bindings_;
};

// ---- operations ---------------------------------------------------------
//
// Binary elementwise operations broadcast an operand with one row (or one
// column, or 1x1) against the other. Shape errors throw DomainError when the
// node is constructed.

Var operator+(Var a, Var b);
Var operator-(Var a, Var b);
/// Elementwise product.
Var operator*(Var a, Var b);
Var operator-(Var a);
Var operator*(Var a, double c);
Var operator*(double c, Var a);
Var operator+(Var a, double c);
Var operator-(Var a, double c);

Var matmul(Var a, Var b);
/// x * weight + bias, with bias a 1 x out row broadcast over the batch.
Var affine(Var x, Var weight, Var bias);
Var minimum(Var a, Var b);
Var maximum(Var a, Var b);

Var tanh(Var a);
Var relu(Var a);
Var exp(Var a);
Var log(Var a);
Var abs(Var a);
Var square(Var a);
/// log(1 + exp(a)), numerically stable.
Var softplus(Var a);
/// Clamp with zero gradient outside [low, high].
Var clamp(Var a, double low, double high);

/// Sum of all entries (1x1).
Var sum(Var a);
/// Mean of all entries (1x1).
Var mean(Var a);
/// Per-row sum over columns (rows x 1).
Var row_sum(Var a);
Var transpose(Var a);
Var concat_cols(const std::vector<Var>& parts);
Var slice_cols(Var a, Eigen::Index start, Eigen::Index count);
/// Repeats a 1 x c row `rows` times.
Var broadcast_rows(Var a, Eigen::Index rows);
/// Same value, no gradient flows back.
Var detach(Var a);
/// Reparameterised Gaussian draw mean + exp(log_std) * noise, with noise a
/// constant standard-normal matrix of the same shape.
Var gaussian_sample(Var mean, Var log_std, const Matrix& noise);

}  // namespace seerl::approx

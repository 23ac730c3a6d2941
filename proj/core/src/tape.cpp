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

#include "seerl/approx/tape.hpp"

#include <cmath>
#include <string>

namespace seerl::approx {
namespace {

Tape& same_tape(Var a, Var b) {
  if (!a.valid() || !b.valid()) throw DomainError("tape op: invalid variable");
  if (a.tape() != b.tape()) throw DomainError("tape op: variables belong to different tapes");
  return *a.tape();
}

Tape& tape_of(Var a) {
  if (!a.valid()) throw DomainError("tape op: invalid variable");
  return *a.tape();
}

Eigen::Index broadcast_dim(Eigen::Index a, Eigen::Index b, const char* op) {
  if (a == b) return a;
  if (a == 1) return b;
  if (b == 1) return a;
  throw DomainError(std::string(op) + ": incompatible shapes");
}

Matrix expand(const Matrix& m, Eigen::Index rows, Eigen::Index cols) {
  if (m.rows() == rows && m.cols() == cols) return m;
  return m.replicate(rows / m.rows(), cols / m.cols());
}

// Sums a broadcast gradient back down to the operand's shape.
Matrix reduce_to(const Matrix& g, Eigen::Index rows, Eigen::Index cols) {
  if (g.rows() == rows && g.cols() == cols) return g;
  Matrix r = g;
  if (rows == 1 && r.rows() != 1) r = r.colwise().sum().eval();
  if (cols == 1 && r.cols() != 1) r = r.rowwise().sum().eval();
  return r;
}

template <typename Forward, typename Partials>
Var binary(Var a, Var b, const char* op, Forward forward, Partials partials) {
  Tape& t = same_tape(a, b);
  const Eigen::Index rows = broadcast_dim(a.rows(), b.rows(), op);
  const Eigen::Index cols = broadcast_dim(a.cols(), b.cols(), op);
  const bool a_full = a.rows() == rows && a.cols() == cols;
  const bool b_full = b.rows() == rows && b.cols() == cols;
  Matrix value = (a_full && b_full) ? Matrix(forward(a.value(), b.value()))
                                    : Matrix(forward(expand(a.value(), rows, cols),
                                                     expand(b.value(), rows, cols)));
  return t.record(std::move(value), {a, b}, [a, b, rows, cols, partials](Tape& tape, const Matrix& g) {
    const Matrix av = expand(a.value(), rows, cols);
    const Matrix bv = expand(b.value(), rows, cols);
    Matrix ga, gb;
    partials(av, bv, g, ga, gb);
    if (tape.requires_grad(a)) tape.accumulate(a, reduce_to(ga, a.rows(), a.cols()));
    if (tape.requires_grad(b)) tape.accumulate(b, reduce_to(gb, b.rows(), b.cols()));
  });
}

template <typename Forward, typename Derivative>
Var unary(Var a, Forward forward, Derivative derivative) {
  Tape& t = tape_of(a);
  Matrix value = forward(a.value());
  return t.record(std::move(value), {a}, [a, derivative](Tape& tape, const Matrix& g) {
    tape.accumulate(a, derivative(a.value(), g));
  });
}

}  // namespace

// ---- Var / Tape -----------------------------------------------------------

const Matrix& Var::value() const {
  if (!tape_) throw DomainError("Var: uninitialised variable");
  return tape_->value_of(id_);
}

double Var::scalar() const {
  const Matrix& v = value();
  if (v.rows() != 1 || v.cols() != 1) throw DomainError("Var::scalar: value is not 1x1");
  return v(0, 0);
}

Var Tape::leaf(Matrix value, bool requires_grad) {
  nodes_.push_back(Node{std::move(value), requires_grad, {}});
  return Var(this, static_cast<int>(nodes_.size() - 1));
}

Var Tape::constant(Matrix value) { return leaf(std::move(value), false); }

Var Tape::input(Matrix value) { return leaf(std::move(value), true); }

Var Tape::param(const ParamSet& params, std::size_t index, bool trainable) {
  if (index >= params.size()) throw DomainError("Tape::param: entry index out of range");
  const auto key = std::make_tuple(&params, index, trainable);
  if (auto it = bindings_.find(key); it != bindings_.end()) return Var(this, it->second);
  Var v = leaf(params.value(index), trainable);
  bindings_.emplace(key, v.id());
  return v;
}

Var Tape::record(Matrix value, const std::vector<Var>& inputs, BackwardFn backward) {
  bool needs_grad = false;
  for (Var in : inputs) {
    if (in.tape() != this) throw DomainError("Tape::record: input from another tape");
    needs_grad = needs_grad || requires_grad(in);
  }
  nodes_.push_back(Node{std::move(value), needs_grad, needs_grad ? std::move(backward) : BackwardFn{}});
  return Var(this, static_cast<int>(nodes_.size() - 1));
}

void Tape::accumulate(Var v, const Matrix& g) {
  const auto id = static_cast<std::size_t>(v.id());
  if (!nodes_[id].requires_grad) return;
  if (has_grad_[id]) {
    grads_[id] += g;
  } else {
    grads_[id] = g;
    has_grad_[id] = 1;
  }
}

void Tape::backward(Var loss) {
  if (loss.tape() != this) throw DomainError("Tape::backward: loss from another tape");
  if (loss.rows() != 1 || loss.cols() != 1) throw DomainError("Tape::backward: loss must be 1x1");
  grads_.assign(nodes_.size(), Matrix());
  has_grad_.assign(nodes_.size(), 0);
  const auto root = static_cast<std::size_t>(loss.id());
  if (!nodes_[root].requires_grad) return;
  grads_[root] = Matrix::Ones(1, 1);
  has_grad_[root] = 1;
  for (std::size_t i = root + 1; i-- > 0;) {
    Node& node = nodes_[i];
    if (!has_grad_[i] || !node.backward) continue;
    node.backward(*this, grads_[i]);
  }
}

Matrix Tape::grad(Var v) const {
  const auto id = static_cast<std::size_t>(v.id());
  if (id < has_grad_.size() && has_grad_[id]) return grads_[id];
  return Matrix::Zero(v.rows(), v.cols());
}

ParamSet Tape::gradients(const ParamSet& params) const {
  ParamSet out = params.zeros_like();
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto it = bindings_.find(std::make_tuple(&params, i, true));
    if (it == bindings_.end()) continue;
    const auto id = static_cast<std::size_t>(it->second);
    if (id < has_grad_.size() && has_grad_[id]) out.value(i) = grads_[id];
  }
  return out;
}

// ---- arithmetic -----------------------------------------------------------

Var operator+(Var a, Var b) {
  return binary(
      a, b, "add", [](const Matrix& x, const Matrix& y) { return x + y; },
      [](const Matrix&, const Matrix&, const Matrix& g, Matrix& ga, Matrix& gb) {
        ga = g;
        gb = g;
      });
}

Var operator-(Var a, Var b) {
  return binary(
      a, b, "sub", [](const Matrix& x, const Matrix& y) { return x - y; },
      [](const Matrix&, const Matrix&, const Matrix& g, Matrix& ga, Matrix& gb) {
        ga = g;
        gb = -g;
      });
}

Var operator*(Var a, Var b) {
  return binary(
      a, b, "mul", [](const Matrix& x, const Matrix& y) { return x.cwiseProduct(y); },
      [](const Matrix& x, const Matrix& y, const Matrix& g, Matrix& ga, Matrix& gb) {
        ga = g.cwiseProduct(y);
        gb = g.cwiseProduct(x);
      });
}

Var minimum(Var a, Var b) {
  // Ties send the gradient to the first operand.
  return binary(
      a, b, "minimum", [](const Matrix& x, const Matrix& y) { return x.cwiseMin(y); },
      [](const Matrix& x, const Matrix& y, const Matrix& g, Matrix& ga, Matrix& gb) {
        const auto pick_a = (x.array() <= y.array()).cast<double>();
        ga = (g.array() * pick_a).matrix();
        gb = (g.array() * (1.0 - pick_a)).matrix();
      });
}

Var maximum(Var a, Var b) {
  return binary(
      a, b, "maximum", [](const Matrix& x, const Matrix& y) { return x.cwiseMax(y); },
      [](const Matrix& x, const Matrix& y, const Matrix& g, Matrix& ga, Matrix& gb) {
        const auto pick_a = (x.array() >= y.array()).cast<double>();
        ga = (g.array() * pick_a).matrix();
        gb = (g.array() * (1.0 - pick_a)).matrix();
      });
}

Var operator-(Var a) {
  return unary(
      a, [](const Matrix& x) { return Matrix(-x); }, [](const Matrix&, const Matrix& g) { return Matrix(-g); });
}

Var operator*(Var a, double c) {
  return unary(
      a, [c](const Matrix& x) { return Matrix(c * x); },
      [c](const Matrix&, const Matrix& g) { return Matrix(c * g); });
}

Var operator*(double c, Var a) { return a * c; }

Var operator+(Var a, double c) {
  return unary(
      a, [c](const Matrix& x) { return Matrix(x.array() + c); },
      [](const Matrix&, const Matrix& g) { return g; });
}

Var operator-(Var a, double c) { return a + (-c); }

Var matmul(Var a, Var b) {
  Tape& t = same_tape(a, b);
  if (a.cols() != b.rows()) throw DomainError("matmul: inner dimensions differ");
  Matrix value = a.value() * b.value();
  return t.record(std::move(value), {a, b}, [a, b](Tape& tape, const Matrix& g) {
    if (tape.requires_grad(a)) tape.accumulate(a, g * b.value().transpose());
    if (tape.requires_grad(b)) tape.accumulate(b, a.value().transpose() * g);
  });
}

Var affine(Var x, Var weight, Var bias) {
  Tape& t = same_tape(x, weight);
  same_tape(x, bias);
  if (x.cols() != weight.rows()) throw DomainError("affine: input width does not match weight rows");
  if (bias.rows() != 1 || bias.cols() != weight.cols())
    throw DomainError("affine: bias must be a 1 x out row");
  Matrix value = x.value() * weight.value();
  value.rowwise() += bias.value().row(0);
  return t.record(std::move(value), {x, weight, bias}, [x, weight, bias](Tape& tape, const Matrix& g) {
    if (tape.requires_grad(x)) tape.accumulate(x, g * weight.value().transpose());
    if (tape.requires_grad(weight)) tape.accumulate(weight, x.value().transpose() * g);
    if (tape.requires_grad(bias)) tape.accumulate(bias, g.colwise().sum());
  });
}

// ---- elementwise nonlinearities ---------------------------------------------

Var tanh(Var a) {
  Tape& t = tape_of(a);
  Matrix value = a.value().array().tanh().matrix();
  const int id = static_cast<int>(t.node_count());
  return t.record(std::move(value), {a}, [a, id](Tape& tape, const Matrix& g) {
    const Matrix& y = tape.value_of(id);
    tape.accumulate(a, (g.array() * (1.0 - y.array().square())).matrix());
  });
}

Var relu(Var a) {
  return unary(
      a, [](const Matrix& x) { return Matrix(x.cwiseMax(0.0)); },
      [](const Matrix& x, const Matrix& g) {
        return Matrix((g.array() * (x.array() > 0.0).cast<double>()).matrix());
      });
}

Var exp(Var a) {
  return unary(
      a, [](const Matrix& x) { return Matrix(x.array().exp().matrix()); },
      [](const Matrix& x, const Matrix& g) { return Matrix((g.array() * x.array().exp()).matrix()); });
}

Var log(Var a) {
  if ((a.value().array() <= 0.0).any()) throw DomainError("log: argument must be positive");
  return unary(
      a, [](const Matrix& x) { return Matrix(x.array().log().matrix()); },
      [](const Matrix& x, const Matrix& g) { return Matrix((g.array() / x.array()).matrix()); });
}

Var abs(Var a) {
  // Subgradient at zero is zero.
  return unary(
      a, [](const Matrix& x) { return Matrix(x.cwiseAbs()); },
      [](const Matrix& x, const Matrix& g) {
        return Matrix((g.array() * x.array().sign()).matrix());
      });
}

Var square(Var a) {
  return unary(
      a, [](const Matrix& x) { return Matrix(x.array().square().matrix()); },
      [](const Matrix& x, const Matrix& g) { return Matrix((2.0 * g.array() * x.array()).matrix()); });
}

Var softplus(Var a) {
  return unary(
      a,
      [](const Matrix& x) {
        return Matrix(x.unaryExpr([](double v) { return std::max(v, 0.0) + std::log1p(std::exp(-std::abs(v))); }));
      },
      [](const Matrix& x, const Matrix& g) {
        const Matrix sig = x.unaryExpr([](double v) {
          return v >= 0.0 ? 1.0 / (1.0 + std::exp(-v)) : std::exp(v) / (1.0 + std::exp(v));
        });
        return Matrix(g.cwiseProduct(sig));
      });
}

Var clamp(Var a, double low, double high) {
  if (!(low <= high)) throw DomainError("clamp: low must not exceed high");
  return unary(
      a, [low, high](const Matrix& x) { return Matrix(x.cwiseMax(low).cwiseMin(high)); },
      [low, high](const Matrix& x, const Matrix& g) {
        const auto inside = ((x.array() >= low) && (x.array() <= high)).cast<double>();
        return Matrix((g.array() * inside).matrix());
      });
}

// ---- reductions and structure ---------------------------------------------

Var sum(Var a) {
  Tape& t = tape_of(a);
  Matrix value(1, 1);
  value(0, 0) = a.value().sum();
  return t.record(std::move(value), {a}, [a](Tape& tape, const Matrix& g) {
    tape.accumulate(a, Matrix::Constant(a.rows(), a.cols(), g(0, 0)));
  });
}

Var mean(Var a) {
  if (a.value().size() == 0) throw DomainError("mean: empty input");
  Tape& t = tape_of(a);
  const double n = static_cast<double>(a.value().size());
  Matrix value(1, 1);
  value(0, 0) = a.value().sum() / n;
  return t.record(std::move(value), {a}, [a, n](Tape& tape, const Matrix& g) {
    tape.accumulate(a, Matrix::Constant(a.rows(), a.cols(), g(0, 0) / n));
  });
}

Var row_sum(Var a) {
  Tape& t = tape_of(a);
  Matrix value = a.value().rowwise().sum();
  return t.record(std::move(value), {a}, [a](Tape& tape, const Matrix& g) {
    tape.accumulate(a, g.replicate(1, a.cols()));
  });
}

Var transpose(Var a) {
  Tape& t = tape_of(a);
  Matrix value = a.value().transpose();
  return t.record(std::move(value), {a}, [a](Tape& tape, const Matrix& g) {
    tape.accumulate(a, g.transpose());
  });
}

Var concat_cols(const std::vector<Var>& parts) {
  if (parts.empty()) throw DomainError("concat_cols: no inputs");
  Tape& t = tape_of(parts.front());
  const Eigen::Index rows = parts.front().rows();
  Eigen::Index cols = 0;
  for (Var p : parts) {
    same_tape(parts.front(), p);
    if (p.rows() != rows) throw DomainError("concat_cols: row counts differ");
    cols += p.cols();
  }
  Matrix value(rows, cols);
  Eigen::Index offset = 0;
  for (Var p : parts) {
    value.middleCols(offset, p.cols()) = p.value();
    offset += p.cols();
  }
  return t.record(std::move(value), parts, [parts](Tape& tape, const Matrix& g) {
    Eigen::Index off = 0;
    for (Var p : parts) {
      if (tape.requires_grad(p)) tape.accumulate(p, g.middleCols(off, p.cols()));
      off += p.cols();
    }
  });
}

Var slice_cols(Var a, Eigen::Index start, Eigen::Index count) {
  if (start < 0 || count < 0 || start + count > a.cols())
    throw DomainError("slice_cols: range out of bounds");
  Tape& t = tape_of(a);
  Matrix value = a.value().middleCols(start, count);
  return t.record(std::move(value), {a}, [a, start, count](Tape& tape, const Matrix& g) {
    Matrix full = Matrix::Zero(a.rows(), a.cols());
    full.middleCols(start, count) = g;
    tape.accumulate(a, full);
  });
}

Var broadcast_rows(Var a, Eigen::Index rows) {
  if (a.rows() != 1) throw DomainError("broadcast_rows: input must have one row");
  if (rows < 1) throw DomainError("broadcast_rows: rows must be positive");
  Tape& t = tape_of(a);
  Matrix value = a.value().replicate(rows, 1);
  return t.record(std::move(value), {a}, [a](Tape& tape, const Matrix& g) {
    tape.accumulate(a, g.colwise().sum());
  });
}

Var detach(Var a) { return tape_of(a).constant(a.value()); }

Var gaussian_sample(Var mean_v, Var log_std, const Matrix& noise) {
  if (mean_v.rows() != noise.rows() || mean_v.cols() != noise.cols() ||
      log_std.rows() != noise.rows() || log_std.cols() != noise.cols())
    throw DomainError("gaussian_sample: shape mismatch");
  Tape& t = same_tape(mean_v, log_std);
  return mean_v + exp(log_std) * t.constant(noise);
}

}  // namespace seerl::approx

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

#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "seerl/approx/tape.hpp"
#include "seerl/oracle.hpp"

namespace seerl::approx {
namespace {

Matrix mat(Eigen::Index r, Eigen::Index c, std::initializer_list<double> v) {
  Matrix m(r, c);
  auto it = v.begin();
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = *it++;
  return m;
}

Matrix random_matrix(Eigen::Index r, Eigen::Index c, Rng& rng, double lo = -1.0, double hi = 1.0) {
  Matrix m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(lo, hi);
  return m;
}

// Compares analytic and central-difference gradients of `build` w.r.t. every
// entry of `params`.
void expect_gradients_match(const ParamSet& params, const std::function<Var(Tape&, const ParamSet&)>& build,
                            double tolerance = 1e-6) {
  Tape tape;
  for (std::size_t i = 0; i < params.size(); ++i) tape.param(params, i);
  tape.backward(build(tape, params));
  const ParamSet analytic = tape.gradients(params);
  const ParamSet numeric = oracle::finite_difference_gradients(
      [&](const ParamSet& p) {
        Tape t;
        return build(t, p).scalar();
      },
      params);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const Matrix& a = analytic.value(i);
    const Matrix& n = numeric.value(i);
    for (Eigen::Index k = 0; k < a.size(); ++k)
      EXPECT_NEAR(a.data()[k], n.data()[k], tolerance * (1.0 + std::abs(n.data()[k])))
          << params[i].name << "[" << k << "]";
  }
}

TEST(TapeTest, SquaredResidualGradient) {
  ParamSet p;
  p.add("w", mat(1, 1, {1.0}));
  Tape tape;
  Var w = tape.param(p, "w");
  Var loss = square(w * 2.0 - 0.0);
  tape.backward(sum(loss));
  EXPECT_DOUBLE_EQ(tape.grad(w)(0, 0), 8.0);
}

TEST(TapeTest, AbsSubgradient) {
  Tape tape;
  Var u = tape.input(mat(1, 3, {-3.0, 0.0, 2.0}));
  tape.backward(sum(abs(u)));
  EXPECT_EQ(tape.grad(u), mat(1, 3, {-1.0, 0.0, 1.0}));
}

TEST(TapeTest, ConstantsReceiveNoGradient) {
  Tape tape;
  Var c = tape.constant(mat(1, 1, {2.0}));
  Var x = tape.input(mat(1, 1, {3.0}));
  tape.backward(sum(c * x));
  EXPECT_EQ(tape.grad(x)(0, 0), 2.0);
  EXPECT_EQ(tape.grad(c)(0, 0), 0.0);
  EXPECT_FALSE(tape.requires_grad(c));
}

TEST(TapeTest, FrozenParamsGetZeroGradient) {
  ParamSet p;
  p.add("w", mat(1, 1, {1.5}));
  Tape tape;
  Var w = tape.param(p, "w", false);
  Var x = tape.input(mat(1, 1, {2.0}));
  tape.backward(sum(w * x));
  EXPECT_EQ(tape.grad(x)(0, 0), 1.5);
  EXPECT_EQ(tape.gradients(p).value(0)(0, 0), 0.0);
}

TEST(TapeTest, RepeatedBindingReturnsSameNode) {
  ParamSet p;
  p.add("w", mat(1, 1, {1.0}));
  Tape tape;
  EXPECT_EQ(tape.param(p, 0).id(), tape.param(p, "w").id());
  EXPECT_NE(tape.param(p, 0).id(), tape.param(p, 0, false).id());
}

TEST(TapeTest, ShapeErrorsAtConstruction) {
  Tape tape;
  Var a = tape.input(Matrix::Zero(2, 3));
  Var b = tape.input(Matrix::Zero(3, 2));
  EXPECT_THROW(a + b, DomainError);
  EXPECT_THROW(matmul(a, a), DomainError);
  EXPECT_THROW(tape.backward(a), DomainError);
  EXPECT_THROW(log(tape.constant(mat(1, 1, {0.0}))), DomainError);
  Tape other;
  EXPECT_THROW(a + other.input(Matrix::Zero(2, 3)), DomainError);
}

TEST(TapeTest, BroadcastingShapes) {
  Tape tape;
  Var a = tape.input(Matrix::Ones(4, 3));
  Var row = tape.input(mat(1, 3, {1.0, 2.0, 3.0}));
  Var col = tape.input(Matrix::Ones(4, 1));
  Var s = tape.input(mat(1, 1, {2.0}));
  Var out = (a + row) * col - s;
  EXPECT_EQ(out.rows(), 4);
  EXPECT_EQ(out.cols(), 3);
  tape.backward(sum(out));
  EXPECT_EQ(tape.grad(row), mat(1, 3, {4.0, 4.0, 4.0}));
  EXPECT_EQ(tape.grad(s)(0, 0), -12.0);
}

TEST(TapeTest, MinimumTiesGoToFirstOperand) {
  Tape tape;
  Var a = tape.input(mat(1, 2, {1.0, 2.0}));
  Var b = tape.input(mat(1, 2, {1.0, 0.5}));
  tape.backward(sum(minimum(a, b)));
  EXPECT_EQ(tape.grad(a), mat(1, 2, {1.0, 0.0}));
  EXPECT_EQ(tape.grad(b), mat(1, 2, {0.0, 1.0}));
}

TEST(TapeTest, ClampStopsGradientOutside) {
  Tape tape;
  Var a = tape.input(mat(1, 3, {-5.0, 0.5, 5.0}));
  tape.backward(sum(clamp(a, -1.0, 1.0)));
  EXPECT_EQ(tape.grad(a), mat(1, 3, {0.0, 1.0, 0.0}));
}

TEST(TapeTest, DetachCutsGraph) {
  Tape tape;
  Var a = tape.input(mat(1, 1, {3.0}));
  tape.backward(sum(a * detach(a)));
  EXPECT_EQ(tape.grad(a)(0, 0), 3.0);
}

TEST(TapeTest, SoftplusIsStableForLargeInputs) {
  Tape tape;
  Var a = tape.input(mat(1, 3, {-800.0, 0.0, 800.0}));
  Var s = softplus(a);
  EXPECT_NEAR(s.value()(0, 0), 0.0, 1e-300);
  EXPECT_NEAR(s.value()(0, 1), std::log(2.0), 1e-15);
  EXPECT_EQ(s.value()(0, 2), 800.0);
  tape.backward(sum(s));
  EXPECT_NEAR(tape.grad(a)(0, 1), 0.5, 1e-15);
  EXPECT_TRUE(tape.grad(a).allFinite());
}

// Each supported operation against central differences.
struct OpCase {
  const char* name;
  std::function<Var(Tape&, Var, Var)> op;
};

void PrintTo(const OpCase& c, std::ostream* os) { *os << c.name; }

class OpGradientTest : public ::testing::TestWithParam<OpCase> {};

TEST_P(OpGradientTest, MatchesFiniteDifferences) {
  Rng rng(fnv1a64(GetParam().name));
  ParamSet p;
  p.add("a", random_matrix(3, 4, rng, 0.2, 1.5));
  p.add("b", random_matrix(3, 4, rng, -1.5, -0.2));
  const auto& op = GetParam().op;
  expect_gradients_match(p, [&](Tape& t, const ParamSet& ps) {
    Var out = op(t, t.param(ps, 0), t.param(ps, 1));
    Var weights = t.constant(Matrix(Vector::LinSpaced(out.rows() * out.cols(), 0.3, 1.7).reshaped(out.rows(), out.cols())));
    return sum(out * weights);
  });
}

INSTANTIATE_TEST_SUITE_P(
    Ops, OpGradientTest,
    ::testing::Values(
        OpCase{"add", [](Tape&, Var a, Var b) { return a + b; }},
        OpCase{"sub", [](Tape&, Var a, Var b) { return a - b; }},
        OpCase{"mul", [](Tape&, Var a, Var b) { return a * b; }},
        OpCase{"neg", [](Tape&, Var a, Var) { return -a; }},
        OpCase{"scale", [](Tape&, Var a, Var) { return 2.5 * a + 1.0; }},
        OpCase{"matmul", [](Tape&, Var a, Var b) { return matmul(a, transpose(b)); }},
        OpCase{"affine",
               [](Tape&, Var a, Var b) { return affine(a, transpose(b), transpose(slice_cols(a, 0, 1))); }},
        OpCase{"min", [](Tape&, Var a, Var b) { return minimum(a, -b * 0.9); }},
        OpCase{"max", [](Tape&, Var a, Var b) { return maximum(a, -b * 0.9); }},
        OpCase{"tanh", [](Tape&, Var a, Var b) { return tanh(a * b); }},
        OpCase{"relu", [](Tape&, Var a, Var b) { return relu(a + b); }},
        OpCase{"exp", [](Tape&, Var a, Var) { return exp(a); }},
        OpCase{"log", [](Tape&, Var a, Var) { return log(a); }},
        OpCase{"abs", [](Tape&, Var a, Var b) { return abs(a + b * 0.5); }},
        OpCase{"square", [](Tape&, Var a, Var b) { return square(a - b); }},
        OpCase{"softplus", [](Tape&, Var a, Var b) { return softplus(a + 2.0 * b); }},
        OpCase{"clamp", [](Tape&, Var a, Var) { return clamp(a, 0.5, 1.0); }},
        OpCase{"mean", [](Tape&, Var a, Var b) { return mean(a * b); }},
        OpCase{"row_sum", [](Tape&, Var a, Var b) { return row_sum(a * b); }},
        OpCase{"concat", [](Tape&, Var a, Var b) { return concat_cols({a, b, a}); }},
        OpCase{"slice", [](Tape&, Var a, Var b) { return slice_cols(a * b, 1, 2); }},
        OpCase{"broadcast_rows",
               [](Tape&, Var a, Var b) { return broadcast_rows(transpose(slice_cols(a * b, 0, 1)), 5); }},
        OpCase{"gaussian",
               [](Tape&, Var a, Var b) { return gaussian_sample(a, b, Matrix::Constant(3, 4, 0.7)); }},
        OpCase{"row_broadcast", [](Tape&, Var a, Var b) { return a + transpose(row_sum(transpose(b))); }},
        OpCase{"col_broadcast", [](Tape&, Var a, Var b) { return a * row_sum(b); }}),
    [](const ::testing::TestParamInfo<OpCase>& info) { return std::string(info.param.name); });

TEST(TapeTest, RandomCompositeGraphsMatchFiniteDifferences) {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    ParamSet p;
    p.add("w1", random_matrix(3, 5, rng));
    p.add("b1", random_matrix(1, 5, rng));
    p.add("w2", random_matrix(5, 2, rng));
    const Matrix x = random_matrix(7, 3, rng);
    const Matrix noise = random_matrix(7, 2, rng);
    expect_gradients_match(p, [&](Tape& t, const ParamSet& ps) {
      Var h = tanh(affine(t.constant(x), t.param(ps, 0), t.param(ps, 1)));
      Var out = matmul(h, t.param(ps, 2));
      Var mu = slice_cols(out, 0, 1);
      Var ls = clamp(slice_cols(out, 1, 1), -2.0, 2.0);
      Var z = gaussian_sample(mu, ls, noise.leftCols(1));
      return mean(square(z) + exp(ls) - minimum(mu, ls) + softplus(z));
    });
  }
}

}  // namespace
}  // namespace seerl::approx

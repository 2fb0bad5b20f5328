// Copyright 2026 The pwig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pwig/tape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pwig/errors.hpp"
#include "pwig/ops.hpp"

namespace pwig {
namespace {

Tensor checked(OpKind kind, Shape shape, std::vector<double> data) {
  if (!all_finite(data)) {
    throw NumericError(std::string(op_name(kind)) +
                       ": non-finite intermediate value");
  }
  return Tensor(std::move(shape), std::move(data));
}

void accumulate(std::vector<double>& dst, std::span<const double> src) {
  if (dst.empty()) {
    dst.assign(src.begin(), src.end());
    return;
  }
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] += src[i];
}

}  // namespace

const char* op_name(OpKind kind) {
  switch (kind) {
    case OpKind::kInput: return "input";
    case OpKind::kConstant: return "constant";
    case OpKind::kDense: return "dense";
    case OpKind::kConv2d: return "conv2d";
    case OpKind::kRelu: return "relu";
    case OpKind::kTanh: return "tanh";
    case OpKind::kExp: return "exp";
    case OpKind::kSquare: return "square";
    case OpKind::kMaxPool: return "maxpool2d";
    case OpKind::kFlatten: return "flatten";
    case OpKind::kDropout: return "dropout";
    case OpKind::kAdd: return "add";
    case OpKind::kScale: return "scale";
    case OpKind::kSelect: return "select";
    case OpKind::kSum: return "sum";
    case OpKind::kDot: return "dot";
  }
  return "unknown";
}

Var Tape::push(Node node) {
  nodes_.push_back(std::move(node));
  return Var(nodes_.size() - 1);
}

Var Tape::push_unary(OpKind kind, Var parent, Tensor value) {
  Node n{kind, {parent.index(), 0}, 1, std::move(value)};
  return push(std::move(n));
}

const Tape::Node& Tape::node(Var v) const {
  if (v.index() >= nodes_.size()) {
    throw PreconditionError("variable does not belong to this tape");
  }
  return nodes_[v.index()];
}

Var Tape::input(Tensor x) {
  if (has_input_) throw PreconditionError("tape already has an input");
  has_input_ = true;
  input_ = nodes_.size();
  return push(Node{OpKind::kInput, {}, 0, std::move(x)});
}

Var Tape::constant(Tensor x) {
  return push(Node{OpKind::kConstant, {}, 0, std::move(x)});
}

Var Tape::dense(Var x, const Tensor& weights, const Tensor& bias) {
  Node n{OpKind::kDense, {x.index(), 0}, 1,
         ops::dense(node(x).value, weights, bias)};
  n.weights = &weights;
  n.bias = &bias;
  return push(std::move(n));
}

Var Tape::conv2d(Var x, const Tensor& kernels, const Tensor& bias,
                 std::size_t stride, std::size_t padding) {
  Node n{OpKind::kConv2d, {x.index(), 0}, 1,
         ops::conv2d(node(x).value, kernels, bias, stride, padding)};
  n.weights = &kernels;
  n.bias = &bias;
  n.stride = stride;
  n.extent = padding;
  return push(std::move(n));
}

Var Tape::relu(Var x) {
  return push_unary(OpKind::kRelu, x, ops::relu(node(x).value));
}

Var Tape::tanh(Var x) {
  return push_unary(OpKind::kTanh, x, ops::tanh(node(x).value));
}

Var Tape::exp(Var x) {
  const Tensor& in = node(x).value;
  std::vector<double> out = in.values();
  for (double& v : out) v = std::exp(v);
  return push_unary(OpKind::kExp, x,
                    checked(OpKind::kExp, in.shape(), std::move(out)));
}

Var Tape::square(Var x) {
  const Tensor& in = node(x).value;
  std::vector<double> out = in.values();
  for (double& v : out) v = v * v;
  return push_unary(OpKind::kSquare, x,
                    checked(OpKind::kSquare, in.shape(), std::move(out)));
}

Var Tape::maxpool2d(Var x, std::size_t size, std::size_t stride) {
  ops::PoolResult pooled = ops::maxpool2d(node(x).value, size, stride);
  Node n{OpKind::kMaxPool, {x.index(), 0}, 1, std::move(pooled.output)};
  n.argmax = std::move(pooled.argmax);
  n.stride = stride;
  n.extent = size;
  return push(std::move(n));
}

Var Tape::flatten(Var x) {
  return push_unary(OpKind::kFlatten, x, ops::flatten(node(x).value));
}

Var Tape::dropout(Var x, double rate) {
  Node n{OpKind::kDropout, {x.index(), 0}, 1,
         ops::dropout_inference(node(x).value, rate)};
  n.scalar = rate;
  return push(std::move(n));
}

Var Tape::add(Var a, Var b) {
  const Tensor& lhs = node(a).value;
  const Tensor& rhs = node(b).value;
  if (lhs.shape() != rhs.shape()) {
    throw ShapeError("add: operand shapes " + shape_string(lhs.shape()) +
                     " and " + shape_string(rhs.shape()) + " differ");
  }
  std::vector<double> out = lhs.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += rhs[i];
  return push(Node{OpKind::kAdd, {a.index(), b.index()}, 2,
                   checked(OpKind::kAdd, lhs.shape(), std::move(out))});
}

Var Tape::scale(Var x, double factor) {
  const Tensor& in = node(x).value;
  std::vector<double> out = in.values();
  for (double& v : out) v *= factor;
  Node n{OpKind::kScale, {x.index(), 0}, 1,
         checked(OpKind::kScale, in.shape(), std::move(out))};
  n.scalar = factor;
  return push(std::move(n));
}

Var Tape::select(Var x, std::size_t flat_index) {
  const Tensor& in = node(x).value;
  if (flat_index >= in.size()) {
    throw PreconditionError("select: index " + std::to_string(flat_index) +
                            " out of range for " + shape_string(in.shape()));
  }
  Node n{OpKind::kSelect, {x.index(), 0}, 1, Tensor::vector({in[flat_index]})};
  n.index = flat_index;
  return push(std::move(n));
}

Var Tape::sum(Var x) {
  const Tensor& in = node(x).value;
  double acc = 0.0;
  for (double v : in.data()) acc += v;
  return push_unary(OpKind::kSum, x,
                    checked(OpKind::kSum, {1}, std::vector<double>{acc}));
}

Var Tape::dot(Var x, const Tensor& weights) {
  const Tensor& in = node(x).value;
  if (in.shape() != weights.shape()) {
    throw ShapeError("dot: operand shapes " + shape_string(in.shape()) +
                     " and " + shape_string(weights.shape()) + " differ");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < in.size(); ++i) acc += in[i] * weights[i];
  Node n{OpKind::kDot, {x.index(), 0}, 1,
         checked(OpKind::kDot, {1}, std::vector<double>{acc})};
  n.weights = &weights;
  return push(std::move(n));
}

Tensor Tape::gradient(Var output) const {
  const Node& out = node(output);
  if (out.value.size() != 1) {
    throw ShapeError("gradient: output must be a scalar, got shape " +
                     shape_string(out.value.shape()));
  }
  if (!has_input_) throw PreconditionError("gradient: tape has no input");

  std::vector<std::vector<double>> grads(output.index() + 1);
  grads[output.index()] = {1.0};

  for (std::size_t k = output.index() + 1; k-- > 0;) {
    if (grads[k].empty() || k == input_) continue;
    const Node& n = nodes_[k];
    const std::vector<double>& g = grads[k];
    const std::size_t p = n.parents[0];
    switch (n.kind) {
      case OpKind::kInput:
      case OpKind::kConstant:
        break;
      case OpKind::kDense:
        accumulate(grads[p], ops::dense_input_grad(g, *n.weights));
        break;
      case OpKind::kConv2d:
        accumulate(grads[p],
                   ops::conv2d_input_grad(g, nodes_[p].value.shape(),
                                          *n.weights, n.stride, n.extent));
        break;
      case OpKind::kRelu: {
        const Tensor& pre = nodes_[p].value;
        std::vector<double> local(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
          local[i] = pre[i] > 0.0 ? g[i] : 0.0;
        }
        accumulate(grads[p], local);
        break;
      }
      case OpKind::kTanh: {
        std::vector<double> local(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
          const double y = n.value[i];
          local[i] = g[i] * (1.0 - y * y);
        }
        accumulate(grads[p], local);
        break;
      }
      case OpKind::kExp: {
        std::vector<double> local(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) local[i] = g[i] * n.value[i];
        accumulate(grads[p], local);
        break;
      }
      case OpKind::kSquare: {
        const Tensor& in = nodes_[p].value;
        std::vector<double> local(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
          local[i] = g[i] * 2.0 * in[i];
        }
        accumulate(grads[p], local);
        break;
      }
      case OpKind::kMaxPool:
        accumulate(grads[p], ops::maxpool2d_input_grad(
                                 g, nodes_[p].value.size(), n.argmax));
        break;
      case OpKind::kFlatten:
      case OpKind::kDropout:
        accumulate(grads[p], g);
        break;
      case OpKind::kAdd:
        accumulate(grads[p], g);
        accumulate(grads[n.parents[1]], g);
        break;
      case OpKind::kScale: {
        std::vector<double> local(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) local[i] = g[i] * n.scalar;
        accumulate(grads[p], local);
        break;
      }
      case OpKind::kSelect: {
        std::vector<double> local(nodes_[p].value.size(), 0.0);
        local[n.index] = g[0];
        accumulate(grads[p], local);
        break;
      }
      case OpKind::kSum:
        accumulate(grads[p],
                   std::vector<double>(nodes_[p].value.size(), g[0]));
        break;
      case OpKind::kDot: {
        std::vector<double> local(n.weights->size());
        for (std::size_t i = 0; i < local.size(); ++i) {
          local[i] = g[0] * (*n.weights)[i];
        }
        accumulate(grads[p], local);
        break;
      }
    }
  }

  const Shape& in_shape = nodes_[input_].value.shape();
  if (input_ > output.index() || grads[input_].empty()) {
    return Tensor::zeros(in_shape);
  }
  std::vector<double> result = std::move(grads[input_]);
  if (!all_finite(result)) {
    throw NumericError("gradient: non-finite value in backward pass");
  }
  return Tensor(in_shape, std::move(result));
}

double Tape::min_kink_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (const Node& n : nodes_) {
    if (n.kind == OpKind::kRelu) {
      for (double v : nodes_[n.parents[0]].value.data()) {
        best = std::min(best, std::abs(v));
      }
    } else if (n.kind == OpKind::kMaxPool) {
      const Tensor& in = nodes_[n.parents[0]].value;
      // A window of dead ReLU units ties at zero, but the pooled value stays
      // locally constant; the ReLU check above already bounds that region.
      const bool after_relu = nodes_[n.parents[0]].kind == OpKind::kRelu;
      const std::size_t h = in.shape()[1], w = in.shape()[2];
      const std::size_t oh = n.value.shape()[1], ow = n.value.shape()[2];
      for (std::size_t ch = 0; ch < in.shape()[0]; ++ch) {
        for (std::size_t oy = 0; oy < oh; ++oy) {
          for (std::size_t ox = 0; ox < ow; ++ox) {
            const double top = n.value[(ch * oh + oy) * ow + ox];
            const std::size_t winner = n.argmax[(ch * oh + oy) * ow + ox];
            if (after_relu && top == 0.0) continue;
            for (std::size_t dy = 0; dy < n.extent; ++dy) {
              for (std::size_t dx = 0; dx < n.extent; ++dx) {
                const std::size_t idx =
                    (ch * h + oy * n.stride + dy) * w + ox * n.stride + dx;
                if (idx != winner) best = std::min(best, top - in[idx]);
              }
            }
          }
        }
      }
    }
  }
  return best;
}

double evaluate(const ScalarFunction& f, const Tensor& x) {
  Tape tape;
  const Var out = f(tape, tape.input(x));
  const Tensor& v = tape.value(out);
  if (v.size() != 1) {
    throw ShapeError("function output must be a scalar, got shape " +
                     shape_string(v.shape()));
  }
  return v[0];
}

Tensor gradient(const ScalarFunction& f, const Tensor& x) {
  return value_and_gradient(f, x).gradient;
}

ValueAndGradient value_and_gradient(const ScalarFunction& f,
                                    const Tensor& x) {
  Tape tape;
  const Var out = f(tape, tape.input(x));
  Tensor g = tape.gradient(out);
  return {tape.value(out)[0], std::move(g)};
}

}  // namespace pwig

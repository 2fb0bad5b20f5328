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

#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "pwig/tensor.hpp"

namespace pwig {

enum class OpKind {
  kInput,
  kConstant,
  kDense,
  kConv2d,
  kRelu,
  kTanh,
  kExp,
  kSquare,
  kMaxPool,
  kFlatten,
  kDropout,
  kAdd,
  kScale,
  kSelect,
  kSum,
  kDot,
};

const char* op_name(OpKind kind);

// Handle to a node on a Tape.
class Var {
 public:
  std::size_t index() const noexcept { return index_; }

 private:
  friend class Tape;
  explicit Var(std::size_t index) : index_(index) {}
  std::size_t index_;
};

// Append-only record of one forward evaluation, replayed backwards to get
// the gradient of a scalar output with respect to the tape's single input.
//
// Layer parameters are held by reference and must outlive the tape; the
// rvalue overloads are deleted so temporaries cannot bind. Parameters are
// constants here: there is no gradient with respect to them.
class Tape {
 public:
  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  // Registers the variable being differentiated. Exactly one per tape.
  Var input(Tensor x);
  Var constant(Tensor x);

  Var dense(Var x, const Tensor& weights, const Tensor& bias);
  Var dense(Var, Tensor&&, const Tensor&) = delete;
  Var dense(Var, const Tensor&, Tensor&&) = delete;
  Var conv2d(Var x, const Tensor& kernels, const Tensor& bias,
             std::size_t stride, std::size_t padding);
  Var conv2d(Var, Tensor&&, const Tensor&, std::size_t, std::size_t) = delete;
  Var relu(Var x);
  Var tanh(Var x);
  Var exp(Var x);
  Var square(Var x);
  Var maxpool2d(Var x, std::size_t size, std::size_t stride);
  Var flatten(Var x);
  Var dropout(Var x, double rate);
  Var add(Var a, Var b);
  Var scale(Var x, double factor);
  Var select(Var x, std::size_t flat_index);
  Var sum(Var x);
  Var dot(Var x, const Tensor& weights);
  Var dot(Var, Tensor&&) = delete;

  const Tensor& value(Var v) const { return nodes_[v.index()].value; }
  OpKind kind(Var v) const { return nodes_[v.index()].kind; }
  std::size_t size() const noexcept { return nodes_.size(); }
  bool has_input() const noexcept { return has_input_; }

  // d(output)/d(input) by one reverse sweep. `output` must hold one element.
  Tensor gradient(Var output) const;

  // Smallest distance from any ReLU pre-activation to 0 and from any
  // max-pool winner to its runner-up. +inf when the tape has no kinks.
  double min_kink_distance() const;

 private:
  struct Node {
    Node(OpKind k, std::array<std::size_t, 2> p, std::size_t count, Tensor v)
        : kind(k), parents(p), parent_count(count), value(std::move(v)) {}

    OpKind kind;
    std::array<std::size_t, 2> parents{};
    std::size_t parent_count = 0;
    Tensor value;
    const Tensor* weights = nullptr;
    const Tensor* bias = nullptr;
    std::size_t stride = 0;
    std::size_t extent = 0;  // padding for conv2d, window for maxpool
    std::size_t index = 0;
    double scalar = 0.0;
    std::vector<std::size_t> argmax;
  };

  Var push(Node node);
  Var push_unary(OpKind kind, Var parent, Tensor value);
  const Node& node(Var v) const;

  std::vector<Node> nodes_;
  std::size_t input_ = 0;
  bool has_input_ = false;
};

// A scalar function recorded onto a tape: given the input variable, build
// the computation and return the (single-element) output variable.
using ScalarFunction = std::function<Var(Tape&, Var)>;

struct ValueAndGradient {
  double value;
  Tensor gradient;
};

double evaluate(const ScalarFunction& f, const Tensor& x);
Tensor gradient(const ScalarFunction& f, const Tensor& x);
ValueAndGradient value_and_gradient(const ScalarFunction& f, const Tensor& x);

}  // namespace pwig

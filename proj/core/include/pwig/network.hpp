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

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "pwig/tape.hpp"
#include "pwig/tensor.hpp"

namespace pwig {

struct Dense {
  Tensor weights;  // (rows, cols)
  Tensor bias;     // (rows,)
  friend bool operator==(const Dense&, const Dense&) = default;
};

struct Conv2d {
  Tensor kernels;  // (out, in, kh, kw)
  Tensor bias;     // (out,)
  std::size_t stride = 1;
  std::size_t padding = 0;
  friend bool operator==(const Conv2d&, const Conv2d&) = default;
};

struct ReLU {
  friend bool operator==(const ReLU&, const ReLU&) = default;
};

struct Tanh {
  friend bool operator==(const Tanh&, const Tanh&) = default;
};

struct MaxPool {
  std::size_t size = 2;
  std::size_t stride = 2;
  friend bool operator==(const MaxPool&, const MaxPool&) = default;
};

struct Flatten {
  friend bool operator==(const Flatten&, const Flatten&) = default;
};

// Identity at inference; the rate is kept so a round-tripped model says
// what it was trained with.
struct DropoutInference {
  double rate = 0.5;
  friend bool operator==(const DropoutInference&,
                         const DropoutInference&) = default;
};

using LayerSpec =
    std::variant<Dense, Conv2d, ReLU, Tanh, MaxPool, Flatten, DropoutInference>;

// Format tag of a layer ("Dense", "Conv2d", ...).
const char* layer_tag(const LayerSpec& layer);
bool is_parametric(const LayerSpec& layer);

// Output shape of `layer` applied to `input`; ShapeError when it does not fit.
Shape propagate_shape(const LayerSpec& layer, const Shape& input);

/// A feed-forward network F: R^n -> R^class_count.
///
/// Construction runs shape propagation through every layer and rejects the
/// network if any layer does not fit, naming the first offender, or if the
/// final activation is not a vector of class_count logits. After that the
/// network is immutable.
class Network {
 public:
  Network(Shape input_shape, std::vector<LayerSpec> layers,
          std::size_t class_count);

  const Shape& input_shape() const noexcept { return input_shape_; }
  const std::vector<LayerSpec>& layers() const noexcept { return layers_; }
  std::size_t class_count() const noexcept { return class_count_; }

  // activation_shape(0) is the input shape; activation_shape(k) is the
  // output shape of layer k-1.
  const Shape& activation_shape(std::size_t k) const {
    return activation_shapes_.at(k);
  }

  // Records the forward pass onto `tape`, returning the logits variable.
  Var record(Tape& tape, Var x) const;
  // Records only the first layer_count layers.
  Var record(Tape& tape, Var x, std::size_t layer_count) const;

  friend bool operator==(const Network& a, const Network& b) {
    return a.input_shape_ == b.input_shape_ && a.layers_ == b.layers_ &&
           a.class_count_ == b.class_count_;
  }

 private:
  Shape input_shape_;
  std::vector<LayerSpec> layers_;
  std::size_t class_count_;
  std::vector<Shape> activation_shapes_;
};

Tensor forward(const Network& net, const Tensor& x);

// The scalar F(x) = logits(x)[class_index]. Holds `net` by reference.
ScalarFunction class_logit(const Network& net, std::size_t class_index);

Tensor class_logit_gradient(const Network& net, const Tensor& x,
                            std::size_t class_index);

// Index of the largest logit; ties go to the lowest index.
std::size_t argmax(const Tensor& logits);

// FNV-1a 64 over layer tags, shapes, hyperparameters and weight bit
// patterns, rendered as "fnv1a64:<16 hex digits>".
std::string model_digest(const Network& net);

}  // namespace pwig

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

#include "pwig/network.hpp"

#include <cstdint>
#include <cstring>
#include <type_traits>

#include "internal.hpp"
#include "pwig/errors.hpp"
#include "pwig/ops.hpp"

namespace pwig {
namespace {

using detail::Overloaded;

class Fnv1a {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      hash_ ^= p[i];
      hash_ *= 0x100000001b3ULL;
    }
  }
  void u64(std::uint64_t v) { bytes(&v, sizeof v); }
  void f64(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    u64(bits);
  }
  void text(const char* s) { bytes(s, std::strlen(s)); }
  void tensor(const Tensor& t) {
    u64(t.rank());
    for (std::size_t d : t.shape()) u64(d);
    bytes(t.data().data(), t.size() * sizeof(double));
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace

const char* layer_tag(const LayerSpec& layer) {
  return std::visit(
      Overloaded{[](const Dense&) { return "Dense"; },
                 [](const Conv2d&) { return "Conv2d"; },
                 [](const ReLU&) { return "ReLU"; },
                 [](const Tanh&) { return "Tanh"; },
                 [](const MaxPool&) { return "MaxPool"; },
                 [](const Flatten&) { return "Flatten"; },
                 [](const DropoutInference&) { return "DropoutInference"; }},
      layer);
}

bool is_parametric(const LayerSpec& layer) {
  return std::holds_alternative<Dense>(layer) ||
         std::holds_alternative<Conv2d>(layer);
}

Shape propagate_shape(const LayerSpec& layer, const Shape& input) {
  return std::visit(
      Overloaded{
          [&](const Dense& d) {
            return ops::dense_shape(input, d.weights.shape(), d.bias.shape());
          },
          [&](const Conv2d& c) {
            return ops::conv2d_shape(input, c.kernels.shape(), c.bias.shape(),
                                     c.stride, c.padding);
          },
          [&](const MaxPool& p) {
            return ops::maxpool2d_shape(input, p.size, p.stride);
          },
          [&](const Flatten&) { return Shape{element_count(input)}; },
          [&](const DropoutInference& d) {
            if (!(d.rate >= 0.0 && d.rate < 1.0)) {
              throw ShapeError("dropout: rate must lie in [0, 1)");
            }
            return input;
          },
          [&](const auto&) { return input; }},
      layer);
}

Network::Network(Shape input_shape, std::vector<LayerSpec> layers,
                 std::size_t class_count)
    : input_shape_(std::move(input_shape)),
      layers_(std::move(layers)),
      class_count_(class_count) {
  if (class_count_ < 2) {
    throw ShapeError("class_count must be >= 2, got " +
                     std::to_string(class_count_));
  }
  if (input_shape_.empty() || element_count(input_shape_) == 0) {
    throw ShapeError("input_shape must be a non-empty list of positive dims");
  }
  for (std::size_t d : input_shape_) {
    if (d == 0) throw ShapeError("input_shape has a zero dimension");
  }
  activation_shapes_.push_back(input_shape_);
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    try {
      activation_shapes_.push_back(
          propagate_shape(layers_[k], activation_shapes_.back()));
    } catch (const ShapeError& e) {
      throw ShapeError("layer " + std::to_string(k) + " (" +
                       layer_tag(layers_[k]) + "): " + e.what());
    }
  }
  const Shape& out = activation_shapes_.back();
  if (out.size() != 1 || out[0] != class_count_) {
    throw ShapeError("network output shape " + shape_string(out) +
                     " does not match class_count " +
                     std::to_string(class_count_));
  }
}

Var Network::record(Tape& tape, Var x) const {
  return record(tape, x, layers_.size());
}

Var Network::record(Tape& tape, Var x, std::size_t layer_count) const {
  if (layer_count > layers_.size()) {
    throw PreconditionError("record: layer count " +
                            std::to_string(layer_count) + " exceeds " +
                            std::to_string(layers_.size()));
  }
  if (tape.value(x).shape() != input_shape_) {
    throw ShapeError("network input expected " + shape_string(input_shape_) +
                     ", got " + shape_string(tape.value(x).shape()));
  }
  Var v = x;
  for (std::size_t k = 0; k < layer_count; ++k) {
    const LayerSpec& layer = layers_[k];
    v = std::visit(
        Overloaded{
            [&](const Dense& d) { return tape.dense(v, d.weights, d.bias); },
            [&](const Conv2d& c) {
              return tape.conv2d(v, c.kernels, c.bias, c.stride, c.padding);
            },
            [&](const ReLU&) { return tape.relu(v); },
            [&](const Tanh&) { return tape.tanh(v); },
            [&](const MaxPool& p) {
              return tape.maxpool2d(v, p.size, p.stride);
            },
            [&](const Flatten&) { return tape.flatten(v); },
            [&](const DropoutInference& d) {
              return tape.dropout(v, d.rate);
            }},
        layer);
  }
  return v;
}

Tensor forward(const Network& net, const Tensor& x) {
  Tape tape;
  return tape.value(net.record(tape, tape.input(x)));
}

ScalarFunction class_logit(const Network& net, std::size_t class_index) {
  if (class_index >= net.class_count()) {
    throw PreconditionError("class index " + std::to_string(class_index) +
                            " out of range for " +
                            std::to_string(net.class_count()) + " classes");
  }
  return [&net, class_index](Tape& tape, Var x) {
    return tape.select(net.record(tape, x), class_index);
  };
}

Tensor class_logit_gradient(const Network& net, const Tensor& x,
                            std::size_t class_index) {
  return gradient(class_logit(net, class_index), x);
}

std::size_t argmax(const Tensor& logits) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < logits.size(); ++i) {
    if (logits[i] > logits[best]) best = i;
  }
  return best;
}

std::string model_digest(const Network& net) {
  Fnv1a h;
  h.u64(net.input_shape().size());
  for (std::size_t d : net.input_shape()) h.u64(d);
  h.u64(net.class_count());
  for (const LayerSpec& layer : net.layers()) {
    h.text(layer_tag(layer));
    std::visit(Overloaded{[&](const Dense& d) {
                            h.tensor(d.weights);
                            h.tensor(d.bias);
                          },
                          [&](const Conv2d& c) {
                            h.tensor(c.kernels);
                            h.tensor(c.bias);
                            h.u64(c.stride);
                            h.u64(c.padding);
                          },
                          [&](const MaxPool& p) {
                            h.u64(p.size);
                            h.u64(p.stride);
                          },
                          [&](const DropoutInference& d) { h.f64(d.rate); },
                          [](const auto&) {}},
               layer);
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out = "fnv1a64:";
  const std::uint64_t v = h.value();
  for (int shift = 60; shift >= 0; shift -= 4) out += kHex[(v >> shift) & 0xf];
  return out;
}

}  // namespace pwig

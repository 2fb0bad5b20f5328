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

// Forward kernels for the supported layer set, plus the input-gradient
// kernels the tape uses on the way back.
//
// Shapes follow the usual channel-first convention: images are (C, H, W),
// convolution kernels are (out, in, kh, kw), dense weights are (rows, cols)
// and act on a vector of length cols. Every reduction runs in a fixed
// sequential order, so results are bitwise reproducible.

#include <cstddef>
#include <span>
#include <vector>

#include "pwig/tensor.hpp"

namespace pwig::ops {

Shape dense_shape(const Shape& input, const Shape& weights, const Shape& bias);
Shape conv2d_shape(const Shape& input, const Shape& kernels, const Shape& bias,
                   std::size_t stride, std::size_t padding);
Shape maxpool2d_shape(const Shape& input, std::size_t size,
                      std::size_t stride);

Tensor dense(const Tensor& x, const Tensor& weights, const Tensor& bias);
Tensor conv2d(const Tensor& x, const Tensor& kernels, const Tensor& bias,
              std::size_t stride, std::size_t padding);
Tensor relu(const Tensor& x);
Tensor tanh(const Tensor& x);

struct PoolResult {
  Tensor output;
  // Flat input index that supplied each output element (first maximum in
  // row-major window order).
  std::vector<std::size_t> argmax;
};
PoolResult maxpool2d(const Tensor& x, std::size_t size, std::size_t stride);

Tensor flatten(const Tensor& x);

// Inference-time dropout: the identity. `rate` is validated, not applied.
Tensor dropout_inference(const Tensor& x, double rate);

// Input gradients. `grad_out` has the layer output's element count; the
// result has the layer input's.
std::vector<double> dense_input_grad(std::span<const double> grad_out,
                                     const Tensor& weights);
std::vector<double> conv2d_input_grad(std::span<const double> grad_out,
                                      const Shape& input_shape,
                                      const Tensor& kernels,
                                      std::size_t stride, std::size_t padding);
std::vector<double> maxpool2d_input_grad(std::span<const double> grad_out,
                                         std::size_t input_size,
                                         std::span<const std::size_t> argmax);

}  // namespace pwig::ops

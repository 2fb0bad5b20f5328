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
#include <cstdint>
#include <string>

#include "pwig/network.hpp"

namespace pwig {

// Geometry of the four-block classification CNN. Kernel size, padding, pool
// geometry and the fully connected widths are this library's choices; the
// block count, filter progression, dropout rate and class count are fixed.
struct PresetGeometry {
  std::size_t image_size = 224;
  std::size_t input_channels = 3;
  std::array<std::size_t, 4> filters{32, 64, 128, 256};
  std::size_t kernel = 3;
  std::size_t conv_stride = 1;
  std::size_t conv_padding = 1;
  std::size_t pool_size = 2;
  std::size_t pool_stride = 2;
  double dropout_rate = 0.5;
  std::array<std::size_t, 3> dense_widths{512, 128, 4};
  double init_range = 0.05;

  std::string describe() const;
};

// Conv(3x3)/ReLU/MaxPool(2) x4 -> Dropout -> Flatten -> Dense 512 -> ReLU ->
// Dense 128 -> ReLU -> Dense 4 on 3x224x224 inputs. Parameters are drawn
// layer by layer (weights then bias, row-major) from uniform(-0.05, 0.05)
// with Rng(seed).
Network classifier_preset(std::uint64_t seed);

// Small models for demos and self-checks.
// 6 -> 8 -> 5 -> 3 Tanh MLP with uniform(-1, 1) parameters.
Network toy_mlp(std::uint64_t seed);
// (2, 6, 6) input through conv/tanh/maxpool/conv/relu/flatten/dense/
// dropout/dense; exercises every layer type.
Network toy_convnet(std::uint64_t seed);

}  // namespace pwig

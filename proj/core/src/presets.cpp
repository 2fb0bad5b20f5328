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

#include "pwig/presets.hpp"

#include <sstream>
#include <vector>

#include "pwig/rng.hpp"
#include "pwig/transforms.hpp"

namespace pwig {
namespace {

Tensor draw(Rng& rng, Shape shape, double range) {
  std::vector<double> v(element_count(shape));
  for (double& x : v) x = rng.uniform(-range, range);
  return Tensor(std::move(shape), std::move(v));
}

Conv2d conv(Rng& rng, std::size_t out, std::size_t in, std::size_t k,
            std::size_t stride, std::size_t padding, double range) {
  Tensor kernels = draw(rng, {out, in, k, k}, range);
  Tensor bias = draw(rng, {out}, range);
  return Conv2d{std::move(kernels), std::move(bias), stride, padding};
}

Dense dense(Rng& rng, std::size_t rows, std::size_t cols, double range) {
  Tensor weights = draw(rng, {rows, cols}, range);
  Tensor bias = draw(rng, {rows}, range);
  return Dense{std::move(weights), std::move(bias)};
}

}  // namespace

std::string PresetGeometry::describe() const {
  std::ostringstream os;
  os << "input " << input_channels << "x" << image_size << "x" << image_size
     << "; conv " << kernel << "x" << kernel << " stride " << conv_stride
     << " padding " << conv_padding << " filters";
  for (std::size_t f : filters) os << ' ' << f;
  os << "; relu; maxpool " << pool_size << "/" << pool_stride << "; dropout "
     << dropout_rate << "; dense";
  for (std::size_t w : dense_widths) os << ' ' << w;
  os << "; init uniform(-" << init_range << ", " << init_range << ")";
  return os.str();
}

Network classifier_preset(std::uint64_t seed) {
  const PresetGeometry g;
  Rng rng(seed);
  std::vector<LayerSpec> layers;
  std::size_t channels = g.input_channels;
  std::size_t side = g.image_size;
  for (std::size_t f : g.filters) {
    layers.push_back(conv(rng, f, channels, g.kernel, g.conv_stride,
                          g.conv_padding, g.init_range));
    layers.push_back(ReLU{});
    layers.push_back(MaxPool{g.pool_size, g.pool_stride});
    channels = f;
    side = (side + 2 * g.conv_padding - g.kernel) / g.conv_stride + 1;
    side = (side - g.pool_size) / g.pool_stride + 1;
  }
  layers.push_back(DropoutInference{g.dropout_rate});
  layers.push_back(Flatten{});
  std::size_t width = channels * side * side;
  for (std::size_t k = 0; k < g.dense_widths.size(); ++k) {
    layers.push_back(dense(rng, g.dense_widths[k], width, g.init_range));
    width = g.dense_widths[k];
    if (k + 1 < g.dense_widths.size()) layers.push_back(ReLU{});
  }
  return Network({g.input_channels, g.image_size, g.image_size},
                 std::move(layers), g.dense_widths.back());
}

Network toy_mlp(std::uint64_t seed) {
  const std::size_t widths[] = {6, 8, 5, 3};
  return random_mlp(widths, Activation::kTanh, seed);
}

Network toy_convnet(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<LayerSpec> layers;
  layers.push_back(conv(rng, 3, 2, 3, 1, 1, 0.5));   // (3, 6, 6)
  layers.push_back(Tanh{});
  layers.push_back(MaxPool{2, 2});                   // (3, 3, 3)
  layers.push_back(conv(rng, 4, 3, 2, 1, 0, 0.5));   // (4, 2, 2)
  layers.push_back(ReLU{});
  layers.push_back(Flatten{});                       // (16,)
  layers.push_back(dense(rng, 5, 16, 0.5));
  layers.push_back(Tanh{});
  layers.push_back(DropoutInference{0.25});
  layers.push_back(dense(rng, 3, 5, 0.5));
  return Network({2, 6, 6}, std::move(layers), 3);
}

}  // namespace pwig

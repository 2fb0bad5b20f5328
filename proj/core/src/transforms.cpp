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

#include "pwig/transforms.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>

#include "pwig/errors.hpp"
#include "pwig/rng.hpp"

namespace pwig {
namespace {

bool is_elementwise(const LayerSpec& l) {
  return std::holds_alternative<ReLU>(l) || std::holds_alternative<Tanh>(l) ||
         std::holds_alternative<DropoutInference>(l);
}

std::size_t unit_count(const LayerSpec& l) {
  if (const auto* d = std::get_if<Dense>(&l)) return d->weights.shape()[0];
  return std::get<Conv2d>(l).kernels.shape()[0];
}

// Rows of a row-major (units, rest...) tensor, reordered.
Tensor permute_leading(const Tensor& t, std::span<const std::size_t> perm) {
  const std::size_t block = t.size() / t.shape()[0];
  std::vector<double> out(t.size());
  for (std::size_t r = 0; r < perm.size(); ++r) {
    std::copy_n(t.data().begin() + perm[r] * block, block,
                out.begin() + r * block);
  }
  return Tensor(t.shape(), std::move(out));
}

// Groups of `group` consecutive entries along axis 1 of a (rows, units *
// group, inner) view, reordered.
Tensor permute_axis1(const Tensor& t, std::span<const std::size_t> perm,
                     std::size_t group, std::size_t inner) {
  const std::size_t rows = t.shape()[0];
  const std::size_t width = perm.size() * group * inner;
  std::vector<double> out(t.size());
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t u = 0; u < perm.size(); ++u) {
      std::copy_n(t.data().begin() + r * width + perm[u] * group * inner,
                  group * inner, out.begin() + r * width + u * group * inner);
    }
  }
  return Tensor(t.shape(), std::move(out));
}

Tensor concat_rows(const Tensor& a, const Tensor& b) {
  std::vector<double> data = a.values();
  data.insert(data.end(), b.data().begin(), b.data().end());
  Shape shape = a.shape();
  shape[0] += b.shape()[0];
  return Tensor(std::move(shape), std::move(data));
}

Tensor block_diagonal(const Tensor& a, const Tensor& b) {
  const std::size_t ar = a.shape()[0], ac = a.shape()[1];
  const std::size_t br = b.shape()[0], bc = b.shape()[1];
  std::vector<double> data((ar + br) * (ac + bc), 0.0);
  for (std::size_t r = 0; r < ar; ++r) {
    std::copy_n(a.data().begin() + r * ac, ac, data.begin() + r * (ac + bc));
  }
  for (std::size_t r = 0; r < br; ++r) {
    std::copy_n(b.data().begin() + r * bc, bc,
                data.begin() + (ar + r) * (ac + bc) + ac);
  }
  return Tensor::matrix(ar + br, ac + bc, std::move(data));
}

std::vector<double> scaled(std::span<const double> v, double s) {
  std::vector<double> out(v.begin(), v.end());
  for (double& x : out) x *= s;
  return out;
}

}  // namespace

Network permute_hidden_units(const Network& net, std::size_t layer_index,
                             std::span<const std::size_t> permutation) {
  const auto& layers = net.layers();
  if (layer_index >= layers.size() || !is_parametric(layers[layer_index])) {
    throw PreconditionError("permute_hidden_units: layer " +
                            std::to_string(layer_index) +
                            " is not Dense or Conv2d");
  }
  const std::size_t units = unit_count(layers[layer_index]);
  if (permutation.size() != units) {
    throw PreconditionError("permute_hidden_units: permutation has " +
                            std::to_string(permutation.size()) +
                            " entries, layer has " + std::to_string(units) +
                            " units");
  }
  std::vector<bool> seen(units, false);
  for (std::size_t p : permutation) {
    if (p >= units || seen[p]) {
      throw PreconditionError("permute_hidden_units: not a permutation");
    }
    seen[p] = true;
  }

  std::optional<std::size_t> next;
  for (std::size_t k = layer_index + 1; k < layers.size(); ++k) {
    if (is_parametric(layers[k])) {
      next = k;
      break;
    }
    if (!is_elementwise(layers[k]) &&
        !std::holds_alternative<MaxPool>(layers[k]) &&
        !std::holds_alternative<Flatten>(layers[k])) {
      break;
    }
  }
  if (!next) {
    throw PreconditionError(
        "permute_hidden_units: layer " + std::to_string(layer_index) +
        " is not followed by another Dense/Conv2d layer");
  }

  std::vector<LayerSpec> out = layers;
  if (auto* d = std::get_if<Dense>(&out[layer_index])) {
    d->weights = permute_leading(d->weights, permutation);
    d->bias = permute_leading(d->bias, permutation);
  } else {
    auto& c = std::get<Conv2d>(out[layer_index]);
    c.kernels = permute_leading(c.kernels, permutation);
    c.bias = permute_leading(c.bias, permutation);
  }

  // Elements per unit at the next layer's input (1 for vectors, H*W after a
  // flattened feature map).
  const std::size_t group = element_count(net.activation_shape(*next)) / units;
  if (auto* d = std::get_if<Dense>(&out[*next])) {
    d->weights = permute_axis1(d->weights, permutation, group, 1);
  } else {
    auto& c = std::get<Conv2d>(out[*next]);
    const std::size_t taps = c.kernels.shape()[2] * c.kernels.shape()[3];
    c.kernels = permute_axis1(c.kernels, permutation, 1, taps);
  }
  return Network(net.input_shape(), std::move(out), net.class_count());
}

Network permute_hidden_units(const Network& net, std::size_t layer_index,
                             std::uint64_t seed) {
  if (layer_index >= net.layers().size() ||
      !is_parametric(net.layers()[layer_index])) {
    throw PreconditionError("permute_hidden_units: layer " +
                            std::to_string(layer_index) +
                            " is not Dense or Conv2d");
  }
  std::vector<std::size_t> perm(unit_count(net.layers()[layer_index]));
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(std::span<std::size_t>(perm));
  return permute_hidden_units(net, layer_index, perm);
}

Network insert_identity_layer(const Network& net, std::size_t position) {
  if (position > net.layers().size()) {
    throw PreconditionError("insert_identity_layer: position " +
                            std::to_string(position) + " past the end");
  }
  const Shape& shape = net.activation_shape(position);
  if (shape.size() != 1) {
    throw PreconditionError(
        "insert_identity_layer: activation at position " +
        std::to_string(position) + " has spatial shape " +
        shape_string(shape));
  }
  const std::size_t n = shape[0];
  std::vector<double> eye(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) eye[i * n + i] = 1.0;
  std::vector<LayerSpec> out = net.layers();
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(position),
             Dense{Tensor::matrix(n, n, std::move(eye)), Tensor::zeros({n})});
  return Network(net.input_shape(), std::move(out), net.class_count());
}

Network zero_feature_influence(const Network& net, std::size_t feature_index) {
  const auto& layers = net.layers();
  std::size_t first = 0;
  while (first < layers.size() && !is_parametric(layers[first])) {
    if (!is_elementwise(layers[first]) &&
        !std::holds_alternative<Flatten>(layers[first])) {
      throw PreconditionError("zero_feature_influence: layer " +
                              std::to_string(first) +
                              " mixes features before the first Dense layer");
    }
    ++first;
  }
  if (first == layers.size() || !std::holds_alternative<Dense>(layers[first])) {
    throw PreconditionError(
        "zero_feature_influence: first parametric layer is not Dense");
  }
  const std::size_t n = element_count(net.input_shape());
  if (feature_index >= n) {
    throw PreconditionError("zero_feature_influence: feature " +
                            std::to_string(feature_index) +
                            " out of range for " + std::to_string(n) +
                            " inputs");
  }
  std::vector<LayerSpec> out = layers;
  auto& d = std::get<Dense>(out[first]);
  std::vector<double> w = d.weights.values();
  const std::size_t rows = d.weights.shape()[0];
  for (std::size_t r = 0; r < rows; ++r) w[r * n + feature_index] = 0.0;
  d.weights = Tensor(d.weights.shape(), std::move(w));
  return Network(net.input_shape(), std::move(out), net.class_count());
}

Network symmetric_pair_net(std::size_t n, std::size_t i, std::size_t j,
                           std::uint64_t seed) {
  if (!(i < j && j < n)) {
    throw PreconditionError("symmetric_pair_net: need i < j < n, got i=" +
                            std::to_string(i) + " j=" + std::to_string(j) +
                            " n=" + std::to_string(n));
  }
  const std::size_t widths[] = {n, 8, 6, 2};
  Network base = random_mlp(widths, Activation::kTanh, seed);
  std::vector<LayerSpec> layers = base.layers();
  auto& d = std::get<Dense>(layers.front());
  std::vector<double> w = d.weights.values();
  for (std::size_t r = 0; r < d.weights.shape()[0]; ++r) {
    w[r * n + j] = w[r * n + i];
  }
  d.weights = Tensor(d.weights.shape(), std::move(w));
  return Network(base.input_shape(), std::move(layers), base.class_count());
}

Network linear_combination(const Network& net1, const Network& net2, double a,
                           double b) {
  if (net1.input_shape() != net2.input_shape()) {
    throw ShapeError("linear_combination: input shapes " +
                     shape_string(net1.input_shape()) + " and " +
                     shape_string(net2.input_shape()) + " differ");
  }
  if (net1.class_count() != net2.class_count()) {
    throw ShapeError("linear_combination: class counts differ");
  }
  const auto& l1 = net1.layers();
  const auto& l2 = net2.layers();
  if (l1.size() != l2.size()) {
    throw PreconditionError("linear_combination: layer sequences differ");
  }
  std::size_t last_dense = l1.size();
  for (std::size_t k = 0; k < l1.size(); ++k) {
    if (l1[k].index() != l2[k].index()) {
      throw PreconditionError("linear_combination: layer " +
                              std::to_string(k) + " types differ");
    }
    if (std::holds_alternative<Dense>(l1[k])) {
      last_dense = k;
    } else if (!is_elementwise(l1[k]) &&
               !std::holds_alternative<Flatten>(l1[k])) {
      throw PreconditionError("linear_combination: layer " +
                              std::to_string(k) +
                              " is not Dense or elementwise");
    }
  }
  if (last_dense == l1.size()) {
    throw PreconditionError("linear_combination: networks have no Dense layer");
  }

  std::vector<LayerSpec> out;
  bool seen_dense = false;
  for (std::size_t k = 0; k < l1.size(); ++k) {
    const auto* d1 = std::get_if<Dense>(&l1[k]);
    if (!d1) {
      const bool after_split = seen_dense && k < last_dense;
      if (std::holds_alternative<Flatten>(l1[k]) && after_split) {
        throw PreconditionError("linear_combination: Flatten between Dense "
                                "layers is not supported");
      }
      out.push_back(l1[k]);
      continue;
    }
    const auto& d2 = std::get<Dense>(l2[k]);
    const bool first = !seen_dense;
    const bool last = k == last_dense;
    seen_dense = true;
    if (first && last) {
      // A single affine map: fold the combination into it.
      std::vector<double> w = scaled(d1->weights.data(), a);
      std::vector<double> w2 = scaled(d2.weights.data(), b);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] += w2[i];
      std::vector<double> bias = scaled(d1->bias.data(), a);
      std::vector<double> b2 = scaled(d2.bias.data(), b);
      for (std::size_t i = 0; i < bias.size(); ++i) bias[i] += b2[i];
      out.push_back(Dense{Tensor(d1->weights.shape(), std::move(w)),
                          Tensor(d1->bias.shape(), std::move(bias))});
    } else if (first) {
      out.push_back(Dense{concat_rows(d1->weights, d2.weights),
                          concat_rows(d1->bias, d2.bias)});
    } else if (last) {
      const std::size_t rows = d1->weights.shape()[0];
      const std::size_t c1 = d1->weights.shape()[1];
      const std::size_t c2 = d2.weights.shape()[1];
      std::vector<double> w(rows * (c1 + c2));
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < c1; ++c) {
          w[r * (c1 + c2) + c] = a * d1->weights[r * c1 + c];
        }
        for (std::size_t c = 0; c < c2; ++c) {
          w[r * (c1 + c2) + c1 + c] = b * d2.weights[r * c2 + c];
        }
      }
      std::vector<double> bias(rows);
      for (std::size_t r = 0; r < rows; ++r) {
        bias[r] = a * d1->bias[r] + b * d2.bias[r];
      }
      out.push_back(Dense{Tensor::matrix(rows, c1 + c2, std::move(w)),
                          Tensor::vector(std::move(bias))});
    } else {
      out.push_back(Dense{block_diagonal(d1->weights, d2.weights),
                          concat_rows(d1->bias, d2.bias)});
    }
  }
  return Network(net1.input_shape(), std::move(out), net1.class_count());
}

Network perturb_parameter(const Network& net, std::size_t layer_index,
                          std::size_t flat_index, double delta) {
  if (layer_index >= net.layers().size() ||
      !is_parametric(net.layers()[layer_index])) {
    throw PreconditionError("perturb_parameter: layer " +
                            std::to_string(layer_index) + " has no parameters");
  }
  std::vector<LayerSpec> out = net.layers();
  auto bump = [&](Tensor& weights, Tensor& bias) {
    if (flat_index < weights.size()) {
      std::vector<double> w = weights.values();
      w[flat_index] += delta;
      weights = Tensor(weights.shape(), std::move(w));
    } else if (flat_index - weights.size() < bias.size()) {
      std::vector<double> v = bias.values();
      v[flat_index - weights.size()] += delta;
      bias = Tensor(bias.shape(), std::move(v));
    } else {
      throw PreconditionError("perturb_parameter: index out of range");
    }
  };
  if (auto* d = std::get_if<Dense>(&out[layer_index])) {
    bump(d->weights, d->bias);
  } else {
    auto& c = std::get<Conv2d>(out[layer_index]);
    bump(c.kernels, c.bias);
  }
  return Network(net.input_shape(), std::move(out), net.class_count());
}

Network random_mlp(std::span<const std::size_t> widths, Activation activation,
                   std::uint64_t seed, double scale) {
  if (widths.size() < 2) {
    throw PreconditionError("random_mlp: need at least input and output widths");
  }
  Rng rng(seed);
  std::vector<LayerSpec> layers;
  for (std::size_t k = 0; k + 1 < widths.size(); ++k) {
    const std::size_t rows = widths[k + 1], cols = widths[k];
    std::vector<double> w(rows * cols), b(rows);
    for (double& v : w) v = rng.uniform(-scale, scale);
    for (double& v : b) v = rng.uniform(-scale, scale);
    layers.push_back(Dense{Tensor::matrix(rows, cols, std::move(w)),
                           Tensor::vector(std::move(b))});
    if (k + 2 < widths.size()) {
      if (activation == Activation::kTanh) {
        layers.push_back(Tanh{});
      } else {
        layers.push_back(ReLU{});
      }
    }
  }
  return Network({widths.front()}, std::move(layers), widths.back());
}

Network linear_model(Tensor weights, Tensor bias) {
  if (weights.rank() != 2) {
    throw ShapeError("linear_model: weights must be (classes, n)");
  }
  const std::size_t n = weights.shape()[1];
  const std::size_t classes = weights.shape()[0];
  std::vector<LayerSpec> layers;
  layers.push_back(Dense{std::move(weights), std::move(bias)});
  return Network({n}, std::move(layers), classes);
}

}  // namespace pwig

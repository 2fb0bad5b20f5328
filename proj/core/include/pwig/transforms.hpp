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

// Function-preserving and function-breaking rewrites of a Network. The axiom
// suite uses these as constructive witnesses: two networks that compute the
// same function, a network constant in one input, a network symmetric in a
// pair of inputs, a network computing a*F1 + b*F2.

#include <cstddef>
#include <cstdint>
#include <span>

#include "pwig/network.hpp"

namespace pwig {

// Reorders the units (rows or output channels) of parametric layer
// `layer_index` and compensates in the next parametric layer, so the network
// computes the identical function. New unit r is old unit permutation[r].
// The layers in between may only be ReLU/Tanh/Dropout/MaxPool/Flatten.
Network permute_hidden_units(const Network& net, std::size_t layer_index,
                             std::span<const std::size_t> permutation);
Network permute_hidden_units(const Network& net, std::size_t layer_index,
                             std::uint64_t seed);

// Inserts Dense(identity, zero bias) before layer `position` (or at the end
// when position == layer count). The activation there must be a vector.
Network insert_identity_layer(const Network& net, std::size_t position);

// Zeroes column `feature_index` of the first parametric layer, which must be
// Dense and preceded only by elementwise layers or Flatten.
Network zero_feature_influence(const Network& net, std::size_t feature_index);

// Seeded Tanh MLP n -> 8 -> 6 -> 2 whose first-layer columns i and j are
// equal, so F is invariant under swapping x_i and x_j. Requires i < j < n.
Network symmetric_pair_net(std::size_t n, std::size_t i, std::size_t j,
                           std::uint64_t seed);

// Network whose logits are a*logits1 + b*logits2, built by stacking the two
// MLPs side by side (block-diagonal hidden layers, merged readout). Both must
// be Dense/elementwise stacks with the same layer sequence, input shape and
// class count.
Network linear_combination(const Network& net1, const Network& net2, double a,
                           double b);

// Adds `delta` to one parameter. Bias entries follow the weights in flat
// order: flat_index >= weights.size() addresses bias[flat_index - size].
Network perturb_parameter(const Network& net, std::size_t layer_index,
                          std::size_t flat_index, double delta);

enum class Activation { kRelu, kTanh };

// Dense stack widths[0] -> widths[1] -> ... with `activation` between layers
// and weights/biases drawn from uniform(-scale, scale).
Network random_mlp(std::span<const std::size_t> widths, Activation activation,
                   std::uint64_t seed, double scale = 1.0);

// Single Dense layer with the given (classes, n) weights and bias.
Network linear_model(Tensor weights, Tensor bias);

}  // namespace pwig

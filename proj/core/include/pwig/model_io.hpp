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

#include <filesystem>
#include <string>
#include <string_view>

#include "pwig/network.hpp"
#include "pwig/tensor.hpp"

namespace pwig {

// Model documents are UTF-8 JSON:
//
//   {"format_version": 1, "input_shape": [...], "class_count": K,
//    "layers": [{"type": "Dense", "weights": T, "bias": T}, ...]}
//
// where a tensor T is {"shape": [...], "data": [flat row-major values]}.
// Layer objects by tag:
//   Dense{weights, bias}  Conv2d{kernels, bias, stride, padding}
//   ReLU{}  Tanh{}  MaxPool{size, stride}  Flatten{}  DropoutInference{rate}
// Numbers are written in shortest round-trip form, so save -> load is the
// identity on every weight bit.

Network load_network(std::string_view document);
Network load_network_file(const std::filesystem::path& path);
std::string save_network(const Network& net);

// {"shape": [...], "data": [...]} documents, used for tensors on disk
// (baselines, raw inputs).
Tensor load_tensor(std::string_view document);
std::string save_tensor(const Tensor& t);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace pwig

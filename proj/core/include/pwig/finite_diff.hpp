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

#include "pwig/tape.hpp"
#include "pwig/tensor.hpp"

namespace pwig {

// Central differences (F(x + h e_i) - F(x - h e_i)) / 2h per coordinate,
// using only forward evaluations. Independent of Tape::gradient.
Tensor finite_diff_gradient(const ScalarFunction& f, const Tensor& x,
                            double h = 1e-5);

// Same estimate restricted to the listed flat coordinates.
std::vector<double> finite_diff_partials(const ScalarFunction& f,
                                         const Tensor& x,
                                         std::span<const std::size_t> coords,
                                         double h = 1e-5);

// max_i |a_i - b_i| / max(max_i |a_i|, max_i |b_i|); 0 when both are zero.
double relative_error(std::span<const double> a, std::span<const double> b);

}  // namespace pwig

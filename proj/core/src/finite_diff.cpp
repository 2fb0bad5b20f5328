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

#include "pwig/finite_diff.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pwig/errors.hpp"

namespace pwig {

std::vector<double> finite_diff_partials(const ScalarFunction& f,
                                         const Tensor& x,
                                         std::span<const std::size_t> coords,
                                         double h) {
  if (!(h > 0.0)) throw PreconditionError("finite differences need h > 0");
  std::vector<double> probe = x.values();
  std::vector<double> out;
  out.reserve(coords.size());
  for (std::size_t i : coords) {
    if (i >= probe.size()) {
      throw PreconditionError("finite differences: coordinate out of range");
    }
    const double original = probe[i];
    probe[i] = original + h;
    const double up = evaluate(f, Tensor(x.shape(), probe));
    probe[i] = original - h;
    const double down = evaluate(f, Tensor(x.shape(), probe));
    probe[i] = original;
    out.push_back((up - down) / (2.0 * h));
  }
  return out;
}

Tensor finite_diff_gradient(const ScalarFunction& f, const Tensor& x,
                            double h) {
  std::vector<std::size_t> coords(x.size());
  std::iota(coords.begin(), coords.end(), std::size_t{0});
  return Tensor(x.shape(), finite_diff_partials(f, x, coords, h));
}

double relative_error(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ShapeError("relative_error: length mismatch");
  }
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
  }
  return scale == 0.0 ? 0.0 : diff / scale;
}

}  // namespace pwig

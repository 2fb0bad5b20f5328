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
#include <string_view>
#include <variant>
#include <vector>

#include "pwig/network.hpp"
#include "pwig/tape.hpp"
#include "pwig/tensor.hpp"
#include "pwig/weighting.hpp"

namespace pwig {

/// Quadrature over the straight path from the baseline to the input.
///  kRight     nodes k/m, k = 1..m, each weighted 1/m (the classic
///             Riemann sum used for Integrated Gradients).
///  kMidpoint  nodes (k - 1/2)/m, each weighted 1/m.
///  kTrapezoid nodes j/m, j = 0..m, interior weight 1/m, endpoints 1/(2m).
enum class Scheme { kRight, kMidpoint, kTrapezoid };

const char* scheme_name(Scheme scheme);
Scheme parse_scheme(std::string_view name);

struct QuadratureNode {
  double alpha;
  double units;  // weight in units of 1/m: 1 or 1/2
};
std::vector<QuadratureNode> quadrature_nodes(Scheme scheme, std::size_t steps);

struct ZeroBaseline {};
struct ConstantBaseline {
  double value = 0.0;
};
struct TensorBaseline {
  Tensor values;
  std::string label;  // echoed in metadata, e.g. the file it came from
};
using Baseline = std::variant<ZeroBaseline, ConstantBaseline, TensorBaseline>;

Tensor resolve_baseline(const Baseline& baseline, const Shape& shape);
std::string baseline_spec(const Baseline& baseline);

struct ArgmaxClass {};
using TargetClass = std::variant<ArgmaxClass, std::size_t>;
std::string target_spec(const TargetClass& target);

struct AttributionConfig {
  Baseline baseline = ZeroBaseline{};
  TargetClass target = ArgmaxClass{};
  std::size_t steps = 50;
  Scheme scheme = Scheme::kRight;
  WeightFunction weight = WeightFunction::exponential(1.0);
  // Worker threads for per-node gradients; 0 means default_thread_count().
  // Results do not depend on this.
  std::size_t threads = 0;
};

struct ConfigEcho {
  std::string baseline;
  std::string target;
  std::size_t steps = 0;
  std::string scheme;
  std::string weight;
};

struct AttributionMap {
  Tensor scores;
  double completeness_gap = 0.0;
  double input_output = 0.0;     // F(x)
  double baseline_output = 0.0;  // F(x')
  std::size_t resolved_class = 0;
  std::string model_digest{};
  ConfigEcho config{};

  double output_difference() const { return input_output - baseline_output; }
};

struct SeriesNode {
  double alpha;
  // g(alpha_k) * (quadrature weight) * dF/dx at the node, per feature.
  Tensor contribution;
};

// x' + alpha (x - x'), elementwise; exact at alpha = 0 and 1.
Tensor interpolate(const Tensor& baseline, const Tensor& input, double alpha);

// Path-weighted integrated gradients:
//   score_i = (x_i - x'_i) * sum_k w_k g(alpha_k) dF/dx_i(x' + alpha_k (x - x'))
// with the nodes and weights of config.scheme. The per-node sum runs in
// ascending node order whatever the thread count.
AttributionMap pwig(const Network& net, const Tensor& input,
                    const AttributionConfig& config);

// Same for an arbitrary scalar function; config.target is ignored and the
// resolved class is reported as 0.
AttributionMap pwig(const ScalarFunction& f, const Tensor& input,
                    const AttributionConfig& config);

// Integrated Gradients: pwig with the uniform weight.
AttributionMap ig(const Network& net, const Tensor& input, Baseline baseline,
                  TargetClass target, std::size_t steps,
                  Scheme scheme = Scheme::kRight);

double completeness_gap(const Network& net, const Tensor& input,
                        const AttributionConfig& config);

std::vector<SeriesNode> attribution_series(const Network& net,
                                           const Tensor& input,
                                           const AttributionConfig& config);
std::vector<SeriesNode> attribution_series(const ScalarFunction& f,
                                           const Tensor& input,
                                           const AttributionConfig& config);

// JSON document: metadata plus {"shape": [...], "scores": [...]}.
std::string to_document(const AttributionMap& map);
AttributionMap parse_attribution_document(std::string_view document);
// "feature,score" CSV over flat feature indices.
std::string to_csv(const AttributionMap& map);

}  // namespace pwig

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

#include "pwig/attribution.hpp"

#include <cmath>
#include <string>

#include <json.hpp>

#include "internal.hpp"
#include "pwig/errors.hpp"
#include "pwig/parallel.hpp"

namespace pwig {
namespace {

using detail::append_double;
using detail::format_double;
using detail::Overloaded;

void check_config(const AttributionConfig& config) {
  if (config.steps < 1) {
    throw PreconditionError("attribution needs steps >= 1");
  }
  if (const auto bad = validate_weight(config.weight)) {
    throw PreconditionError("weight " + config.weight.spec() +
                            " is negative or non-finite at alpha = " +
                            format_double(bad->alpha));
  }
}

// Per-node terms units_k * g(alpha_k) * grad F(path(alpha_k)), not yet
// divided by m.
std::vector<std::vector<double>> node_terms(
    const ScalarFunction& f, const Tensor& input, const Tensor& baseline,
    const AttributionConfig& config, const std::vector<QuadratureNode>& nodes) {
  std::vector<std::vector<double>> terms(nodes.size());
  const std::size_t threads =
      config.threads == 0 ? default_thread_count() : config.threads;
  parallel_for(nodes.size(), threads, [&](std::size_t k) {
    const QuadratureNode& node = nodes[k];
    const Tensor point = interpolate(baseline, input, node.alpha);
    std::vector<double> g;
    try {
      g = gradient(f, point).release();
    } catch (const NumericError& e) {
      throw NumericError("non-finite gradient at path node " +
                         std::to_string(k) + " (alpha = " +
                         format_double(node.alpha) + "): " + e.what());
    }
    const double factor = node.units * eval_weight(config.weight, node.alpha);
    for (double& v : g) v *= factor;
    terms[k] = std::move(g);
  });
  return terms;
}

struct Resolved {
  ScalarFunction f;
  std::size_t cls = 0;
};

Resolved resolve(const Network& net, const Tensor& input,
                 const TargetClass& target) {
  if (input.shape() != net.input_shape()) {
    throw ShapeError("input shape " + shape_string(input.shape()) +
                     " does not match model input " +
                     shape_string(net.input_shape()));
  }
  const std::size_t cls = std::visit(
      Overloaded{[&](ArgmaxClass) { return argmax(forward(net, input)); },
                 [&](std::size_t k) {
                   if (k >= net.class_count()) {
                     throw PreconditionError(
                         "class index " + std::to_string(k) +
                         " out of range for " +
                         std::to_string(net.class_count()) + " classes");
                   }
                   return k;
                 }},
      target);
  return {class_logit(net, cls), cls};
}

AttributionMap integrate(const ScalarFunction& f, const Tensor& input,
                         const AttributionConfig& config, std::size_t cls,
                         std::string digest) {
  check_config(config);
  const Tensor baseline = resolve_baseline(config.baseline, input.shape());
  const std::vector<QuadratureNode> nodes =
      quadrature_nodes(config.scheme, config.steps);
  const auto terms = node_terms(f, input, baseline, config, nodes);

  std::vector<double> acc(input.size(), 0.0);
  for (const auto& t : terms) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += t[i];
  }
  const double m = static_cast<double>(config.steps);
  double total = 0.0;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    acc[i] = (input[i] - baseline[i]) * (acc[i] / m);
    total += acc[i];
  }
  if (!all_finite(acc)) throw NumericError("attribution scores are not finite");

  AttributionMap map{.scores = Tensor(input.shape(), std::move(acc))};
  map.input_output = evaluate(f, input);
  map.baseline_output = evaluate(f, baseline);
  map.completeness_gap = std::abs(total - map.output_difference());
  map.resolved_class = cls;
  map.model_digest = std::move(digest);
  map.config = ConfigEcho{baseline_spec(config.baseline),
                          target_spec(config.target), config.steps,
                          scheme_name(config.scheme), config.weight.spec()};
  return map;
}

std::vector<SeriesNode> series(const ScalarFunction& f, const Tensor& input,
                               const AttributionConfig& config) {
  check_config(config);
  const Tensor baseline = resolve_baseline(config.baseline, input.shape());
  const std::vector<QuadratureNode> nodes =
      quadrature_nodes(config.scheme, config.steps);
  auto terms = node_terms(f, input, baseline, config, nodes);
  const double m = static_cast<double>(config.steps);
  std::vector<SeriesNode> out;
  out.reserve(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    for (double& v : terms[k]) v /= m;
    out.push_back({nodes[k].alpha, Tensor(input.shape(), std::move(terms[k]))});
  }
  return out;
}

}  // namespace

const char* scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::kRight: return "right";
    case Scheme::kMidpoint: return "midpoint";
    case Scheme::kTrapezoid: return "trapezoid";
  }
  return "right";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "right") return Scheme::kRight;
  if (name == "midpoint") return Scheme::kMidpoint;
  if (name == "trapezoid") return Scheme::kTrapezoid;
  throw ParseError("unknown scheme '" + std::string(name) +
                   "' (expected right, midpoint or trapezoid)");
}

std::vector<QuadratureNode> quadrature_nodes(Scheme scheme, std::size_t steps) {
  if (steps < 1) throw PreconditionError("quadrature needs steps >= 1");
  const double m = static_cast<double>(steps);
  std::vector<QuadratureNode> nodes;
  switch (scheme) {
    case Scheme::kRight:
      for (std::size_t k = 1; k <= steps; ++k) {
        nodes.push_back({static_cast<double>(k) / m, 1.0});
      }
      break;
    case Scheme::kMidpoint:
      for (std::size_t k = 1; k <= steps; ++k) {
        nodes.push_back({static_cast<double>(2 * k - 1) / (2.0 * m), 1.0});
      }
      break;
    case Scheme::kTrapezoid:
      for (std::size_t j = 0; j <= steps; ++j) {
        const double units = (j == 0 || j == steps) ? 0.5 : 1.0;
        nodes.push_back({static_cast<double>(j) / m, units});
      }
      break;
  }
  return nodes;
}

Tensor resolve_baseline(const Baseline& baseline, const Shape& shape) {
  return std::visit(
      Overloaded{[&](const ZeroBaseline&) { return Tensor::zeros(shape); },
                 [&](const ConstantBaseline& c) {
                   return Tensor::filled(shape, c.value);
                 },
                 [&](const TensorBaseline& t) {
                   if (t.values.shape() != shape) {
                     throw ShapeError("baseline shape " +
                                      shape_string(t.values.shape()) +
                                      " does not match input " +
                                      shape_string(shape));
                   }
                   return t.values;
                 }},
      baseline);
}

std::string baseline_spec(const Baseline& baseline) {
  return std::visit(
      Overloaded{[](const ZeroBaseline&) { return std::string("zero"); },
                 [](const ConstantBaseline& c) {
                   return "const:" + format_double(c.value);
                 },
                 [](const TensorBaseline& t) {
                   return t.label.empty() ? std::string("tensor")
                                          : "file:" + t.label;
                 }},
      baseline);
}

std::string target_spec(const TargetClass& target) {
  return std::visit(
      Overloaded{[](ArgmaxClass) { return std::string("argmax"); },
                 [](std::size_t k) { return std::to_string(k); }},
      target);
}

Tensor interpolate(const Tensor& baseline, const Tensor& input, double alpha) {
  if (baseline.shape() != input.shape()) {
    throw ShapeError("interpolate: baseline " + shape_string(baseline.shape()) +
                     " and input " + shape_string(input.shape()) + " differ");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw PreconditionError("interpolate: alpha must lie in [0, 1]");
  }
  if (alpha == 0.0) return baseline;
  if (alpha == 1.0) return input;
  std::vector<double> out(input.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = baseline[i] + alpha * (input[i] - baseline[i]);
  }
  return Tensor(input.shape(), std::move(out));
}

AttributionMap pwig(const Network& net, const Tensor& input,
                    const AttributionConfig& config) {
  Resolved r = resolve(net, input, config.target);
  return integrate(r.f, input, config, r.cls, model_digest(net));
}

AttributionMap pwig(const ScalarFunction& f, const Tensor& input,
                    const AttributionConfig& config) {
  return integrate(f, input, config, 0, "function");
}

AttributionMap ig(const Network& net, const Tensor& input, Baseline baseline,
                  TargetClass target, std::size_t steps, Scheme scheme) {
  AttributionConfig config;
  config.baseline = std::move(baseline);
  config.target = target;
  config.steps = steps;
  config.scheme = scheme;
  config.weight = WeightFunction::uniform();
  return pwig(net, input, config);
}

double completeness_gap(const Network& net, const Tensor& input,
                        const AttributionConfig& config) {
  return pwig(net, input, config).completeness_gap;
}

std::vector<SeriesNode> attribution_series(const Network& net,
                                           const Tensor& input,
                                           const AttributionConfig& config) {
  return series(resolve(net, input, config.target).f, input, config);
}

std::vector<SeriesNode> attribution_series(const ScalarFunction& f,
                                           const Tensor& input,
                                           const AttributionConfig& config) {
  return series(f, input, config);
}

std::string to_document(const AttributionMap& map) {
  std::string out = "{\n\"format_version\": 1,\n\"model_digest\": \"";
  out += map.model_digest;
  out += "\",\n\"resolved_class\": " + std::to_string(map.resolved_class);
  out += ",\n\"completeness_gap\": ";
  append_double(out, map.completeness_gap);
  out += ",\n\"input_output\": ";
  append_double(out, map.input_output);
  out += ",\n\"baseline_output\": ";
  append_double(out, map.baseline_output);
  out += ",\n\"config\": {\"baseline\": " +
         nlohmann::json(map.config.baseline).dump();
  out += ", \"target\": " + nlohmann::json(map.config.target).dump();
  out += ", \"steps\": " + std::to_string(map.config.steps);
  out += ", \"scheme\": " + nlohmann::json(map.config.scheme).dump();
  out += ", \"weight\": " + nlohmann::json(map.config.weight).dump();
  out += "},\n\"shape\": [";
  const Shape& shape = map.scores.shape();
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(shape[i]);
  }
  out += "],\n\"scores\": [";
  for (std::size_t i = 0; i < map.scores.size(); ++i) {
    if (i) out += ',';
    append_double(out, map.scores[i]);
  }
  out += "]\n}\n";
  return out;
}

AttributionMap parse_attribution_document(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document.begin(), document.end());
    Shape shape = doc.at("shape").get<Shape>();
    std::vector<double> scores = doc.at("scores").get<std::vector<double>>();
    AttributionMap map{.scores = Tensor(std::move(shape), std::move(scores))};
    map.completeness_gap = doc.at("completeness_gap").get<double>();
    map.input_output = doc.at("input_output").get<double>();
    map.baseline_output = doc.at("baseline_output").get<double>();
    map.resolved_class = doc.at("resolved_class").get<std::size_t>();
    map.model_digest = doc.at("model_digest").get<std::string>();
    const auto& c = doc.at("config");
    map.config = ConfigEcho{c.at("baseline").get<std::string>(),
                            c.at("target").get<std::string>(),
                            c.at("steps").get<std::size_t>(),
                            c.at("scheme").get<std::string>(),
                            c.at("weight").get<std::string>()};
    return map;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("attribution document: ") + e.what());
  }
}

std::string to_csv(const AttributionMap& map) {
  std::string out = "feature,score\n";
  for (std::size_t i = 0; i < map.scores.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    append_double(out, map.scores[i]);
    out += '\n';
  }
  return out;
}

}  // namespace pwig

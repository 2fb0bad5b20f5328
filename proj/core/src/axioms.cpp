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

#include "pwig/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>

#include <json.hpp>

#include "internal.hpp"
#include "pwig/attribution.hpp"
#include "pwig/errors.hpp"
#include "pwig/rng.hpp"
#include "pwig/transforms.hpp"

namespace pwig {
namespace {

constexpr std::size_t kStepChoices[] = {5, 50, 500};
constexpr std::size_t kCompletenessSteps = 500;
constexpr double kControlDelta = 1e-3;

struct Trial {
  Tensor input;
  Tensor baseline;
  WeightFunction weight;
  std::size_t steps;
  std::size_t cls;
};

Tensor random_tensor(Rng& rng, const Shape& shape) {
  std::vector<double> v(element_count(shape));
  for (double& x : v) x = rng.uniform(-1.0, 1.0);
  return Tensor(shape, std::move(v));
}

Trial draw_trial(std::uint64_t seed, const Network& net) {
  Rng rng(seed);
  Tensor input = random_tensor(rng, net.input_shape());
  Tensor baseline = random_tensor(rng, net.input_shape());
  WeightFunction weight = random_weight(rng.next_u64());
  const std::size_t steps = kStepChoices[rng.below(3)];
  const std::size_t cls = rng.below(net.class_count());
  return {std::move(input), std::move(baseline), std::move(weight), steps, cls};
}

std::vector<std::uint64_t> trial_seeds(const CheckOptions& options) {
  std::vector<std::uint64_t> seeds(options.trials);
  for (std::size_t t = 0; t < seeds.size(); ++t) {
    seeds[t] = splitmix64(options.seed * 0x100000001b3ULL + t);
  }
  return seeds;
}

AttributionConfig config_for(const Trial& t, const WeightFunction& weight,
                             std::size_t steps, std::size_t threads) {
  AttributionConfig c;
  c.baseline = TensorBaseline{t.baseline, "trial"};
  c.target = t.cls;
  c.steps = steps;
  c.scheme = Scheme::kRight;
  c.weight = weight;
  c.threads = threads;
  return c;
}

AxiomReport start_report(std::string name, double tolerance,
                         const CheckOptions& options) {
  AxiomReport r;
  r.axiom = std::move(name);
  r.control = options.control;
  r.tolerance = tolerance;
  r.trials = options.trials;
  r.seed = options.seed;
  r.trial_seeds = trial_seeds(options);
  return r;
}

AxiomReport finish(AxiomReport r) {
  r.pass = r.max_deviation <= r.tolerance;
  return r;
}

std::size_t first_parametric(const Network& net) {
  for (std::size_t k = 0; k < net.layers().size(); ++k) {
    if (is_parametric(net.layers()[k])) return k;
  }
  throw PreconditionError("network has no parametric layer");
}

std::size_t first_dense(const Network& net) {
  const std::size_t k = first_parametric(net);
  if (!std::holds_alternative<Dense>(net.layers()[k])) {
    throw PreconditionError("first parametric layer is not Dense");
  }
  return k;
}

Network apply_transform(const Network& net, EquivalenceTransform transform,
                        std::uint64_t seed) {
  if (transform == EquivalenceTransform::kInsertIdentity) {
    for (std::size_t p = 0; p <= net.layers().size(); ++p) {
      if (net.activation_shape(p).size() == 1) {
        return insert_identity_layer(net, p);
      }
    }
    throw PreconditionError("insert-identity: network has no vector activation");
  }
  for (std::size_t k = 0; k < net.layers().size(); ++k) {
    if (!is_parametric(net.layers()[k])) continue;
    try {
      return permute_hidden_units(net, k, seed);
    } catch (const PreconditionError&) {
    }
  }
  throw PreconditionError("permute: no hidden layer is followed by another "
                          "parametric layer");
}

}  // namespace

WeightFunction random_weight(std::uint64_t seed) {
  Rng rng(seed);
  switch (rng.below(3)) {
    case 0:
      return WeightFunction::exponential(rng.uniform(-2.0, 2.0));
    case 1:
      return WeightFunction::power(rng.uniform(0.0, 3.0));
    default: {
      std::vector<double> alphas{0.0, 0.25, 0.5, 0.75, 1.0};
      std::vector<double> values(alphas.size());
      for (double& v : values) v = rng.uniform(0.0, 2.0);
      return WeightFunction::tabulated(std::move(alphas), std::move(values));
    }
  }
}

AxiomReport check_implementation_invariance(const Network& net,
                                            EquivalenceTransform transform,
                                            const CheckOptions& options) {
  const char* name = transform == EquivalenceTransform::kPermute
                         ? "implementation_invariance(permute)"
                         : "implementation_invariance(insert_identity)";
  AxiomReport r = start_report(name, kReorderedTolerance, options);
  Network other = apply_transform(net, transform, options.seed);
  if (options.control) {
    other = perturb_parameter(other, first_parametric(other), 0, kControlDelta);
  }
  for (std::uint64_t s : r.trial_seeds) {
    const Trial t = draw_trial(s, net);
    const auto c = config_for(t, t.weight, 50, options.threads);
    const AttributionMap a = pwig(net, t.input, c);
    const AttributionMap b = pwig(other, t.input, c);
    r.max_deviation =
        std::max(r.max_deviation, max_abs_difference(a.scores, b.scores));
  }
  return finish(std::move(r));
}

AxiomReport check_linearity(const Network& net1, const Network& net2, double a,
                            double b, const CheckOptions& options) {
  AxiomReport r = start_report("linearity", kReorderedTolerance, options);
  Network combined = linear_combination(net1, net2, a, b);
  if (options.control) {
    combined = perturb_parameter(combined, first_parametric(combined), 0,
                                 kControlDelta);
  }
  for (std::uint64_t s : r.trial_seeds) {
    const Trial t = draw_trial(s, net1);
    const auto c = config_for(t, t.weight, t.steps, options.threads);
    const Tensor pc = pwig(combined, t.input, c).scores;
    const Tensor p1 = pwig(net1, t.input, c).scores;
    const Tensor p2 = pwig(net2, t.input, c).scores;
    for (std::size_t i = 0; i < pc.size(); ++i) {
      r.max_deviation =
          std::max(r.max_deviation, std::abs(pc[i] - (a * p1[i] + b * p2[i])));
    }
  }
  r.metrics = {{"a", a}, {"b", b}};
  return finish(std::move(r));
}

AxiomReport check_dummy(const Network& net, std::size_t feature_index,
                        const CheckOptions& options) {
  AxiomReport r = start_report("dummy", kStructuralTolerance, options);
  if (feature_index >= element_count(net.input_shape())) {
    throw PreconditionError("dummy: feature index out of range");
  }
  const Network* target = &net;
  std::optional<Network> broken;
  if (options.control) {
    const std::size_t k = first_dense(net);
    broken = perturb_parameter(net, k, feature_index, kControlDelta);
    target = &*broken;
  }
  for (std::uint64_t s : r.trial_seeds) {
    const Trial t = draw_trial(s, net);
    const auto c = config_for(t, t.weight, t.steps, options.threads);
    const AttributionMap m = pwig(*target, t.input, c);
    r.max_deviation = std::max(r.max_deviation, std::abs(m.scores[feature_index]));
  }
  r.metrics = {{"feature", static_cast<double>(feature_index)}};
  return finish(std::move(r));
}

AxiomReport check_symmetry(const Network& net, std::size_t i, std::size_t j,
                           const CheckOptions& options, bool equalize) {
  AxiomReport r = start_report("symmetry", kStructuralTolerance, options);
  const std::size_t n = element_count(net.input_shape());
  if (i >= n || j >= n || i == j) {
    throw PreconditionError("symmetry: need distinct feature indices < n");
  }
  const Network* target = &net;
  std::optional<Network> broken;
  if (options.control) {
    broken = perturb_parameter(net, first_dense(net), i, kControlDelta);
    target = &*broken;
  }
  for (std::uint64_t s : r.trial_seeds) {
    Trial t = draw_trial(s, net);
    if (equalize) {
      std::vector<double> x = t.input.values();
      std::vector<double> b = t.baseline.values();
      x[j] = x[i];
      b[j] = b[i];
      t.input = Tensor(t.input.shape(), std::move(x));
      t.baseline = Tensor(t.baseline.shape(), std::move(b));
    } else if (t.input[i] != t.input[j] || t.baseline[i] != t.baseline[j]) {
      ++r.skipped;
      continue;
    }
    const auto c = config_for(t, t.weight, t.steps, options.threads);
    const AttributionMap m = pwig(*target, t.input, c);
    r.max_deviation =
        std::max(r.max_deviation, std::abs(m.scores[i] - m.scores[j]));
  }
  r.metrics = {{"i", static_cast<double>(i)}, {"j", static_cast<double>(j)}};
  return finish(std::move(r));
}

AxiomReport check_completeness_violation(const Network& net,
                                         const WeightFunction& weight,
                                         const CheckOptions& options) {
  if (weight.is_uniform()) {
    throw PreconditionError(
        "completeness violation check needs a non-uniform weight");
  }
  AxiomReport r = start_report("completeness_violation", 0.0, options);
  const WeightFunction probe =
      options.control ? WeightFunction::uniform() : weight;
  const WeightFunction uniform = WeightFunction::uniform();
  double min_rel = std::numeric_limits<double>::infinity();
  double max_rel = 0.0;
  double worst_uniform = 0.0;
  bool first = true;
  for (std::uint64_t s : r.trial_seeds) {
    const Trial t = draw_trial(s, net);
    const auto cw = config_for(t, probe, kCompletenessSteps, options.threads);
    const AttributionMap mw = pwig(net, t.input, cw);
    const double delta = mw.output_difference();
    if (std::abs(delta) < 1e-6) {
      ++r.skipped;
      continue;
    }
    const auto cu = config_for(t, uniform, kCompletenessSteps, options.threads);
    const AttributionMap mu = pwig(net, t.input, cu);

    // Leading-order right-endpoint error is (f(1) - f(0)) / 2m; allow twice.
    const ScalarFunction f = class_logit(net, t.cls);
    const Tensor g1 = gradient(f, t.input);
    const Tensor g0 = gradient(f, t.baseline);
    double f1 = 0.0, f0 = 0.0;
    for (std::size_t i = 0; i < g1.size(); ++i) {
      const double d = t.input[i] - t.baseline[i];
      f1 += g1[i] * d;
      f0 += g0[i] * d;
    }
    const double bound =
        std::abs(f1 - f0) / static_cast<double>(kCompletenessSteps) +
        1e-9 * std::max(1.0, std::abs(delta));

    const double rel = mw.completeness_gap / std::abs(delta);
    min_rel = std::min(min_rel, rel);
    max_rel = std::max(max_rel, rel);
    worst_uniform = std::max(worst_uniform, mu.completeness_gap);
    const double shortfall =
        std::max({0.0, 1e-3 - rel,
                  (mu.completeness_gap - bound) / std::abs(delta)});
    r.max_deviation = first ? shortfall : std::max(r.max_deviation, shortfall);
    first = false;
  }
  if (first) r.max_deviation = 0.0;
  r.metrics = {{"min_relative_gap", first ? 0.0 : min_rel},
               {"max_relative_gap", max_rel},
               {"max_uniform_gap", worst_uniform},
               {"steps", static_cast<double>(kCompletenessSteps)}};
  return finish(std::move(r));
}

std::string to_text(std::span<const AxiomReport> reports) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-44s %-7s %-6s %-13s %-9s %6s %7s\n",
                "axiom", "mode", "result", "max_deviation", "tolerance",
                "trials", "skipped");
  out += line;
  for (const AxiomReport& r : reports) {
    std::snprintf(line, sizeof line, "%-44s %-7s %-6s %-13.6g %-9.3g %6zu %7zu\n",
                  r.axiom.c_str(), r.control ? "control" : "check",
                  r.pass ? "PASS" : "FAIL", r.max_deviation, r.tolerance,
                  r.trials, r.skipped);
    out += line;
  }
  return out;
}

std::string to_document(std::span<const AxiomReport> reports) {
  using detail::append_double;
  std::string out = "[";
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const AxiomReport& r = reports[k];
    out += k ? ",\n" : "\n";
    out += "{\"axiom\": " + nlohmann::json(r.axiom).dump();
    out += ", \"control\": ";
    out += r.control ? "true" : "false";
    out += ", \"pass\": ";
    out += r.pass ? "true" : "false";
    out += ", \"max_deviation\": ";
    append_double(out, r.max_deviation);
    out += ", \"tolerance\": ";
    append_double(out, r.tolerance);
    out += ", \"trials\": " + std::to_string(r.trials);
    out += ", \"skipped\": " + std::to_string(r.skipped);
    out += ", \"seed\": " + std::to_string(r.seed);
    out += ", \"trial_seeds\": [";
    for (std::size_t t = 0; t < r.trial_seeds.size(); ++t) {
      if (t) out += ',';
      out += std::to_string(r.trial_seeds[t]);
    }
    out += "], \"metrics\": {";
    for (std::size_t m = 0; m < r.metrics.size(); ++m) {
      if (m) out += ", ";
      out += nlohmann::json(r.metrics[m].first).dump() + ": ";
      append_double(out, r.metrics[m].second);
    }
    out += "}}";
  }
  out += "\n]\n";
  return out;
}

}  // namespace pwig

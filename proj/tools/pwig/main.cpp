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


// pwig command-line driver: attribute, axioms, gradcheck, weights.

#include <CLI11.hpp>
#include <json.hpp>

#include <pwig/attribution.hpp>
#include <pwig/axioms.hpp>
#include <pwig/errors.hpp>
#include <pwig/finite_diff.hpp>
#include <pwig/imaging.hpp>
#include <pwig/model_io.hpp>
#include <pwig/network.hpp>
#include <pwig/presets.hpp>
#include <pwig/rng.hpp>
#include <pwig/tape.hpp>
#include <pwig/transforms.hpp>
#include <pwig/weighting.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kData = 3,
  kNumeric = 4,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

template <typename T>
T parse_int(std::string_view s, const char* what) {
  T v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw UsageError(std::string(what) + ": expected an integer, got '" +
                     std::string(s) + "'");
  }
  return v;
}

double parse_real(std::string_view s, const char* what) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || !std::isfinite(v)) {
    throw UsageError(std::string(what) + ": expected a number, got '" +
                     std::string(s) + "'");
  }
  return v;
}

// Runs a flag parser and reports its failures as usage errors.
template <typename F>
auto as_usage(const char* flag, F&& parse) {
  try {
    return parse();
  } catch (const pwig::Error& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

std::string utc_now() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Run {
 public:
  explicit Run(std::string subcommand)
      : subcommand_(std::move(subcommand)),
        started_(utc_now()),
        t0_(std::chrono::steady_clock::now()) {}

  ordered_json& config() { return config_; }
  void input(const std::string& path) { inputs_.push_back(path); }
  void set(const std::string& key, ordered_json value) {
    extra_[key] = std::move(value);
  }

  // Writes text under dir and lists it as an output.
  void write(const fs::path& dir, const std::string& name,
             std::string_view text) {
    const fs::path p = dir / name;
    pwig::write_text_file(p, text);
    outputs_.push_back(p.string());
  }
  void write_image(const fs::path& dir, const std::string& name,
                   const pwig::Image& image) {
    const fs::path p = dir / name;
    pwig::write_netpbm_file(p.string(), image);
    outputs_.push_back(p.string());
  }

  void write_manifest(const fs::path& dir) const {
    ordered_json m;
    m["tool"] = "pwig";
    m["version"] = PWIG_VERSION;
    m["subcommand"] = subcommand_;
    m["config"] = config_;
    for (const auto& [k, v] : extra_.items()) m[k] = v;
    m["inputs"] = inputs_;
    m["outputs"] = outputs_;
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t0_)
                            .count();
    m["timing"] = {{"started_utc", started_}, {"wall_seconds", secs}};
    pwig::write_text_file(dir / "manifest.json", m.dump(2) + "\n");
  }

 private:
  std::string subcommand_;
  std::string started_;
  std::chrono::steady_clock::time_point t0_;
  ordered_json config_ = ordered_json::object();
  ordered_json extra_ = ordered_json::object();
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
};

// Model specs: a JSON file path, preset[:seed], toy-mlp[:seed] or
// toy-convnet[:seed]. A missing seed falls back to --seed.
pwig::Network load_model(const std::string& spec, std::uint64_t seed) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  if (kind == "preset" || kind == "toy-mlp" || kind == "toy-convnet") {
    if (colon != std::string::npos) {
      seed = parse_int<std::uint64_t>(std::string_view(spec).substr(colon + 1),
                                      "--model seed");
    }
    if (kind == "preset") return pwig::classifier_preset(seed);
    if (kind == "toy-mlp") return pwig::toy_mlp(seed);
    return pwig::toy_convnet(seed);
  }
  return pwig::load_network_file(spec);
}

bool is_image_path(const std::string& path) {
  std::string ext = fs::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".pgm" || ext == ".ppm" || ext == ".pnm";
}

void require_image_model(const pwig::Network& net) {
  const pwig::Shape& s = net.input_shape();
  if (s.size() != 3 || s[0] != 3) {
    throw pwig::ShapeError("image input needs a model with input (3, H, W), "
                           "model expects " +
                           pwig::shape_string(s));
  }
}

struct LoadedInput {
  pwig::Tensor tensor;
  std::optional<pwig::Image> image;
};

LoadedInput load_input(const std::string& path, const pwig::Network& net) {
  if (is_image_path(path)) {
    require_image_model(net);
    pwig::Image img = pwig::read_netpbm_file(path);
    const auto& s = net.input_shape();
    pwig::Tensor t = pwig::prepare_input(img, s[1], s[2]);
    return {std::move(t), std::move(img)};
  }
  return {pwig::load_tensor(pwig::read_text_file(path)), std::nullopt};
}

pwig::Baseline parse_baseline(const std::string& spec,
                              const pwig::Network& net) {
  if (spec == "zero") return pwig::ZeroBaseline{};
  if (spec.rfind("const:", 0) == 0) {
    return pwig::ConstantBaseline{
        parse_real(std::string_view(spec).substr(6), "--baseline const")};
  }
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    return pwig::TensorBaseline{load_input(path, net).tensor, path};
  }
  throw UsageError("--baseline: expected zero, const:<v> or file:<path>, got '" +
                   spec + "'");
}

pwig::TargetClass parse_class(const std::string& spec) {
  if (spec == "argmax") return pwig::ArgmaxClass{};
  return parse_int<std::size_t>(spec, "--class");
}

pwig::WeightFunction parse_weight(const std::string& spec) {
  pwig::WeightFunction w =
      as_usage("--weight", [&] { return pwig::parse_weight_spec(spec); });
  if (auto v = pwig::validate_weight(w)) {
    throw UsageError("--weight " + spec + ": value " + num(v->value) +
                     " at alpha " + num(v->alpha) + " is not a valid weight");
  }
  return w;
}

// ---------------------------------------------------------------- attribute

struct AttributeArgs {
  std::string model;
  std::string input;
  std::string weight = "exp:1.0";
  std::string baseline = "zero";
  std::string target = "argmax";
  std::string scheme = "right";
  std::size_t steps = 50;
  double clip_low = 60.0;
  double clip_high = 95.0;
  double opacity = 0.6;
  bool no_overlay = false;
  std::uint64_t seed = 0;
  std::string out = "pwig-out";
};

int cmd_attribute(const AttributeArgs& a) {
  Run run("attribute");
  pwig::AttributionConfig config;
  config.weight = parse_weight(a.weight);
  config.scheme = as_usage("--scheme", [&] { return pwig::parse_scheme(a.scheme); });
  config.steps = a.steps;
  config.target = parse_class(a.target);
  pwig::RenderConfig render;
  render.clip_low = a.clip_low;
  render.clip_high = a.clip_high;
  render.opacity = a.opacity;
  as_usage("--clip-low/--clip-high/--opacity", [&] {
    pwig::validate_render_config(render);
    return 0;
  });

  const pwig::Network net = load_model(a.model, a.seed);
  LoadedInput in = load_input(a.input, net);
  config.baseline = parse_baseline(a.baseline, net);
  run.input(a.input);
  if (const auto* tb = std::get_if<pwig::TensorBaseline>(&config.baseline)) {
    run.input(tb->label);
  }

  const pwig::AttributionMap map = pwig::pwig(net, in.tensor, config);

  const fs::path dir(a.out);
  fs::create_directories(dir);
  run.write(dir, "attribution.json", pwig::to_document(map));
  run.write(dir, "attribution.csv", pwig::to_csv(map));

  ordered_json& c = run.config();
  c["model"] = a.model;
  c["input"] = a.input;
  c["weight"] = map.config.weight;
  c["baseline"] = map.config.baseline;
  c["class"] = map.config.target;
  c["scheme"] = map.config.scheme;
  c["steps"] = map.config.steps;
  c["clip_low"] = render.clip_low;
  c["clip_high"] = render.clip_high;
  c["opacity"] = render.opacity;
  c["overlay"] = !a.no_overlay && in.image.has_value();
  c["seed"] = a.seed;
  run.set("model_digest", map.model_digest);
  run.set("resolved_class", map.resolved_class);
  run.set("completeness_gap", map.completeness_gap);

  std::printf("class %zu  F(x) %s  F(x') %s  completeness_gap %s\n",
              map.resolved_class, num(map.input_output).c_str(),
              num(map.baseline_output).c_str(),
              num(map.completeness_gap).c_str());

  if (!a.no_overlay && in.image.has_value()) {
    const pwig::Tensor heat = pwig::aggregate_channels(map.scores);
    const pwig::ClipResult clip = pwig::clip_band(heat, render);
    const std::size_t h = heat.shape()[0], w = heat.shape()[1];
    const pwig::Image base = pwig::resize_image(*in.image, h, w);
    run.write_image(dir, "overlay.ppm", pwig::overlay(base, clip.mask, render));
    run.write_image(dir, "mask.pgm", pwig::mask_image(clip.mask));
    std::size_t nonzero = 0;
    for (double v : clip.mask.data()) nonzero += v > 0.0;
    run.set("render", {{"clip_low_value", clip.low},
                       {"clip_high_value", clip.high},
                       {"degenerate", clip.degenerate},
                       {"nonzero_pixels", nonzero}});
    if (clip.degenerate) {
      std::fprintf(stderr, "warning: clip band is degenerate; mask is empty\n");
    }
  }
  run.write_manifest(dir);
  std::printf("wrote %s\n", (dir / "manifest.json").string().c_str());
  return kOk;
}

// ------------------------------------------------------------------- axioms

struct AxiomArgs {
  std::string model;
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  bool break_invariance = false;
  std::size_t feature = 3;
  std::string out = "pwig-out";
};

int cmd_axioms(const AxiomArgs& a) {
  Run run("axioms");
  pwig::CheckOptions opt;
  opt.trials = a.trials;
  opt.seed = a.seed;
  pwig::CheckOptions ctl = opt;
  ctl.control = true;

  std::optional<pwig::Network> loaded;
  if (!a.model.empty()) {
    loaded = load_model(a.model, a.seed);
    run.input(a.model);
  }
  const pwig::Network base = loaded ? *loaded : pwig::toy_mlp(a.seed);
  const pwig::Network second =
      loaded ? pwig::perturb_parameter(*loaded, 0, 0, 0.25)
             : pwig::toy_mlp(pwig::splitmix64(a.seed));
  const pwig::Network dummy = pwig::zero_feature_influence(base, a.feature);
  const pwig::Network sym = pwig::symmetric_pair_net(6, 1, 4, a.seed);
  pwig::Rng rng(pwig::splitmix64(a.seed ^ 0x6c696e656172ULL));
  std::vector<double> w(3 * 6), b(3);
  for (double& v : w) v = rng.uniform(-1.0, 1.0);
  for (double& v : b) v = rng.uniform(-1.0, 1.0);
  const pwig::Network linear =
      loaded ? *loaded
             : pwig::linear_model(pwig::Tensor({3, 6}, std::move(w)),
                                  pwig::Tensor({3}, std::move(b)));
  const pwig::WeightFunction exp1 = pwig::WeightFunction::exponential(1.0);
  constexpr double kA = 2.5, kB = -1.3;

  using pwig::EquivalenceTransform;
  std::vector<pwig::AxiomReport> reports;
  const auto both = [&](auto&& check) {
    reports.push_back(check(opt));
    reports.push_back(check(ctl));
  };
  for (EquivalenceTransform tr :
       {EquivalenceTransform::kPermute, EquivalenceTransform::kInsertIdentity}) {
    if (a.break_invariance) {
      // The broken witness is reported as the check itself.
      pwig::AxiomReport r = pwig::check_implementation_invariance(base, tr, ctl);
      r.control = false;
      reports.push_back(r);
    } else {
      both([&](const pwig::CheckOptions& o) {
        return pwig::check_implementation_invariance(base, tr, o);
      });
    }
  }
  both([&](const pwig::CheckOptions& o) {
    return pwig::check_linearity(base, second, kA, kB, o);
  });
  both([&](const pwig::CheckOptions& o) {
    return pwig::check_dummy(dummy, a.feature, o);
  });
  both([&](const pwig::CheckOptions& o) {
    return pwig::check_symmetry(sym, 1, 4, o);
  });
  both([&](const pwig::CheckOptions& o) {
    return pwig::check_completeness_violation(linear, exp1, o);
  });

  bool ok = true;
  for (const auto& r : reports) ok = ok && (r.control ? !r.pass : r.pass);

  const std::string text = pwig::to_text(reports);
  std::fputs(text.c_str(), stdout);
  std::printf("%s\n", ok ? "all checks PASS, all controls FAIL" : "FAILED");

  const fs::path dir(a.out);
  fs::create_directories(dir);
  run.write(dir, "axioms.txt", text);
  run.write(dir, "axioms.json", pwig::to_document(reports));
  ordered_json& c = run.config();
  c["model"] = a.model.empty() ? "toy-mlp:" + std::to_string(a.seed) : a.model;
  c["trials"] = a.trials;
  c["seed"] = a.seed;
  c["break_invariance"] = a.break_invariance;
  c["feature"] = a.feature;
  c["linearity"] = {{"a", kA}, {"b", kB}};
  c["symmetry"] = {{"i", 1}, {"j", 4}};
  c["completeness_weight"] = exp1.spec();
  run.set("model_digest", pwig::model_digest(base));
  run.set("result", ok ? "pass" : "fail");
  run.write_manifest(dir);
  return ok ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------- gradcheck

struct GradcheckArgs {
  std::string model;
  double h = 1e-5;
  std::size_t points = 5;
  std::uint64_t seed = 0;
  double tolerance = 1e-6;
  std::size_t coords = 64;
  double kink_margin = 1e-3;
  std::string out;
};

// Coordinates probed per point: all of them for small inputs, a seeded
// sample otherwise.
std::vector<std::size_t> probe_coords(std::size_t n, std::size_t limit,
                                      pwig::Rng& rng) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  if (n <= limit) return idx;
  rng.shuffle(std::span<std::size_t>(idx));
  idx.resize(limit);
  std::sort(idx.begin(), idx.end());
  return idx;
}

int cmd_gradcheck(const GradcheckArgs& a) {
  Run run("gradcheck");
  if (!(a.h > 0.0)) throw UsageError("--h must be positive");
  const std::string spec =
      a.model.empty() ? "toy-convnet:" + std::to_string(a.seed) : a.model;
  const pwig::Network net = load_model(spec, a.seed);
  if (!a.model.empty()) run.input(a.model);
  const std::size_t n = pwig::element_count(net.input_shape());
  const std::size_t layers = net.layers().size();
  pwig::Rng rng(pwig::splitmix64(a.seed));

  // One random linear readout per probe depth; depth L is the full model.
  std::vector<pwig::Tensor> readouts;
  for (std::size_t k = 1; k <= layers; ++k) {
    const pwig::Shape& s = net.activation_shape(k);
    std::vector<double> r(pwig::element_count(s));
    for (double& v : r) v = rng.uniform(-1.0, 1.0);
    readouts.emplace_back(s, std::move(r));
  }

  std::map<std::string, double> worst_by_type;
  double worst = 0.0;
  std::size_t resampled = 0;
  std::string report;
  char line[160];
  for (std::size_t p = 0; p < a.points; ++p) {
    std::optional<pwig::Tensor> x;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      std::vector<double> v(n);
      for (double& e : v) e = rng.uniform(-1.0, 1.0);
      pwig::Tensor cand(net.input_shape(), std::move(v));
      pwig::Tape tape;
      net.record(tape, tape.input(cand));
      if (tape.min_kink_distance() >= a.kink_margin) {
        x = std::move(cand);
        break;
      }
      ++resampled;
    }
    if (!x) {
      throw pwig::PreconditionError(
          "gradcheck: could not find a point away from ReLU/max-pool kinks");
    }
    const std::vector<std::size_t> coords = probe_coords(n, a.coords, rng);
    double point_worst = 0.0;
    for (std::size_t k = 1; k <= layers; ++k) {
      const pwig::Tensor& r = readouts[k - 1];
      const pwig::ScalarFunction f = [&net, &r, k](pwig::Tape& t, pwig::Var v) {
        return t.dot(net.record(t, v, k), r);
      };
      const pwig::Tensor g = pwig::gradient(f, *x);
      std::vector<double> analytic(coords.size());
      for (std::size_t i = 0; i < coords.size(); ++i) analytic[i] = g[coords[i]];
      const std::vector<double> numeric =
          pwig::finite_diff_partials(f, *x, coords, a.h);
      const double err = pwig::relative_error(analytic, numeric);
      const std::string tag = pwig::layer_tag(net.layers()[k - 1]);
      worst_by_type[tag] = std::max(worst_by_type[tag], err);
      point_worst = std::max(point_worst, err);
    }
    worst = std::max(worst, point_worst);
    std::snprintf(line, sizeof line, "point %zu: max relative error %.3e\n", p,
                  point_worst);
    report += line;
  }
  for (const auto& [tag, err] : worst_by_type) {
    std::snprintf(line, sizeof line, "layer %-16s worst relative error %.3e\n",
                  tag.c_str(), err);
    report += line;
  }
  const bool ok = worst <= a.tolerance;
  std::snprintf(line, sizeof line,
                "max relative error %.3e (h %g, tolerance %g, %zu resampled): "
                "%s\n",
                worst, a.h, a.tolerance, resampled, ok ? "PASS" : "FAIL");
  report += line;
  std::fputs(report.c_str(), stdout);

  if (!a.out.empty()) {
    const fs::path dir(a.out);
    fs::create_directories(dir);
    run.write(dir, "gradcheck.txt", report);
    ordered_json& c = run.config();
    c["model"] = spec;
    c["h"] = a.h;
    c["points"] = a.points;
    c["seed"] = a.seed;
    c["tolerance"] = a.tolerance;
    c["coords"] = a.coords;
    c["kink_margin"] = a.kink_margin;
    run.set("model_digest", pwig::model_digest(net));
    run.set("max_relative_error", worst);
    run.set("result", ok ? "pass" : "fail");
    run.write_manifest(dir);
  }
  return ok ? kOk : kCheckFailed;
}

// ------------------------------------------------------------------ weights

struct WeightArgs {
  std::string weight = "exp:1.0";
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_weights(const WeightArgs& a) {
  Run run("weights");
  const pwig::WeightFunction w = parse_weight(a.weight);
  std::string csv = "alpha,value\n";
  for (int k = 0; k <= 100; ++k) {
    const double alpha = k / 100.0;
    csv += num(alpha) + "," + num(pwig::eval_weight(w, alpha)) + "\n";
  }
  csv += "integral," + num(pwig::weight_integral(w)) + "\n";
  std::fputs(csv.c_str(), stdout);
  if (!a.out.empty()) {
    const fs::path dir(a.out);
    fs::create_directories(dir);
    if (a.weight.rfind("table:", 0) == 0) run.input(a.weight.substr(6));
    run.write(dir, "weights.csv", csv);
    run.config()["weight"] = w.spec();
    run.config()["samples"] = 101;
    run.config()["seed"] = a.seed;
    run.write_manifest(dir);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Path-weighted integrated gradients: attribution maps, axiom "
               "checks and gradient validation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PWIG_VERSION);
  app.option_defaults()->always_capture_default();

  AttributeArgs at;
  CLI::App* attribute = app.add_subcommand(
      "attribute", "Attribute one input and render an overlay");
  attribute->add_option("--model", at.model,
                        "Model JSON file, preset[:seed], toy-mlp[:seed] or "
                        "toy-convnet[:seed]")
      ->required();
  attribute->add_option("--input", at.input,
                        "Input image (.pgm/.ppm) or JSON tensor")
      ->required();
  attribute->add_option("--weight", at.weight,
                        "uniform | exp:<c> | pow:<p> | table:<path>");
  attribute->add_option("--baseline", at.baseline,
                        "zero | const:<v> | file:<path>");
  attribute->add_option("--class", at.target, "argmax | <int>");
  attribute->add_option("--scheme", at.scheme, "right | midpoint | trapezoid");
  attribute->add_option("--steps", at.steps, "Quadrature steps m")
      ->check(CLI::PositiveNumber);
  attribute->add_option("--clip-low", at.clip_low, "Lower clip percentile");
  attribute->add_option("--clip-high", at.clip_high, "Upper clip percentile");
  attribute->add_option("--opacity", at.opacity, "Overlay opacity in [0, 1]");
  attribute->add_flag("--no-overlay", at.no_overlay,
                      "Skip overlay and mask images");
  attribute->add_option("--seed", at.seed,
                        "Seed for model specs without an explicit seed");
  attribute->add_option("--out", at.out, "Output directory");

  AxiomArgs ax;
  CLI::App* axioms = app.add_subcommand(
      "axioms", "Run the axiom checks and their non-vacuity controls");
  axioms->add_option("--model", ax.model,
                     "Model for invariance, linearity, dummy and completeness "
                     "(default: seeded toy MLP and linear model)");
  axioms->add_option("--trials", ax.trials, "Trials per check")
      ->check(CLI::PositiveNumber);
  axioms->add_option("--seed", ax.seed, "Master seed");
  axioms->add_option("--feature", ax.feature, "Dummy feature index");
  axioms->add_flag("--break-invariance", ax.break_invariance,
                   "Report the broken invariance witness as the check");
  axioms->add_option("--out", ax.out, "Output directory");

  GradcheckArgs gc;
  CLI::App* gradcheck = app.add_subcommand(
      "gradcheck", "Compare analytic and central-difference gradients");
  gradcheck->set_help_flag("--help", "Print this help message and exit");
  gradcheck->add_option("--model", gc.model,
                        "Model spec (default: toy-convnet:<seed>)");
  gradcheck->add_option("--h", gc.h, "Central difference step");
  gradcheck->add_option("--points", gc.points, "Sample points")
      ->check(CLI::PositiveNumber);
  gradcheck->add_option("--seed", gc.seed, "Seed for points and readouts");
  gradcheck->add_option("--tolerance", gc.tolerance,
                        "Maximum relative error");
  gradcheck->add_option("--coords", gc.coords,
                        "Coordinates probed per point for large inputs")
      ->check(CLI::PositiveNumber);
  gradcheck->add_option("--kink-margin", gc.kink_margin,
                        "Minimum distance from ReLU/max-pool kinks");
  gradcheck->add_option("--out", gc.out,
                        "Output directory (report is printed either way)");

  WeightArgs wt;
  CLI::App* weights = app.add_subcommand(
      "weights", "Print 101 samples of g(alpha) and its integral as CSV");
  weights->add_option("--weight", wt.weight,
                      "uniform | exp:<c> | pow:<p> | table:<path>");
  weights->add_option("--seed", wt.seed, "Recorded in the manifest");
  weights->add_option("--out", wt.out,
                      "Output directory (CSV is printed either way)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*attribute) return cmd_attribute(at);
    if (*axioms) return cmd_axioms(ax);
    if (*gradcheck) return cmd_gradcheck(gc);
    return cmd_weights(wt);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "pwig: usage: %s\n", e.what());
    return kUsage;
  } catch (const pwig::NumericError& e) {
    std::fprintf(stderr, "pwig: numeric error: %s\n", e.what());
    return kNumeric;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "pwig: error: %s\n", e.what());
    return kData;
  }
}

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


#include <benchmark/benchmark.h>

#include <pwig/attribution.hpp>
#include <pwig/presets.hpp>
#include <pwig/transforms.hpp>
#include <pwig/rng.hpp>

#include <vector>

namespace {

void BM_PwigMlp(benchmark::State& state) {
  const std::size_t widths[] = {32, 64, 64, 10};
  const pwig::Network net = pwig::random_mlp(widths, pwig::Activation::kRelu, 7);
  pwig::Rng rng(8);
  std::vector<double> v(32);
  for (double& e : v) e = rng.uniform(-1.0, 1.0);
  const pwig::Tensor x = pwig::Tensor::vector(v);
  pwig::AttributionConfig config;
  config.steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pwig::pwig(net, x, config));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PwigMlp)->Arg(50)->Arg(500);

void BM_PwigConvnet(benchmark::State& state) {
  const pwig::Network net = pwig::toy_convnet(9);
  pwig::Rng rng(10);
  std::vector<double> v(pwig::element_count(net.input_shape()));
  for (double& e : v) e = rng.uniform(0.0, 1.0);
  const pwig::Tensor x(net.input_shape(), std::move(v));
  pwig::AttributionConfig config;
  config.weight = pwig::WeightFunction::uniform();
  for (auto _ : state) benchmark::DoNotOptimize(pwig::pwig(net, x, config));
}
BENCHMARK(BM_PwigConvnet);

}  // namespace

BENCHMARK_MAIN();

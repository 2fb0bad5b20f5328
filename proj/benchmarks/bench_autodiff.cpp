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

#include <pwig/network.hpp>
#include <pwig/presets.hpp>
#include <pwig/transforms.hpp>
#include <pwig/rng.hpp>
#include <pwig/tape.hpp>

#include <vector>

namespace {

pwig::Tensor random_input(const pwig::Shape& shape, std::uint64_t seed) {
  pwig::Rng rng(seed);
  std::vector<double> v(pwig::element_count(shape));
  for (double& e : v) e = rng.uniform(-1.0, 1.0);
  return pwig::Tensor(shape, std::move(v));
}

void BM_ConvnetForward(benchmark::State& state) {
  const pwig::Network net = pwig::toy_convnet(1);
  const pwig::Tensor x = random_input(net.input_shape(), 2);
  for (auto _ : state) benchmark::DoNotOptimize(pwig::forward(net, x));
}
BENCHMARK(BM_ConvnetForward);

void BM_ConvnetGradient(benchmark::State& state) {
  const pwig::Network net = pwig::toy_convnet(1);
  const pwig::Tensor x = random_input(net.input_shape(), 2);
  const pwig::ScalarFunction f = [&net](pwig::Tape& t, pwig::Var v) {
    return t.select(net.record(t, v), 0);
  };
  for (auto _ : state) benchmark::DoNotOptimize(pwig::gradient(f, x));
}
BENCHMARK(BM_ConvnetGradient);

void BM_PresetGradient(benchmark::State& state) {
  const pwig::Network net = pwig::classifier_preset(0);
  const pwig::Tensor x = random_input(net.input_shape(), 3);
  const pwig::ScalarFunction f = [&net](pwig::Tape& t, pwig::Var v) {
    return t.select(net.record(t, v), 0);
  };
  for (auto _ : state) benchmark::DoNotOptimize(pwig::gradient(f, x));
}
BENCHMARK(BM_PresetGradient)->Unit(benchmark::kMillisecond);

void BM_MlpGradient(benchmark::State& state) {
  const auto width = static_cast<std::size_t>(state.range(0));
  const std::size_t widths[] = {width, width, width, 4};
  const pwig::Network net = pwig::random_mlp(widths, pwig::Activation::kTanh, 5);
  const pwig::Tensor x = random_input(net.input_shape(), 6);
  const pwig::ScalarFunction f = [&net](pwig::Tape& t, pwig::Var v) {
    return t.select(net.record(t, v), 0);
  };
  for (auto _ : state) benchmark::DoNotOptimize(pwig::gradient(f, x));
}
BENCHMARK(BM_MlpGradient)->Arg(16)->Arg(64)->Arg(256);

}  // namespace

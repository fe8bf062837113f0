// benchmarks/bench_rir.cc

// Copyright 2026 fasnet project contributors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "fasnet/sim/render.h"
#include "fasnet/sim/rir.h"

namespace {

using namespace fasnet;

void BM_GenerateRir(benchmark::State& state) {
  sim::RoomSpec room;
  room.length = 6.0;
  room.width = 5.0;
  room.height = 3.0;
  room.t60 = 0.3;
  const Eigen::Vector3d src(2.0, 2.5, 1.5);
  const Eigen::Vector3d mic(4.0, 3.0, 1.5);
  const int num_taps = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sim::generate_rir(room, src, mic, 16000.0, num_taps));
  }
}
BENCHMARK(BM_GenerateRir)->Arg(2048)->Arg(5600)->Unit(benchmark::kMillisecond);

void BM_FftConvolve(benchmark::State& state) {
  Rng rng(5);
  Vec a(64000);
  Vec b(5600);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    a[i] = uniform_range(rng, -1.0, 1.0);
  }
  for (Eigen::Index i = 0; i < b.size(); ++i) {
    b[i] = uniform_range(rng, -1.0, 1.0);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(sim::fft_convolve(a, b));
  }
}
BENCHMARK(BM_FftConvolve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

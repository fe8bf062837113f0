// benchmarks/bench_dsp.cc

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

#include "fasnet/dsp/framing.h"
#include "fasnet/feats/ncc.h"

namespace {

using namespace fasnet;

dsp::FrameSpec spec_16k() {
  dsp::FrameSpec spec;
  spec.frame_len = 256;  // 16 ms at 16 kHz
  spec.hop = 128;
  spec.context = 256;
  spec.sample_rate = 16000.0;
  return spec;
}

Vec random_signal(Eigen::Index n) {
  Rng rng(7);
  Vec x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x[i] = uniform_range(rng, -1.0, 1.0);
  }
  return x;
}

void BM_FrameSignal(benchmark::State& state) {
  const dsp::FrameSpec spec = spec_16k();
  const Vec x = random_signal(64000);  // 4 s
  for (auto _ : state) {
    benchmark::DoNotOptimize(dsp::frame_signal(x, spec));
  }
}
BENCHMARK(BM_FrameSignal);

void BM_OverlapAdd(benchmark::State& state) {
  const dsp::FrameSpec spec = spec_16k();
  const Vec x = random_signal(64000);
  const dsp::FrameSequence frames = dsp::frame_signal(x, spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dsp::overlap_add(frames.frames, spec, x.size()));
  }
}
BENCHMARK(BM_OverlapAdd);

void BM_NccFrames(benchmark::State& state) {
  const dsp::FrameSpec spec = spec_16k();
  const Vec x = random_signal(64000);
  const Vec y = random_signal(64000);
  const Mat centers = dsp::frame_signal(x, spec).frames;
  const Mat contexts = dsp::context_frames(y, spec).frames;
  for (auto _ : state) {
    benchmark::DoNotOptimize(feats::ncc_frames(centers, contexts));
  }
}
BENCHMARK(BM_NccFrames);

}  // namespace

BENCHMARK_MAIN();

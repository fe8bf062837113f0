// benchmarks/bench_model.cc

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

#include "fasnet/model/fasnet.h"
#include "fasnet/objective/sisnr.h"

namespace {

using namespace fasnet;

// Smoke-scale model: 1 s of 8 kHz audio, 4 ms frames, 2 mics, 2 sources.
model::FasnetConfig smoke_config() {
  model::FasnetConfig cfg;
  cfg.variant = model::Variant::kSingleStageTac;
  cfg.num_sources = 2;
  cfg.sample_rate = 8000.0;
  cfg.frame_ms = 4.0;
  cfg.context_ms = 4.0;
  cfg.encoder_dim = 32;
  cfg.tac_hidden = 48;
  cfg.sep_width = 32;
  cfg.sep_hidden = 32;
  cfg.sep_blocks = 2;
  cfg.chunk_len = 24;
  return cfg;
}

MultichannelSignal random_mixture(double fs, Eigen::Index n, int channels) {
  Rng rng(11);
  MultichannelSignal x;
  x.sample_rate = fs;
  for (int c = 0; c < channels; ++c) {
    Vec ch(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      ch[i] = uniform_range(rng, -0.5, 0.5);
    }
    x.channels.push_back(std::move(ch));
  }
  return x;
}

void BM_ForwardSmoke(benchmark::State& state) {
  const model::FasnetConfig cfg = smoke_config();
  Rng rng(3);
  const model::FasnetModel model(cfg, rng);
  const MultichannelSignal x = random_mixture(cfg.sample_rate, 8000, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.forward(x));
  }
}
BENCHMARK(BM_ForwardSmoke)->Unit(benchmark::kMillisecond);

void BM_TrainStepSmoke(benchmark::State& state) {
  const model::FasnetConfig cfg = smoke_config();
  Rng rng(3);
  model::FasnetModel model(cfg, rng);
  const MultichannelSignal x = random_mixture(cfg.sample_rate, 8000, 2);
  std::vector<Vec> targets;
  Rng trng(5);
  for (int j = 0; j < cfg.num_sources; ++j) {
    Vec t(8000);
    for (Eigen::Index i = 0; i < t.size(); ++i) {
      t[i] = uniform_range(trng, -0.5, 0.5);
    }
    targets.push_back(std::move(t));
  }
  for (auto _ : state) {
    nn::zero_grads(model.params());
    model::FasnetModel::Cache cache;
    const std::vector<Vec> ests = model.forward(x, &cache);
    const objective::UpitResult upit = objective::upit_loss(ests, targets);
    const std::vector<Vec> dests =
        objective::upit_loss_backward(ests, targets, upit, 1.0);
    model.backward(cache, dests);
    benchmark::DoNotOptimize(upit.loss);
  }
}
BENCHMARK(BM_TrainStepSmoke)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

// tests/test_model.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "fasnet/dsp/framing.h"
#include "fasnet/feats/ncc.h"
#include "fasnet/model/fasnet.h"
#include "fasnet/nn/grad_check.h"
#include "support/oracles.h"

using namespace fasnet;

namespace {

// Small enough for finite-difference checks, large enough to exercise the
// chunked separator with more than one chunk.
model::FasnetConfig tiny_config(model::Variant variant) {
  model::FasnetConfig cfg;
  cfg.variant = variant;
  cfg.num_sources = 2;
  cfg.sample_rate = 1000.0;
  cfg.frame_ms = 8.0;
  cfg.context_ms = 4.0;
  cfg.encoder_dim = 8;
  cfg.tac_hidden = 6;
  cfg.sep_width = 10;
  cfg.sep_hidden = 6;
  cfg.sep_blocks = 1;
  cfg.chunk_len = 2;
  cfg.max_channels = 6;
  cfg.validate();
  return cfg;
}

MultichannelSignal random_signal(Rng& rng, int channels, Eigen::Index len,
                                 double fs) {
  MultichannelSignal x;
  x.sample_rate = fs;
  for (int i = 0; i < channels; ++i) {
    x.channels.push_back(oracle::random_vec(rng, len, 1.0));
  }
  return x;
}

}  // namespace

TEST_CASE("filter_and_sum: center-delta filters reduce to the channel sum") {
  Rng rng(31);
  dsp::FrameSpec spec;
  spec.frame_len = 8;
  spec.hop = 4;
  spec.context = 4;
  spec.sample_rate = 1000.0;

  const Eigen::Index len = 45;
  const MultichannelSignal x = random_signal(rng, 3, len, spec.sample_rate);
  std::vector<Mat> contexts;
  for (const Vec& ch : x.channels) {
    contexts.push_back(dsp::context_frames(ch, spec).frames);
  }
  const int T = static_cast<int>(contexts[0].rows());

  model::FilterSet filters;
  Mat delta = Mat::Zero(T, spec.filter_len());
  delta.col(spec.context).setOnes();
  filters.h.assign(3, {delta});

  const std::vector<Mat> y = model::filter_and_sum(contexts, filters, spec.frame_len);
  REQUIRE(y.size() == 1);
  const Vec out = dsp::overlap_add(y[0], spec, len);

  Vec want = Vec::Zero(len);
  for (const Vec& ch : x.channels) want += ch;
  CHECK((out - want).lpNorm<Eigen::Infinity>() <= 1e-12);
}

TEST_CASE("filter_and_sum: matches a direct per-frame oracle") {
  Rng rng(32);
  dsp::FrameSpec spec;
  spec.frame_len = 6;
  spec.hop = 3;
  spec.context = 2;

  const MultichannelSignal x = random_signal(rng, 2, 20, 16000.0);
  std::vector<Mat> contexts;
  for (const Vec& ch : x.channels) {
    contexts.push_back(dsp::context_frames(ch, spec).frames);
  }
  const int T = static_cast<int>(contexts[0].rows());

  model::FilterSet filters;
  filters.h.assign(2, std::vector<Mat>());
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      filters.h[static_cast<size_t>(i)].push_back(
          oracle::random_mat(rng, T, spec.filter_len(), 1.0));
    }
  }

  const std::vector<Mat> y = model::filter_and_sum(contexts, filters, spec.frame_len);
  REQUIRE(y.size() == 2);
  for (int j = 0; j < 2; ++j) {
    for (int t = 0; t < T; ++t) {
      Vec want = Vec::Zero(spec.frame_len);
      for (int i = 0; i < 2; ++i) {
        want += oracle::apply_filter(
            contexts[static_cast<size_t>(i)].row(t).transpose(),
            filters.h[static_cast<size_t>(i)][static_cast<size_t>(j)]
                .row(t)
                .transpose(),
            spec.frame_len);
      }
      CHECK((y[static_cast<size_t>(j)].row(t).transpose() - want)
                .lpNorm<Eigen::Infinity>() <= 1e-12);
    }
  }
}

TEST_CASE("filter_and_sum: rejects ragged filter sets") {
  dsp::FrameSpec spec;
  spec.frame_len = 4;
  spec.hop = 2;
  spec.context = 1;
  std::vector<Mat> contexts(2, Mat::Zero(3, spec.context_len()));
  model::FilterSet filters;
  filters.h.push_back({Mat::Zero(3, spec.filter_len())});
  CHECK_THROWS_AS(model::filter_and_sum(contexts, filters, spec.frame_len),
                  std::invalid_argument);
}

TEST_CASE("stage1_features: encoder columns then mean cross-channel feature") {
  Rng rng(33);
  dsp::FrameSpec spec;
  spec.frame_len = 8;
  spec.hop = 4;
  spec.context = 4;

  const int K = 5;
  const Mat enc = oracle::random_mat(rng, spec.context_len(), K, 1.0);
  const MultichannelSignal x = random_signal(rng, 3, 40, 16000.0);
  std::vector<Mat> contexts;
  for (const Vec& ch : x.channels) {
    contexts.push_back(dsp::context_frames(ch, spec).frames);
  }

  const Mat feat = model::stage1_features(contexts, 0, spec.frame_len, spec.context, enc);
  REQUIRE(feat.cols() == K + spec.filter_len());
  REQUIRE(feat.rows() == contexts[0].rows());

  const Mat centers = contexts[0].middleCols(spec.context, spec.frame_len);
  CHECK((feat.leftCols(K) - contexts[0] * enc).lpNorm<Eigen::Infinity>() <= 1e-12);
  for (Eigen::Index t = 0; t < feat.rows(); ++t) {
    Vec mean = Vec::Zero(spec.filter_len());
    for (const Mat& ctx : contexts) {
      mean += oracle::ncc(centers.row(t).transpose(), ctx.row(t).transpose(),
                          feats::kNccNormEps);
    }
    mean /= static_cast<double>(contexts.size());
    CHECK((feat.row(t).tail(spec.filter_len()).transpose() - mean)
              .lpNorm<Eigen::Infinity>() <= 1e-12);
  }
}

TEST_CASE("single_stage_features: every channel pairs its encoding with ref NCC") {
  Rng rng(34);
  dsp::FrameSpec spec;
  spec.frame_len = 6;
  spec.hop = 3;
  spec.context = 3;

  const int K = 4;
  const Mat enc = oracle::random_mat(rng, spec.context_len(), K, 1.0);
  const MultichannelSignal x = random_signal(rng, 3, 30, 16000.0);
  std::vector<Mat> contexts;
  for (const Vec& ch : x.channels) {
    contexts.push_back(dsp::context_frames(ch, spec).frames);
  }

  const std::vector<Mat> feats_all =
      model::single_stage_features(contexts, 0, spec.frame_len, spec.context, enc);
  REQUIRE(feats_all.size() == contexts.size());
  const Mat centers = contexts[0].middleCols(spec.context, spec.frame_len);
  for (size_t i = 0; i < contexts.size(); ++i) {
    const Mat& feat = feats_all[i];
    CHECK((feat.leftCols(K) - contexts[i] * enc).lpNorm<Eigen::Infinity>() <= 1e-12);
    for (Eigen::Index t = 0; t < feat.rows(); ++t) {
      const Vec q = oracle::ncc(centers.row(t).transpose(),
                                contexts[i].row(t).transpose(), feats::kNccNormEps);
      CHECK((feat.row(t).tail(spec.filter_len()).transpose() - q)
                .lpNorm<Eigen::Infinity>() <= 1e-12);
    }
  }
}

TEST_CASE("model: every variant returns num_sources full-length waveforms") {
  const model::Variant variants[] = {
      model::Variant::kTwoStage, model::Variant::kTwoStageTac,
      model::Variant::kSingleStage, model::Variant::kSingleStageTac};
  for (const model::Variant v : variants) {
    Rng rng(35);
    const model::FasnetConfig cfg = tiny_config(v);
    model::FasnetModel net(cfg, rng);
    const MultichannelSignal x = random_signal(rng, 3, 50, cfg.sample_rate);
    const std::vector<Vec> y = net.forward(x);
    REQUIRE(y.size() == static_cast<size_t>(cfg.num_sources));
    for (const Vec& est : y) {
      CHECK(est.size() == x.num_samples());
      CHECK(all_finite(est));
    }
  }
}

TEST_CASE("model: one parameter set serves every channel count") {
  Rng rng(36);
  const model::FasnetConfig cfg = tiny_config(model::Variant::kSingleStageTac);
  model::FasnetModel net(cfg, rng);
  for (int channels = 1; channels <= cfg.max_channels; ++channels) {
    const MultichannelSignal x = random_signal(rng, channels, 40, cfg.sample_rate);
    const std::vector<Vec> y = net.forward(x);
    REQUIRE(y.size() == 2);
    for (const Vec& est : y) {
      CHECK(est.size() == 40);
      CHECK(all_finite(est));
    }
  }
}

TEST_CASE("model: permuting non-reference channels leaves outputs unchanged") {
  Rng rng(37);
  const model::FasnetConfig cfg = tiny_config(model::Variant::kSingleStageTac);
  model::FasnetModel net(cfg, rng);
  const MultichannelSignal x = random_signal(rng, 4, 60, cfg.sample_rate);
  const std::vector<Vec> base = net.forward(x);

  MultichannelSignal shuffled = x;
  shuffled.channels[1] = x.channels[3];
  shuffled.channels[2] = x.channels[1];
  shuffled.channels[3] = x.channels[2];
  const std::vector<Vec> permuted = net.forward(shuffled);
  REQUIRE(permuted.size() == base.size());
  for (size_t j = 0; j < base.size(); ++j) {
    CHECK((permuted[j] - base[j]).norm() / base[j].norm() <= 1e-8);
  }
}

TEST_CASE("model: input validation") {
  Rng rng(38);
  const model::FasnetConfig cfg = tiny_config(model::Variant::kSingleStageTac);
  model::FasnetModel net(cfg, rng);

  MultichannelSignal wrong_rate = random_signal(rng, 2, 30, 999.0);
  CHECK_THROWS_AS(net.forward(wrong_rate), std::invalid_argument);

  MultichannelSignal too_many = random_signal(rng, cfg.max_channels + 1, 30, cfg.sample_rate);
  CHECK_THROWS_AS(net.forward(too_many), std::invalid_argument);

  MultichannelSignal ragged = random_signal(rng, 2, 30, cfg.sample_rate);
  ragged.channels[1] = Vec::Zero(29);
  CHECK_THROWS_AS(net.forward(ragged), std::invalid_argument);

  Rng rng2(39);
  model::FasnetModel two_stage(tiny_config(model::Variant::kTwoStage), rng2);
  MultichannelSignal mono = random_signal(rng, 1, 30, cfg.sample_rate);
  CHECK_THROWS_AS(two_stage.forward(mono), std::invalid_argument);
}

TEST_CASE("model: end-to-end gradients match finite differences") {
  const model::Variant variants[] = {model::Variant::kSingleStageTac,
                                     model::Variant::kTwoStageTac};
  for (const model::Variant v : variants) {
    Rng rng(40);
    const model::FasnetConfig cfg = tiny_config(v);
    model::FasnetModel net(cfg, rng);
    const Eigen::Index len = 16;
    const MultichannelSignal x = random_signal(rng, 2, len, cfg.sample_rate);
    std::vector<Vec> proj;
    for (int j = 0; j < cfg.num_sources; ++j) {
      proj.push_back(oracle::random_vec(rng, len, 1.0));
    }
    auto loss = [&](bool with_grad) {
      model::FasnetModel::Cache cache;
      const std::vector<Vec> y = net.forward(x, &cache);
      double value = 0.0;
      for (size_t j = 0; j < y.size(); ++j) {
        value += y[j].dot(proj[j]);
      }
      if (with_grad) {
        nn::zero_grads(net.params());
        net.backward(cache, proj);
      }
      return value;
    };
    nn::GradCheckOptions opts;
    opts.step = 1e-6;
    opts.tolerance = 1e-5;
    const nn::GradCheckReport report = nn::check_gradients(net.params(), loss, opts);
    CHECK_MESSAGE(report.passed, to_string(v) << ": " << nn::format_report(report));
  }
}

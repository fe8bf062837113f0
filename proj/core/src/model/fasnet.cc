// core/src/model/fasnet.cc

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

#include "fasnet/model/fasnet.h"

#include <stdexcept>

#include "fasnet/feats/ncc.h"

namespace fasnet {
namespace model {

namespace {

SeparatorOptions stage_options(const FasnetConfig& cfg, int out_dim, bool use_tac) {
  SeparatorOptions opts;
  opts.in_dim = cfg.feature_dim();
  opts.width = cfg.sep_width;
  opts.hidden = cfg.sep_hidden;
  opts.out_dim = out_dim;
  opts.num_blocks = cfg.sep_blocks;
  opts.chunk_len = cfg.chunk_len;
  opts.use_tac = use_tac;
  opts.tac_hidden = use_tac ? cfg.tac_dim() : 0;
  return opts;
}

// Per-frame sliding filter over every row of a context matrix.
Mat apply_filter_frames(const Mat& contexts, const Mat& filters, int frame_len) {
  Mat out(contexts.rows(), frame_len);
  for (Eigen::Index t = 0; t < contexts.rows(); ++t) {
    out.row(t) =
        dsp::apply_filter(contexts.row(t), filters.row(t), frame_len).transpose();
  }
  return out;
}

// Accumulates filter gradients for one stream; context gradients are only
// needed when the context is itself a model output, which never happens for
// raw input channels.
void filter_frames_backward(const Mat& contexts, const Mat& filters, const Mat& dout,
                            Mat* dfilters) {
  Vec dh(filters.cols());
  for (Eigen::Index t = 0; t < contexts.rows(); ++t) {
    dh.setZero();
    dsp::apply_filter_backward(contexts.row(t), filters.row(t), dout.row(t), nullptr, &dh);
    dfilters->row(t) += dh.transpose();
  }
}

}  // namespace

std::vector<Mat> filter_and_sum(const std::vector<Mat>& contexts, const FilterSet& filters,
                                int frame_len) {
  const size_t N = contexts.size();
  if (filters.h.size() != N) {
    throw std::invalid_argument("filter_and_sum: stream count mismatch");
  }
  if (N == 0) throw std::invalid_argument("filter_and_sum: no streams");
  const size_t C = filters.h[0].size();
  std::vector<Mat> out(C, Mat::Zero(contexts[0].rows(), frame_len));
  for (size_t i = 0; i < N; ++i) {
    if (filters.h[i].size() != C) {
      throw std::invalid_argument("filter_and_sum: ragged filter set");
    }
    for (size_t j = 0; j < C; ++j) {
      out[j] += apply_filter_frames(contexts[i], filters.h[i][j], frame_len);
    }
  }
  return out;
}

Mat stage1_features(const std::vector<Mat>& contexts, int ref, int frame_len, int context,
                    const Mat& encoder_weights) {
  if (ref < 0 || ref >= static_cast<int>(contexts.size())) {
    throw std::invalid_argument("stage1_features: reference channel out of range");
  }
  const Mat centers = contexts[ref].middleCols(context, frame_len);
  std::vector<Mat> qs;
  qs.reserve(contexts.size());
  for (const Mat& ctx : contexts) {
    qs.push_back(feats::ncc_frames(centers, ctx));
  }
  const Mat qmean = feats::ncc_mean(qs);
  const Mat r = contexts[ref] * encoder_weights;
  Mat out(r.rows(), r.cols() + qmean.cols());
  out << r, qmean;
  return out;
}

std::vector<Mat> single_stage_features(const std::vector<Mat>& contexts, int ref, int frame_len,
                                       int context, const Mat& encoder_weights) {
  if (ref < 0 || ref >= static_cast<int>(contexts.size())) {
    throw std::invalid_argument("single_stage_features: reference channel out of range");
  }
  const Mat centers = contexts[ref].middleCols(context, frame_len);
  std::vector<Mat> out;
  out.reserve(contexts.size());
  for (const Mat& ctx : contexts) {
    const Mat q = feats::ncc_frames(centers, ctx);
    const Mat r = ctx * encoder_weights;
    Mat feat(r.rows(), r.cols() + q.cols());
    feat << r, q;
    out.push_back(std::move(feat));
  }
  return out;
}

FasnetModel::FasnetModel(const FasnetConfig& cfg, Rng& rng)
    : cfg_(cfg),
      enc1_(cfg.frame_spec().context_len(), cfg.encoder_dim, rng, /*bias=*/false),
      sep1_(stage_options(cfg, cfg.num_sources * cfg.filter_len(),
                          cfg.variant == Variant::kSingleStageTac),
            rng) {
  cfg_.validate();
  nn::prefix_params("encoder1.", enc1_.params());
  nn::prefix_params("sep1.", sep1_.params());
  if (variant_is_two_stage(cfg_.variant)) {
    enc2_ = std::make_unique<nn::Linear>(cfg.frame_spec().context_len(), cfg.encoder_dim, rng,
                                         /*bias=*/false);
    sep2_ = std::make_unique<SeparatorStack>(
        stage_options(cfg, cfg.filter_len(), cfg.variant == Variant::kTwoStageTac), rng);
    nn::prefix_params("encoder2.", enc2_->params());
    nn::prefix_params("sep2.", sep2_->params());
  }
}

std::vector<Vec> FasnetModel::forward(const MultichannelSignal& x, Cache* cache) const {
  const int N = x.num_channels();
  if (N < 1) throw std::invalid_argument("model: input has no channels");
  if (N > cfg_.max_channels) {
    throw std::invalid_argument("model: more channels than configured max_channels");
  }
  if (variant_is_two_stage(cfg_.variant) && N < 2) {
    throw std::invalid_argument("model: two-stage variants need at least 2 channels");
  }
  if (x.sample_rate != cfg_.sample_rate) {
    throw std::invalid_argument("model: sample rate does not match config");
  }
  if (x.num_samples() < 1) throw std::invalid_argument("model: empty signal");
  for (const Vec& ch : x.channels) {
    if (ch.size() != x.num_samples()) {
      throw std::invalid_argument("model: channel length mismatch");
    }
  }

  Cache local;
  Cache* c = cache != nullptr ? cache : &local;
  return variant_is_two_stage(cfg_.variant) ? run_two_stage(x, c) : run_single_stage(x, c);
}

std::vector<Vec> FasnetModel::run_two_stage(const MultichannelSignal& x, Cache* c) const {
  const dsp::FrameSpec spec = cfg_.frame_spec();
  const int N = x.num_channels();
  const Eigen::Index S = x.num_samples();
  const int C = cfg_.num_sources;
  const int FL = spec.filter_len();
  const int K = cfg_.encoder_dim;

  c->num_samples = S;
  c->num_channels = N;
  c->contexts.resize(N);
  for (int i = 0; i < N; ++i) {
    c->contexts[i] = dsp::context_frames(x.channels[i], spec).frames;
  }
  c->centers_ref = c->contexts[0].middleCols(spec.context, spec.frame_len);
  const Eigen::Index T = c->centers_ref.rows();

  // Stage 1: reference-channel embedding plus channel-averaged NCC.
  std::vector<Mat> qs(N);
  for (int i = 0; i < N; ++i) qs[i] = feats::ncc_frames(c->centers_ref, c->contexts[i]);
  const Mat qmean = feats::ncc_mean(qs);
  c->enc1.resize(1);
  const Mat r1 = enc1_.forward(c->contexts[0], &c->enc1[0]);
  Mat feat1(T, K + FL);
  feat1 << r1, qmean;

  const std::vector<Mat> out1 = sep1_.forward({feat1}, &c->sep1);
  if (!all_finite(out1[0])) throw NumericError("model: non-finite stage-1 filters");

  c->filters1.h.assign(1, std::vector<Mat>(C));
  for (int j = 0; j < C; ++j) {
    c->filters1.h[0][j] = out1[0].middleCols(static_cast<Eigen::Index>(j) * FL, FL);
  }
  const std::vector<Mat> y1_frames =
      filter_and_sum({c->contexts[0]}, c->filters1, spec.frame_len);

  c->y1.resize(C);
  c->y1_centers.resize(C);
  for (int j = 0; j < C; ++j) {
    c->y1[j] = dsp::overlap_add(y1_frames[j], spec, S);
    c->y1_centers[j] = dsp::frame_signal(c->y1[j], spec).frames;
  }

  // Stage 2: per source, one filter per remaining channel, estimated from
  // that channel's embedding and its NCC against the pre-separation signal.
  c->enc2.resize(N - 1);
  std::vector<Mat> r2(N - 1);
  for (int i = 1; i < N; ++i) {
    r2[i - 1] = enc2_->forward(c->contexts[i], &c->enc2[i - 1]);
  }

  c->sep2.resize(C);
  c->filters2.resize(C);
  std::vector<Vec> estimates(C);
  std::vector<Mat> feat2(N - 1);
  for (int j = 0; j < C; ++j) {
    for (int i = 1; i < N; ++i) {
      const Mat v = feats::ncc_frames(c->y1_centers[j], c->contexts[i]);
      feat2[i - 1].resize(T, K + FL);
      feat2[i - 1] << r2[i - 1], v;
    }
    const std::vector<Mat> out2 = sep2_->forward(feat2, &c->sep2[j]);
    c->filters2[j].h.assign(N - 1, std::vector<Mat>(1));
    for (int i = 1; i < N; ++i) {
      if (!all_finite(out2[i - 1])) throw NumericError("model: non-finite stage-2 filters");
      c->filters2[j].h[i - 1][0] = out2[i - 1];
    }
    std::vector<Mat> remaining(c->contexts.begin() + 1, c->contexts.end());
    const std::vector<Mat> y2_frames =
        filter_and_sum(remaining, c->filters2[j], spec.frame_len);
    estimates[j] = c->y1[j] + dsp::overlap_add(y2_frames[0], spec, S);
  }
  return estimates;
}

std::vector<Vec> FasnetModel::run_single_stage(const MultichannelSignal& x, Cache* c) const {
  const dsp::FrameSpec spec = cfg_.frame_spec();
  const int N = x.num_channels();
  const Eigen::Index S = x.num_samples();
  const int C = cfg_.num_sources;
  const int FL = spec.filter_len();
  const int K = cfg_.encoder_dim;

  c->num_samples = S;
  c->num_channels = N;
  c->contexts.resize(N);
  for (int i = 0; i < N; ++i) {
    c->contexts[i] = dsp::context_frames(x.channels[i], spec).frames;
  }
  c->centers_ref = c->contexts[0].middleCols(spec.context, spec.frame_len);
  const Eigen::Index T = c->centers_ref.rows();

  c->enc1.resize(N);
  std::vector<Mat> feats_in(N);
  for (int i = 0; i < N; ++i) {
    const Mat q = feats::ncc_frames(c->centers_ref, c->contexts[i]);
    const Mat r = enc1_.forward(c->contexts[i], &c->enc1[i]);
    feats_in[i].resize(T, K + FL);
    feats_in[i] << r, q;
  }

  const std::vector<Mat> out = sep1_.forward(feats_in, &c->sep1);
  c->filters1.h.assign(N, std::vector<Mat>(C));
  for (int i = 0; i < N; ++i) {
    if (!all_finite(out[i])) throw NumericError("model: non-finite filters");
    for (int j = 0; j < C; ++j) {
      c->filters1.h[i][j] = out[i].middleCols(static_cast<Eigen::Index>(j) * FL, FL);
    }
  }

  const std::vector<Mat> y_frames = filter_and_sum(c->contexts, c->filters1, spec.frame_len);
  std::vector<Vec> estimates(C);
  for (int j = 0; j < C; ++j) {
    estimates[j] = dsp::overlap_add(y_frames[j], spec, S);
  }
  return estimates;
}

void FasnetModel::backward(const Cache& cache, const std::vector<Vec>& destimates) {
  if (static_cast<int>(destimates.size()) != cfg_.num_sources) {
    throw std::invalid_argument("model backward: source count mismatch");
  }
  if (variant_is_two_stage(cfg_.variant)) {
    backward_two_stage(cache, destimates);
  } else {
    backward_single_stage(cache, destimates);
  }
}

void FasnetModel::backward_two_stage(const Cache& cache, const std::vector<Vec>& destimates) {
  const dsp::FrameSpec spec = cfg_.frame_spec();
  const int N = cache.num_channels;
  const int C = cfg_.num_sources;
  const int FL = spec.filter_len();
  const int K = cfg_.encoder_dim;
  const Eigen::Index T = cache.centers_ref.rows();
  const Eigen::Index S = cache.num_samples;
  const int num_frames = static_cast<int>(T);

  std::vector<Vec> dy1(C);
  std::vector<Mat> dr2(N - 1, Mat::Zero(T, K));
  std::vector<Mat> dh2(N - 1);
  for (int j = 0; j < C; ++j) {
    dy1[j] = destimates[j];  // residual path through Stage 2's sum

    const Mat dy2_frames = dsp::overlap_add_backward(destimates[j], num_frames, spec);
    for (int i = 1; i < N; ++i) {
      dh2[i - 1] = Mat::Zero(T, FL);
      filter_frames_backward(cache.contexts[i], cache.filters2[j].h[i - 1][0], dy2_frames,
                             &dh2[i - 1]);
    }
    const std::vector<Mat> dfeat2 = sep2_->backward(cache.sep2[j], dh2);

    Mat dy1_centers = Mat::Zero(T, spec.frame_len);
    for (int i = 1; i < N; ++i) {
      dr2[i - 1] += dfeat2[i - 1].leftCols(K);
      feats::ncc_frames_backward(cache.y1_centers[j], cache.contexts[i],
                                 dfeat2[i - 1].rightCols(FL), &dy1_centers, nullptr);
    }
    dy1[j] += dsp::frame_signal_backward(dy1_centers, S, spec);
  }
  for (int i = 1; i < N; ++i) {
    enc2_->backward(cache.enc2[i - 1], dr2[i - 1]);
  }

  Mat dout1 = Mat::Zero(T, static_cast<Eigen::Index>(C) * FL);
  for (int j = 0; j < C; ++j) {
    const Mat dy1_frames = dsp::overlap_add_backward(dy1[j], num_frames, spec);
    Mat dh1 = Mat::Zero(T, FL);
    filter_frames_backward(cache.contexts[0], cache.filters1.h[0][j], dy1_frames, &dh1);
    dout1.middleCols(static_cast<Eigen::Index>(j) * FL, FL) = dh1;
  }
  const std::vector<Mat> dfeat1 = sep1_.backward(cache.sep1, {dout1});
  enc1_.backward(cache.enc1[0], dfeat1[0].leftCols(K));
}

void FasnetModel::backward_single_stage(const Cache& cache, const std::vector<Vec>& destimates) {
  const dsp::FrameSpec spec = cfg_.frame_spec();
  const int N = cache.num_channels;
  const int C = cfg_.num_sources;
  const int FL = spec.filter_len();
  const int K = cfg_.encoder_dim;
  const Eigen::Index T = cache.centers_ref.rows();
  const int num_frames = static_cast<int>(T);

  std::vector<Mat> dout(N, Mat::Zero(T, static_cast<Eigen::Index>(C) * FL));
  for (int j = 0; j < C; ++j) {
    const Mat dy_frames = dsp::overlap_add_backward(destimates[j], num_frames, spec);
    for (int i = 0; i < N; ++i) {
      Mat dh = Mat::Zero(T, FL);
      filter_frames_backward(cache.contexts[i], cache.filters1.h[i][j], dy_frames, &dh);
      dout[i].middleCols(static_cast<Eigen::Index>(j) * FL, FL) = dh;
    }
  }
  const std::vector<Mat> dfeat = sep1_.backward(cache.sep1, dout);
  for (int i = 0; i < N; ++i) {
    enc1_.backward(cache.enc1[i], dfeat[i].leftCols(K));
  }
}

std::vector<nn::Param*> FasnetModel::params() {
  std::vector<nn::Param*> out;
  for (nn::Param* p : enc1_.params()) out.push_back(p);
  for (nn::Param* p : sep1_.params()) out.push_back(p);
  if (enc2_) {
    for (nn::Param* p : enc2_->params()) out.push_back(p);
    for (nn::Param* p : sep2_->params()) out.push_back(p);
  }
  return out;
}

}  // namespace model
}  // namespace fasnet

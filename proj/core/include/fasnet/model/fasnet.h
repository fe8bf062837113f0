// core/include/fasnet/model/fasnet.h

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

#ifndef FASNET_MODEL_FASNET_H_
#define FASNET_MODEL_FASNET_H_

#include <memory>
#include <vector>

#include "fasnet/common.h"
#include "fasnet/dsp/framing.h"
#include "fasnet/model/config.h"
#include "fasnet/model/separator.h"
#include "fasnet/nn/layers.h"
#include "fasnet/nn/param.h"

namespace fasnet {
namespace model {

// Per-frame beamforming filters. h[i][j] holds the T x (2W+1) coefficient
// rows for stream i and source j; two-stage stage 1 has a single stream (the
// reference channel), stage 2 one stream per remaining channel.
struct FilterSet {
  std::vector<std::vector<Mat>> h;
};

// y_frames[j](t, :) = sum_i apply_filter(contexts[i].row(t), h[i][j].row(t)).
std::vector<Mat> filter_and_sum(const std::vector<Mat>& contexts, const FilterSet& filters,
                                int frame_len);

// Feature wiring helpers, exposed for direct testing. Context matrices are
// T x (L+2W); the center frame of a context row is columns [W, W+L).
// Two-stage stage 1: [encode(ref context) ; mean over channels of the NCC
// between the reference center frame and each channel's context].
Mat stage1_features(const std::vector<Mat>& contexts, int ref, int frame_len, int context,
                    const Mat& encoder_weights);

// Single-stage: channel i gets [encode(context_i) ; NCC(ref center, context_i)].
std::vector<Mat> single_stage_features(const std::vector<Mat>& contexts, int ref, int frame_len,
                                       int context, const Mat& encoder_weights);

// Filter-and-sum beamformer with learned per-frame filters. The reference
// microphone is input channel 0. Two-stage variants first beamform the
// reference channel into C pre-separation signals, then estimate one filter
// per (remaining channel, source) from features that compare those signals
// against each channel's context; single-stage variants estimate all N x C
// filters jointly from per-channel features. Parameters are shared across
// channels (and across sources in stage 2), so a trained model accepts any
// channel count up to the configured maximum.
class FasnetModel {
 public:
  struct Cache {
    Eigen::Index num_samples = 0;
    int num_channels = 0;
    std::vector<Mat> contexts;            // per channel, T x (L+2W)
    Mat centers_ref;                      // T x L
    std::vector<nn::Linear::Cache> enc1;  // per encoded stream
    SeparatorStack::Cache sep1;
    FilterSet filters1;
    // Two-stage only.
    std::vector<Vec> y1;                    // pre-separation waveforms, per source
    std::vector<Mat> y1_centers;            // per source, T x L
    std::vector<nn::Linear::Cache> enc2;    // per remaining channel
    std::vector<SeparatorStack::Cache> sep2;  // per source
    std::vector<FilterSet> filters2;          // per source; h[i][0] per channel
  };

  FasnetModel(const FasnetConfig& cfg, Rng& rng);

  // Returns C waveforms, each the length of the input. Throws
  // std::invalid_argument on channel-count or sample-rate mismatch and
  // NumericError on non-finite activations.
  std::vector<Vec> forward(const MultichannelSignal& x, Cache* cache = nullptr) const;

  // Accumulates parameter gradients for upstream gradients `destimates`
  // (one per source, same lengths as the forward outputs).
  void backward(const Cache& cache, const std::vector<Vec>& destimates);

  std::vector<nn::Param*> params();
  const FasnetConfig& config() const { return cfg_; }

 private:
  std::vector<Vec> run_two_stage(const MultichannelSignal& x, Cache* cache) const;
  std::vector<Vec> run_single_stage(const MultichannelSignal& x, Cache* cache) const;
  void backward_two_stage(const Cache& cache, const std::vector<Vec>& destimates);
  void backward_single_stage(const Cache& cache, const std::vector<Vec>& destimates);

  FasnetConfig cfg_;
  nn::Linear enc1_;  // (L+2W) -> K, no bias
  SeparatorStack sep1_;
  std::unique_ptr<nn::Linear> enc2_;        // two-stage only
  std::unique_ptr<SeparatorStack> sep2_;    // two-stage only
};

}  // namespace model
}  // namespace fasnet

#endif  // FASNET_MODEL_FASNET_H_

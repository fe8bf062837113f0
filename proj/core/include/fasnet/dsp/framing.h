// core/include/fasnet/dsp/framing.h

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

#ifndef FASNET_DSP_FRAMING_H_
#define FASNET_DSP_FRAMING_H_

#include "fasnet/common.h"

namespace fasnet {
namespace dsp {

/// Time-domain framing parameters. A frame holds `frame_len` samples, frames
/// advance by `hop`, and a context frame extends the center frame by
/// `context` samples on both sides (total frame_len + 2*context).
struct FrameSpec {
  int frame_len = 0;   // L
  int hop = 0;         // H, 1 <= H <= L
  int context = 0;     // W
  double sample_rate = 16000.0;

  int context_len() const { return frame_len + 2 * context; }
  int filter_len() const { return 2 * context + 1; }

  /// Throws std::invalid_argument unless L >= 1, W >= 0, 1 <= H <= L.
  void validate() const;
};

/// T x L center frames of one channel; frame t starts at sample t*hop of the
/// zero-padded signal.
struct FrameSequence {
  Mat frames;  // T x L
  FrameSpec spec;

  int num_frames() const { return static_cast<int>(frames.rows()); }
};

/// T x (L+2W) context frames; the center L samples of row t equal row t of
/// the corresponding FrameSequence.
struct ContextFrames {
  Mat frames;  // T x (L+2W)
  FrameSpec spec;

  int num_frames() const { return static_cast<int>(frames.rows()); }
};

/// Splits x into T = ceil(len/hop) frames of frame_len samples, zero-padding
/// the tail so every frame is complete.
FrameSequence frame_signal(const Vec& x, const FrameSpec& spec);

/// Context frame t spans samples [t*hop - context, t*hop + frame_len +
/// context - 1]; out-of-range samples are zero.
ContextFrames context_frames(const Vec& x, const FrameSpec& spec);

/// Number of frames frame_signal produces for a signal of length `len`.
int num_frames_for_length(Eigen::Index len, const FrameSpec& spec);

/// Sliding product in correlation orientation (no kernel flip):
/// out[n] = sum_k filter[k] * context[n + k], n = 0..L-1.
Vec apply_filter(const Vec& context, const Vec& filter, int frame_len);

/// Gradients of apply_filter: given d(out), accumulates into d(context) and
/// d(filter). Buffers must be pre-sized (context_len and filter_len).
void apply_filter_backward(const Vec& context, const Vec& filter,
                           const Vec& dout, Vec* dcontext, Vec* dfilter);

/// Coverage-normalized overlap-add: y[n] = sum_t frames(t, n - t*hop) /
/// coverage(n). Returns (T-1)*hop + frame_len samples unless out_len >= 0,
/// in which case the result is truncated or zero-extended to out_len.
Vec overlap_add(const Mat& frames, const FrameSpec& spec,
                Eigen::Index out_len = -1);

/// Adjoint of overlap_add wrt the frame matrix, for a gradient dy of length
/// out_len (same truncation convention as the forward).
Mat overlap_add_backward(const Vec& dy, int num_frames, const FrameSpec& spec);

/// Adjoint of frame_signal: scatters frame gradients back onto a signal of
/// length `signal_len`.
Vec frame_signal_backward(const Mat& dframes, Eigen::Index signal_len,
                          const FrameSpec& spec);

/// Adjoint of context_frames.
Vec context_frames_backward(const Mat& dframes, Eigen::Index signal_len,
                            const FrameSpec& spec);

}  // namespace dsp
}  // namespace fasnet

#endif  // FASNET_DSP_FRAMING_H_

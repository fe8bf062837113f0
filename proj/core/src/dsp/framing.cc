// core/src/dsp/framing.cc

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

#include "fasnet/dsp/framing.h"

#include <algorithm>
#include <stdexcept>

namespace fasnet {
namespace dsp {

void FrameSpec::validate() const {
  if (frame_len < 1) {
    throw std::invalid_argument("FrameSpec: frame_len must be >= 1");
  }
  if (context < 0) {
    throw std::invalid_argument("FrameSpec: context must be >= 0");
  }
  if (hop < 1 || hop > frame_len) {
    throw std::invalid_argument("FrameSpec: hop must satisfy 1 <= hop <= frame_len");
  }
  if (sample_rate <= 0.0) {
    throw std::invalid_argument("FrameSpec: sample_rate must be positive");
  }
}

int num_frames_for_length(Eigen::Index len, const FrameSpec& spec) {
  return static_cast<int>((len + spec.hop - 1) / spec.hop);
}

FrameSequence frame_signal(const Vec& x, const FrameSpec& spec) {
  spec.validate();
  if (x.size() == 0) {
    throw std::invalid_argument("frame_signal: empty signal");
  }
  const int num_frames = num_frames_for_length(x.size(), spec);
  Mat frames = Mat::Zero(num_frames, spec.frame_len);
  for (int t = 0; t < num_frames; ++t) {
    const Eigen::Index start = static_cast<Eigen::Index>(t) * spec.hop;
    const Eigen::Index avail = std::min<Eigen::Index>(spec.frame_len, x.size() - start);
    if (avail > 0) {
      frames.row(t).head(avail) = x.segment(start, avail).transpose();
    }
  }
  return FrameSequence{std::move(frames), spec};
}

ContextFrames context_frames(const Vec& x, const FrameSpec& spec) {
  spec.validate();
  if (x.size() == 0) {
    throw std::invalid_argument("context_frames: empty signal");
  }
  const int num_frames = num_frames_for_length(x.size(), spec);
  const int clen = spec.context_len();
  Mat frames = Mat::Zero(num_frames, clen);
  for (int t = 0; t < num_frames; ++t) {
    const Eigen::Index start = static_cast<Eigen::Index>(t) * spec.hop - spec.context;
    const Eigen::Index lo = std::max<Eigen::Index>(start, 0);
    const Eigen::Index hi = std::min<Eigen::Index>(start + clen, x.size());
    if (hi > lo) {
      frames.row(t).segment(lo - start, hi - lo) = x.segment(lo, hi - lo).transpose();
    }
  }
  return ContextFrames{std::move(frames), spec};
}

Vec apply_filter(const Vec& context, const Vec& filter, int frame_len) {
  const Eigen::Index taps = filter.size();
  if (context.size() != frame_len + taps - 1) {
    throw std::invalid_argument("apply_filter: context/filter length mismatch");
  }
  Vec out(frame_len);
  for (int n = 0; n < frame_len; ++n) {
    out[n] = context.segment(n, taps).dot(filter);
  }
  return out;
}

void apply_filter_backward(const Vec& context, const Vec& filter,
                           const Vec& dout, Vec* dcontext, Vec* dfilter) {
  const Eigen::Index taps = filter.size();
  const Eigen::Index frame_len = dout.size();
  if (context.size() != frame_len + taps - 1) {
    throw std::invalid_argument("apply_filter_backward: length mismatch");
  }
  for (Eigen::Index n = 0; n < frame_len; ++n) {
    const double g = dout[n];
    if (dcontext != nullptr) dcontext->segment(n, taps) += g * filter;
    if (dfilter != nullptr) *dfilter += g * context.segment(n, taps);
  }
}

namespace {

// Contribution count per output sample for T frames of length L at hop H.
Eigen::VectorXi coverage_counts(int num_frames, const FrameSpec& spec) {
  const Eigen::Index full =
      static_cast<Eigen::Index>(num_frames - 1) * spec.hop + spec.frame_len;
  Eigen::VectorXi cov = Eigen::VectorXi::Zero(full);
  for (int t = 0; t < num_frames; ++t) {
    cov.segment(static_cast<Eigen::Index>(t) * spec.hop, spec.frame_len).array() += 1;
  }
  return cov;
}

}  // namespace

Vec overlap_add(const Mat& frames, const FrameSpec& spec, Eigen::Index out_len) {
  spec.validate();
  const int num_frames = static_cast<int>(frames.rows());
  if (num_frames == 0) {
    throw std::invalid_argument("overlap_add: empty frame set");
  }
  if (frames.cols() != spec.frame_len) {
    throw std::invalid_argument("overlap_add: frame length mismatch");
  }
  const Eigen::Index full =
      static_cast<Eigen::Index>(num_frames - 1) * spec.hop + spec.frame_len;
  Vec y = Vec::Zero(full);
  for (int t = 0; t < num_frames; ++t) {
    y.segment(static_cast<Eigen::Index>(t) * spec.hop, spec.frame_len) +=
        frames.row(t).transpose();
  }
  const Eigen::VectorXi cov = coverage_counts(num_frames, spec);
  for (Eigen::Index n = 0; n < full; ++n) {
    y[n] /= static_cast<double>(cov[n]);
  }
  if (out_len < 0 || out_len == full) return y;
  Vec out = Vec::Zero(out_len);
  out.head(std::min(out_len, full)) = y.head(std::min(out_len, full));
  return out;
}

Mat overlap_add_backward(const Vec& dy, int num_frames, const FrameSpec& spec) {
  const Eigen::Index full =
      static_cast<Eigen::Index>(num_frames - 1) * spec.hop + spec.frame_len;
  const Eigen::VectorXi cov = coverage_counts(num_frames, spec);
  Mat dframes = Mat::Zero(num_frames, spec.frame_len);
  for (int t = 0; t < num_frames; ++t) {
    for (int m = 0; m < spec.frame_len; ++m) {
      const Eigen::Index n = static_cast<Eigen::Index>(t) * spec.hop + m;
      if (n < dy.size() && n < full) {
        dframes(t, m) = dy[n] / static_cast<double>(cov[n]);
      }
    }
  }
  return dframes;
}

Vec frame_signal_backward(const Mat& dframes, Eigen::Index signal_len,
                          const FrameSpec& spec) {
  Vec dx = Vec::Zero(signal_len);
  const int num_frames = static_cast<int>(dframes.rows());
  for (int t = 0; t < num_frames; ++t) {
    const Eigen::Index start = static_cast<Eigen::Index>(t) * spec.hop;
    const Eigen::Index avail = std::min<Eigen::Index>(spec.frame_len, signal_len - start);
    if (avail > 0) {
      dx.segment(start, avail) += dframes.row(t).head(avail).transpose();
    }
  }
  return dx;
}

Vec context_frames_backward(const Mat& dframes, Eigen::Index signal_len,
                            const FrameSpec& spec) {
  Vec dx = Vec::Zero(signal_len);
  const int num_frames = static_cast<int>(dframes.rows());
  const int clen = spec.context_len();
  for (int t = 0; t < num_frames; ++t) {
    const Eigen::Index start = static_cast<Eigen::Index>(t) * spec.hop - spec.context;
    const Eigen::Index lo = std::max<Eigen::Index>(start, 0);
    const Eigen::Index hi = std::min<Eigen::Index>(start + clen, signal_len);
    if (hi > lo) {
      dx.segment(lo, hi - lo) += dframes.row(t).segment(lo - start, hi - lo).transpose();
    }
  }
  return dx;
}

}  // namespace dsp
}  // namespace fasnet

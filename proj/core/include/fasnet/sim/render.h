// core/include/fasnet/sim/render.h

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

#ifndef FASNET_SIM_RENDER_H_
#define FASNET_SIM_RENDER_H_

#include <vector>

#include "fasnet/common.h"
#include "fasnet/sim/scene.h"

namespace fasnet {
namespace sim {

// Full linear convolution, length a.size() + b.size() - 1, computed with
// zero-padded real FFTs. Deterministic for fixed inputs.
Vec fft_convolve(const Vec& a, const Vec& b);

struct RenderedScene {
  MultichannelSignal mixture;
  std::vector<MultichannelSignal> targets;  // reverberant per-speaker images
  MultichannelSignal noise;                 // reverberant noise image
  Vec placed_speech[2];                     // dry, shifted and scaled
  Vec placed_noise;                         // dry, looped and scaled
};

// Places speaker 1 at the start and speaker 2 at the end of a
// `total_samples` span so that, for equal-length inputs of
// total*(1+overlap)/2 samples, the overlapped fraction equals
// spec.overlap_ratio. Speaker 2 is rescaled so speaker 1 is louder by
// spec.speech_snr_db (powers over each dry signal's own extent); noise is
// loop-repeated to the full span and scaled so summed dry speech over dry
// noise matches spec.noise_snr_db. Every placed source is convolved with its
// image-method response to every microphone; per channel the mixture is
// (target1 + target2) + noise in exactly that order.
RenderedScene render_scene(const SceneSpec& spec, const Vec& speech1, const Vec& speech2,
                           const Vec& noise, double fs, Eigen::Index total_samples);

// Span length for both speakers under the end-anchored placement above.
Eigen::Index speech_span_samples(double overlap_ratio, Eigen::Index total_samples);

}  // namespace sim
}  // namespace fasnet

#endif  // FASNET_SIM_RENDER_H_

// core/include/fasnet/sim/synth.h

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

#ifndef FASNET_SIM_SYNTH_H_
#define FASNET_SIM_SYNTH_H_

#include "fasnet/common.h"

namespace fasnet {
namespace sim {

// Synthetic stand-in for a speech utterance: white noise shaped by a few
// random resonators inside [f_lo, f_hi] Hz, amplitude-modulated at a
// syllable-like rate, RMS-normalized to 1. Distinct bands for distinct
// speakers give the separator a learnable cue at desk scale.
Vec synth_speech_burst(Rng& rng, Eigen::Index num_samples, double fs, double f_lo, double f_hi);

// Broadband noise with a gentle low-pass tilt, RMS-normalized to 1.
Vec synth_noise(Rng& rng, Eigen::Index num_samples, double fs);

}  // namespace sim
}  // namespace fasnet

#endif  // FASNET_SIM_SYNTH_H_

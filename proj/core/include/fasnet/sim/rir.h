// core/include/fasnet/sim/rir.h

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

#ifndef FASNET_SIM_RIR_H_
#define FASNET_SIM_RIR_H_

#include <Eigen/Dense>

#include "fasnet/common.h"

namespace fasnet {
namespace sim {

constexpr double kSpeedOfSound = 343.0;  // m/s

struct RoomSpec {
  double length = 0.0;  // x extent, m
  double width = 0.0;   // y extent, m
  double height = 0.0;  // z extent, m
  double t60 = 0.0;     // s
};

// Uniform-absorption Sabine inversion: alpha = 0.161 V / (T60 S), beta =
// sqrt(1 - alpha). Alpha is clamped to 0.98 because short T60 in a large
// room demands more absorption than walls can provide; the clamp keeps beta
// real at the cost of a longer-than-requested tail there.
double beta_from_t60(const RoomSpec& room);

// Shoebox image-method impulse response with reflection coefficient `beta`
// on all six surfaces. Each image contributes amplitude
// (-beta)^reflections / (4 pi d) at the nearest-sample tap round(d / c * fs).
// The alternating sign keeps same-tap images from piling up coherently,
// which would otherwise flatten the late decay at low sample rates.
Vec generate_rir_beta(double room_x, double room_y, double room_z, double beta,
                      const Eigen::Vector3d& src, const Eigen::Vector3d& mic, double fs,
                      int num_taps);

// As above with beta derived from the room's T60.
Vec generate_rir(const RoomSpec& room, const Eigen::Vector3d& src, const Eigen::Vector3d& mic,
                 double fs, int num_taps);

// T60 from Schroeder backward integration of the energy decay curve, fitted
// by least squares over the -5 dB to -25 dB span. Throws std::runtime_error
// when the response is too short to cover that span.
double estimate_t60_schroeder(const Vec& rir, double fs);

}  // namespace sim
}  // namespace fasnet

#endif  // FASNET_SIM_RIR_H_

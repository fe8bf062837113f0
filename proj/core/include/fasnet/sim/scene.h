// core/include/fasnet/sim/scene.h

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

#ifndef FASNET_SIM_SCENE_H_
#define FASNET_SIM_SCENE_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fasnet/common.h"
#include "fasnet/sim/rir.h"

namespace fasnet {
namespace sim {

enum class Geometry { kAdhoc, kCircular6 };

std::string to_string(Geometry g);
Geometry geometry_from_string(const std::string& s);

constexpr double kWallMargin = 0.5;        // m, all placed points
constexpr double kArrayDiameter = 0.10;    // m, circular array
constexpr int kCircularMics = 6;

struct SceneSpec {
  RoomSpec room;
  Geometry geometry = Geometry::kAdhoc;
  std::vector<Eigen::Vector3d> mic_positions;
  std::vector<Eigen::Vector3d> source_positions;  // two speakers
  Eigen::Vector3d noise_position = Eigen::Vector3d::Zero();
  double overlap_ratio = 0.0;   // overlapped span / total span, [0, 1]
  double speech_snr_db = 0.0;   // speaker 1 over speaker 2, [0, 5]
  double noise_snr_db = 0.0;    // summed speech over noise, [10, 20]
};

// Draws every field from its range: room 3-10 m x 3-10 m, height 2.5-4 m,
// T60 0.1-0.5 s; positions uniform with the 0.5 m wall margin (ad-hoc mics
// independently; circular6 as a 6-mic horizontal circle of 10 cm diameter
// around a sampled center, speakers placed at the array height so that their
// angular separation seen from the center is itself uniform on [0, 180]
// degrees); overlap uniform on [0, 1]; SNRs uniform on their dB ranges.
// n_mics is ignored for circular6 (always 6).
SceneSpec sample_scene(Rng& rng, Geometry geometry, int n_mics);

// Angle in degrees between the two speaker directions seen from the mean
// microphone position. Circular6 scenes only.
double speaker_angle(const SceneSpec& spec);

// Reporting buckets: overlap <25% / 25-50% / 50-75% / >75%, and speaker
// angle <15, 15-45, 45-90, >90 degrees.
int overlap_bucket(double ratio);
int angle_bucket(double degrees);
extern const char* const kOverlapBucketNames[4];
extern const char* const kAngleBucketNames[4];

}  // namespace sim
}  // namespace fasnet

#endif  // FASNET_SIM_SCENE_H_

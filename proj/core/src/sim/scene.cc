// core/src/sim/scene.cc

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

#include "fasnet/sim/scene.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fasnet {
namespace sim {

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::Vector3d sample_point(Rng& rng, const RoomSpec& room, double margin) {
  const double x = uniform_range(rng, margin, room.length - margin);
  const double y = uniform_range(rng, margin, room.width - margin);
  const double z = uniform_range(rng, margin, room.height - margin);
  return {x, y, z};
}

// Distance from `center` along direction (cos a, sin a, 0) to the margin
// box, so sampled speaker radii stay inside the room.
double max_radius(const Eigen::Vector3d& center, double azimuth, const RoomSpec& room) {
  const double cx = std::cos(azimuth);
  const double sx = std::sin(azimuth);
  double r = std::numeric_limits<double>::infinity();
  if (cx > 0) r = std::min(r, (room.length - kWallMargin - center.x()) / cx);
  if (cx < 0) r = std::min(r, (kWallMargin - center.x()) / cx);
  if (sx > 0) r = std::min(r, (room.width - kWallMargin - center.y()) / sx);
  if (sx < 0) r = std::min(r, (kWallMargin - center.y()) / sx);
  return r;
}

}  // namespace

const char* const kOverlapBucketNames[4] = {"lt25", "25to50", "50to75", "gt75"};
const char* const kAngleBucketNames[4] = {"lt15", "15to45", "45to90", "gt90"};

std::string to_string(Geometry g) {
  return g == Geometry::kAdhoc ? "adhoc" : "circular6";
}

Geometry geometry_from_string(const std::string& s) {
  if (s == "adhoc") return Geometry::kAdhoc;
  if (s == "circular6") return Geometry::kCircular6;
  throw std::invalid_argument("scene: unknown geometry '" + s + "'");
}

SceneSpec sample_scene(Rng& rng, Geometry geometry, int n_mics) {
  if (geometry == Geometry::kAdhoc && (n_mics < 2 || n_mics > 6)) {
    throw std::invalid_argument("scene: ad-hoc mic count must be in [2, 6]");
  }

  SceneSpec spec;
  spec.geometry = geometry;
  spec.room.length = uniform_range(rng, 3.0, 10.0);
  spec.room.width = uniform_range(rng, 3.0, 10.0);
  spec.room.height = uniform_range(rng, 2.5, 4.0);
  spec.room.t60 = uniform_range(rng, 0.1, 0.5);

  if (geometry == Geometry::kAdhoc) {
    for (int i = 0; i < n_mics; ++i) {
      spec.mic_positions.push_back(sample_point(rng, spec.room, kWallMargin));
    }
    spec.source_positions.push_back(sample_point(rng, spec.room, kWallMargin));
    spec.source_positions.push_back(sample_point(rng, spec.room, kWallMargin));
  } else {
    const double radius = kArrayDiameter / 2.0;
    const Eigen::Vector3d center = sample_point(rng, spec.room, kWallMargin + radius);
    for (int k = 0; k < kCircularMics; ++k) {
      const double a = 2.0 * kPi * k / kCircularMics;
      spec.mic_positions.emplace_back(center.x() + radius * std::cos(a),
                                      center.y() + radius * std::sin(a), center.z());
    }
    // Speakers sit at the array height so the 3-D angle between their
    // directions equals the sampled azimuth difference.
    const double azimuth1 = uniform_range(rng, 0.0, 2.0 * kPi);
    const double separation = uniform_range(rng, 0.0, kPi);
    const double azimuth2 = std::fmod(azimuth1 + separation, 2.0 * kPi);
    for (const double az : {azimuth1, azimuth2}) {
      const double rmax = max_radius(center, az, spec.room);
      if (rmax <= 0.0) {
        throw std::runtime_error("scene: no room for a speaker along the sampled azimuth");
      }
      const double r = uniform_range(rng, 0.2 * rmax, rmax);
      spec.source_positions.emplace_back(center.x() + r * std::cos(az),
                                         center.y() + r * std::sin(az), center.z());
    }
  }
  spec.noise_position = sample_point(rng, spec.room, kWallMargin);
  spec.overlap_ratio = uniform_range(rng, 0.0, 1.0);
  spec.speech_snr_db = uniform_range(rng, 0.0, 5.0);
  spec.noise_snr_db = uniform_range(rng, 10.0, 20.0);
  return spec;
}

double speaker_angle(const SceneSpec& spec) {
  if (spec.geometry != Geometry::kCircular6) {
    throw std::invalid_argument("speaker_angle: circular6 geometry required");
  }
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  for (const auto& m : spec.mic_positions) center += m;
  center /= static_cast<double>(spec.mic_positions.size());
  const Eigen::Vector3d d1 = (spec.source_positions[0] - center).normalized();
  const Eigen::Vector3d d2 = (spec.source_positions[1] - center).normalized();
  const double c = std::clamp(d1.dot(d2), -1.0, 1.0);
  return std::acos(c) * 180.0 / kPi;
}

int overlap_bucket(double ratio) {
  if (ratio < 0.25) return 0;
  if (ratio < 0.50) return 1;
  if (ratio < 0.75) return 2;
  return 3;
}

int angle_bucket(double degrees) {
  if (degrees < 15.0) return 0;
  if (degrees < 45.0) return 1;
  if (degrees < 90.0) return 2;
  return 3;
}

}  // namespace sim
}  // namespace fasnet

// core/src/sim/rir.cc

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

#include "fasnet/sim/rir.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fasnet {
namespace sim {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMaxAlpha = 0.98;

void check_inside(const char* what, const Eigen::Vector3d& p, double lx, double ly, double lz) {
  if (p.x() <= 0.0 || p.x() >= lx || p.y() <= 0.0 || p.y() >= ly || p.z() <= 0.0 ||
      p.z() >= lz) {
    throw std::invalid_argument(std::string("rir: ") + what + " outside room");
  }
}

}  // namespace

double beta_from_t60(const RoomSpec& room) {
  if (room.t60 <= 0.0) throw std::invalid_argument("rir: t60 must be positive");
  if (room.length <= 0.0 || room.width <= 0.0 || room.height <= 0.0) {
    throw std::invalid_argument("rir: room dimensions must be positive");
  }
  const double volume = room.length * room.width * room.height;
  const double surface = 2.0 * (room.length * room.width + room.length * room.height +
                                room.width * room.height);
  double alpha = 0.161 * volume / (room.t60 * surface);
  if (alpha > kMaxAlpha) alpha = kMaxAlpha;
  return std::sqrt(1.0 - alpha);
}

Vec generate_rir_beta(double room_x, double room_y, double room_z, double beta,
                      const Eigen::Vector3d& src, const Eigen::Vector3d& mic, double fs,
                      int num_taps) {
  if (num_taps < 1) throw std::invalid_argument("rir: num_taps must be >= 1");
  if (beta < 0.0 || beta >= 1.0) throw std::invalid_argument("rir: beta must be in [0, 1)");
  check_inside("source", src, room_x, room_y, room_z);
  check_inside("microphone", mic, room_x, room_y, room_z);
  if ((src - mic).norm() == 0.0) {
    throw std::invalid_argument("rir: source and microphone coincide");
  }

  // Beyond these grid bounds every image is farther than the response length.
  const double max_dist = static_cast<double>(num_taps) * kSpeedOfSound / fs;
  const int nx = static_cast<int>(std::ceil(max_dist / (2.0 * room_x)));
  const int ny = static_cast<int>(std::ceil(max_dist / (2.0 * room_y)));
  const int nz = static_cast<int>(std::ceil(max_dist / (2.0 * room_z)));

  Vec h = Vec::Zero(num_taps);
  for (int qx = 0; qx <= 1; ++qx) {
    for (int mx = -nx; mx <= nx; ++mx) {
      const double ix = (1 - 2 * qx) * src.x() + 2.0 * mx * room_x;
      const int refl_x = std::abs(mx - qx) + std::abs(mx);
      for (int qy = 0; qy <= 1; ++qy) {
        for (int my = -ny; my <= ny; ++my) {
          const double iy = (1 - 2 * qy) * src.y() + 2.0 * my * room_y;
          const int refl_y = std::abs(my - qy) + std::abs(my);
          for (int qz = 0; qz <= 1; ++qz) {
            for (int mz = -nz; mz <= nz; ++mz) {
              const double iz = (1 - 2 * qz) * src.z() + 2.0 * mz * room_z;
              const int refl = refl_x + refl_y + std::abs(mz - qz) + std::abs(mz);
              const double dx = ix - mic.x();
              const double dy = iy - mic.y();
              const double dz = iz - mic.z();
              const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
              const Eigen::Index tap =
                  static_cast<Eigen::Index>(std::lround(d / kSpeedOfSound * fs));
              if (tap >= num_taps) continue;
              const double sign = refl % 2 == 0 ? 1.0 : -1.0;
              h[tap] += sign * std::pow(beta, refl) / (4.0 * kPi * d);
            }
          }
        }
      }
    }
  }
  return h;
}

Vec generate_rir(const RoomSpec& room, const Eigen::Vector3d& src, const Eigen::Vector3d& mic,
                 double fs, int num_taps) {
  return generate_rir_beta(room.length, room.width, room.height, beta_from_t60(room), src, mic,
                           fs, num_taps);
}

double estimate_t60_schroeder(const Vec& rir, double fs) {
  const Eigen::Index n = rir.size();
  if (n < 2) throw std::runtime_error("schroeder: response too short");

  // Backward-integrated energy, normalized to 0 dB at the start.
  Vec edc(n);
  double acc = 0.0;
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    acc += rir[i] * rir[i];
    edc[i] = acc;
  }
  if (edc[0] <= 0.0) throw std::runtime_error("schroeder: zero-energy response");

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  Eigen::Index count = 0;
  double min_db = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double db = 10.0 * std::log10(edc[i] / edc[0]);
    min_db = std::min(min_db, db);
    if (db > -5.0 || db < -25.0) continue;
    const double t = static_cast<double>(i) / fs;
    sx += t;
    sy += db;
    sxx += t * t;
    sxy += t * db;
    ++count;
  }
  if (count < 2 || min_db > -25.0) {
    throw std::runtime_error("schroeder: decay range not covered");
  }
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) throw std::runtime_error("schroeder: degenerate fit");
  const double slope = (count * sxy - sx * sy) / denom;  // dB per second
  if (slope >= 0.0) throw std::runtime_error("schroeder: non-decaying response");
  return -60.0 / slope;
}

}  // namespace sim
}  // namespace fasnet

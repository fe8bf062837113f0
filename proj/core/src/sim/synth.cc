// core/src/sim/synth.cc

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

#include "fasnet/sim/synth.h"

#include <cmath>
#include <stdexcept>

namespace fasnet {
namespace sim {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Second-order resonator (constant peak-gain biquad) applied in place.
void resonate(Vec* x, double freq, double bandwidth, double fs) {
  const double r = std::exp(-kPi * bandwidth / fs);
  const double theta = 2.0 * kPi * freq / fs;
  const double a1 = -2.0 * r * std::cos(theta);
  const double a2 = r * r;
  const double gain = (1.0 - r) * std::sqrt(1.0 - 2.0 * r * std::cos(2.0 * theta) + r * r);
  double y1 = 0.0, y2 = 0.0;
  for (Eigen::Index n = 0; n < x->size(); ++n) {
    const double y = gain * (*x)[n] - a1 * y1 - a2 * y2;
    y2 = y1;
    y1 = y;
    (*x)[n] = y;
  }
}

void normalize_rms(Vec* x) {
  const double rms = std::sqrt(x->squaredNorm() / static_cast<double>(x->size()));
  if (rms <= 0.0) throw std::runtime_error("synth: zero-power draw");
  *x /= rms;
}

}  // namespace

Vec synth_speech_burst(Rng& rng, Eigen::Index num_samples, double fs, double f_lo, double f_hi) {
  if (num_samples < 1) throw std::invalid_argument("synth: num_samples must be >= 1");
  if (!(0.0 < f_lo && f_lo < f_hi && f_hi < fs / 2.0)) {
    throw std::invalid_argument("synth: band must satisfy 0 < f_lo < f_hi < fs/2");
  }

  Vec x(num_samples);
  for (Eigen::Index n = 0; n < num_samples; ++n) x[n] = normal_double(rng);

  Vec shaped = Vec::Zero(num_samples);
  const int num_resonators = 3;
  for (int k = 0; k < num_resonators; ++k) {
    const double freq = uniform_range(rng, f_lo, f_hi);
    const double bandwidth = uniform_range(rng, 30.0, 80.0);
    Vec band = x;
    resonate(&band, freq, bandwidth, fs);
    shaped += band;
  }

  // Syllable-like amplitude modulation: raised cosine at 2-5 Hz with a
  // random phase, floored so the signal never fully gates out.
  const double rate = uniform_range(rng, 2.0, 5.0);
  const double phase = uniform_range(rng, 0.0, 2.0 * kPi);
  for (Eigen::Index n = 0; n < num_samples; ++n) {
    const double env =
        0.15 + 0.85 * 0.5 * (1.0 + std::cos(2.0 * kPi * rate * n / fs + phase));
    shaped[n] *= env;
  }
  normalize_rms(&shaped);
  return shaped;
}

Vec synth_noise(Rng& rng, Eigen::Index num_samples, double fs) {
  if (num_samples < 1) throw std::invalid_argument("synth: num_samples must be >= 1");
  Vec x(num_samples);
  for (Eigen::Index n = 0; n < num_samples; ++n) x[n] = normal_double(rng);

  // One-pole low-pass tilt toward low frequencies.
  const double cutoff = 800.0;
  const double a = std::exp(-2.0 * kPi * cutoff / fs);
  double y1 = 0.0;
  for (Eigen::Index n = 0; n < num_samples; ++n) {
    y1 = (1.0 - a) * x[n] + a * y1;
    x[n] = y1;
  }
  normalize_rms(&x);
  return x;
}

}  // namespace sim
}  // namespace fasnet

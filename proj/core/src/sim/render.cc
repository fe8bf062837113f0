// core/src/sim/render.cc

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

#include "fasnet/sim/render.h"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace fasnet {
namespace sim {

namespace {

// FFTW plan creation and destruction are not thread-safe; execution is.
std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

size_t next_pow2(size_t n) {
  size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

double mean_power(const Vec& x) {
  return x.squaredNorm() / static_cast<double>(x.size());
}

}  // namespace

Vec fft_convolve(const Vec& a, const Vec& b) {
  if (a.size() < 1 || b.size() < 1) throw std::invalid_argument("convolve: empty input");
  const size_t out_len = static_cast<size_t>(a.size() + b.size() - 1);
  const size_t m = next_pow2(out_len);
  const size_t mc = m / 2 + 1;

  double* ta = static_cast<double*>(fftw_malloc(m * sizeof(double)));
  double* tb = static_cast<double*>(fftw_malloc(m * sizeof(double)));
  fftw_complex* fa = static_cast<fftw_complex*>(fftw_malloc(mc * sizeof(fftw_complex)));
  fftw_complex* fb = static_cast<fftw_complex*>(fftw_malloc(mc * sizeof(fftw_complex)));
  if (!ta || !tb || !fa || !fb) throw std::bad_alloc();

  for (size_t i = 0; i < m; ++i) {
    ta[i] = i < static_cast<size_t>(a.size()) ? a[static_cast<Eigen::Index>(i)] : 0.0;
    tb[i] = i < static_cast<size_t>(b.size()) ? b[static_cast<Eigen::Index>(i)] : 0.0;
  }

  fftw_plan fwd_a, fwd_b, inv;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fwd_a = fftw_plan_dft_r2c_1d(static_cast<int>(m), ta, fa, FFTW_ESTIMATE);
    fwd_b = fftw_plan_dft_r2c_1d(static_cast<int>(m), tb, fb, FFTW_ESTIMATE);
    inv = fftw_plan_dft_c2r_1d(static_cast<int>(m), fa, ta, FFTW_ESTIMATE);
  }
  fftw_execute(fwd_a);
  fftw_execute(fwd_b);
  for (size_t i = 0; i < mc; ++i) {
    const double re = fa[i][0] * fb[i][0] - fa[i][1] * fb[i][1];
    const double im = fa[i][0] * fb[i][1] + fa[i][1] * fb[i][0];
    fa[i][0] = re;
    fa[i][1] = im;
  }
  fftw_execute(inv);

  Vec out(static_cast<Eigen::Index>(out_len));
  const double scale = 1.0 / static_cast<double>(m);
  for (size_t i = 0; i < out_len; ++i) out[static_cast<Eigen::Index>(i)] = ta[i] * scale;

  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_destroy_plan(fwd_a);
    fftw_destroy_plan(fwd_b);
    fftw_destroy_plan(inv);
  }
  fftw_free(ta);
  fftw_free(tb);
  fftw_free(fa);
  fftw_free(fb);
  return out;
}

Eigen::Index speech_span_samples(double overlap_ratio, Eigen::Index total_samples) {
  if (overlap_ratio < 0.0 || overlap_ratio > 1.0) {
    throw std::invalid_argument("render: overlap ratio must be in [0, 1]");
  }
  return static_cast<Eigen::Index>(
      std::llround(static_cast<double>(total_samples) * (1.0 + overlap_ratio) / 2.0));
}

RenderedScene render_scene(const SceneSpec& spec, const Vec& speech1, const Vec& speech2,
                           const Vec& noise, double fs, Eigen::Index total_samples) {
  if (fs <= 0.0) throw std::invalid_argument("render: sample rate must be positive");
  if (total_samples < 1) throw std::invalid_argument("render: empty span");
  if (speech1.size() > total_samples || speech2.size() > total_samples) {
    throw std::invalid_argument("render: speech longer than the mixture span");
  }
  if (speech1.size() < 1 || speech2.size() < 1 || noise.size() < 1) {
    throw std::invalid_argument("render: empty source");
  }
  if (spec.source_positions.size() != 2 || spec.mic_positions.empty()) {
    throw std::invalid_argument("render: scene needs two sources and at least one mic");
  }
  const double p1 = mean_power(speech1);
  const double p2 = mean_power(speech2);
  const double pn = mean_power(noise);
  if (p1 <= 0.0 || p2 <= 0.0 || pn <= 0.0) {
    throw std::invalid_argument("render: zero-power source");
  }

  RenderedScene out;
  // Speaker 1 opens the utterance, speaker 2 closes it; speaker 2 is scaled
  // for the sampled relative level.
  out.placed_speech[0] = Vec::Zero(total_samples);
  out.placed_speech[0].head(speech1.size()) = speech1;
  const double gain2 = std::sqrt(p1 / (p2 * std::pow(10.0, spec.speech_snr_db / 10.0)));
  out.placed_speech[1] = Vec::Zero(total_samples);
  out.placed_speech[1].tail(speech2.size()) = gain2 * speech2;

  Vec looped(total_samples);
  for (Eigen::Index n = 0; n < total_samples; ++n) looped[n] = noise[n % noise.size()];
  const double p_speech = mean_power(out.placed_speech[0] + out.placed_speech[1]);
  const double gain_n =
      std::sqrt(p_speech / (mean_power(looped) * std::pow(10.0, spec.noise_snr_db / 10.0)));
  out.placed_noise = gain_n * looped;

  const int num_taps = static_cast<int>(std::ceil((spec.room.t60 + 0.05) * fs));
  const int n_mics = static_cast<int>(spec.mic_positions.size());

  out.targets.assign(2, MultichannelSignal{});
  out.noise.channels.clear();
  out.mixture.channels.clear();
  out.mixture.sample_rate = fs;
  out.noise.sample_rate = fs;
  for (int j = 0; j < 2; ++j) out.targets[j].sample_rate = fs;

  for (int m = 0; m < n_mics; ++m) {
    Vec per_source[2];
    for (int j = 0; j < 2; ++j) {
      const Vec rir =
          generate_rir(spec.room, spec.source_positions[j], spec.mic_positions[m], fs, num_taps);
      per_source[j] = fft_convolve(out.placed_speech[j], rir).head(total_samples);
      out.targets[j].channels.push_back(per_source[j]);
    }
    const Vec rir_n =
        generate_rir(spec.room, spec.noise_position, spec.mic_positions[m], fs, num_taps);
    const Vec noise_echo = fft_convolve(out.placed_noise, rir_n).head(total_samples);
    out.noise.channels.push_back(noise_echo);
    out.mixture.channels.push_back((per_source[0] + per_source[1]) + noise_echo);
  }
  return out;
}

}  // namespace sim
}  // namespace fasnet

// core/src/runtime/datagen.cc

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

#include "fasnet/runtime/datagen.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "fasnet/runtime/manifest.h"
#include "fasnet/runtime/wav_io.h"
#include "fasnet/sim/render.h"
#include "fasnet/sim/synth.h"

namespace fasnet {
namespace runtime {

namespace {

// Disjoint formant bands keep the two speakers spectrally separable.
constexpr double kSpeaker1Low = 200.0;
constexpr double kSpeaker1High = 700.0;
constexpr double kSpeaker2Low = 900.0;
constexpr double kSpeaker2High = 2400.0;

std::string utt_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "utt_%05d", index);
  return buf;
}

}  // namespace

void DatagenOptions::validate() const {
  if (num_utterances <= 0) {
    throw std::invalid_argument("datagen: num_utterances must be positive");
  }
  if (utterance_seconds <= 0.0) {
    throw std::invalid_argument("datagen: utterance_seconds must be positive");
  }
  if (sample_rate <= 0.0) {
    throw std::invalid_argument("datagen: sample_rate must be positive");
  }
  if (kSpeaker2High >= sample_rate / 2.0) {
    throw std::invalid_argument(
        "datagen: sample_rate too low for the speaker bands");
  }
  if (min_mics < 2 || max_mics > 6 || min_mics > max_mics) {
    throw std::invalid_argument("datagen: mic counts must satisfy 2 <= min <= max <= 6");
  }
}

std::string generate_dataset(const DatagenOptions& options,
                             const std::string& out_dir) {
  options.validate();
  namespace fs = std::filesystem;
  const fs::path root(out_dir);
  fs::create_directories(root);

  const auto total =
      static_cast<Eigen::Index>(std::llround(options.utterance_seconds *
                                             options.sample_rate));
  std::vector<UtteranceRecord> records;
  records.reserve(static_cast<size_t>(options.num_utterances));

  for (int u = 0; u < options.num_utterances; ++u) {
    Rng rng(derive_seed(options.seed, static_cast<uint64_t>(u)));

    int n_mics = sim::kCircularMics;
    if (options.geometry == sim::Geometry::kAdhoc) {
      n_mics = options.min_mics + (u % (options.max_mics - options.min_mics + 1));
    }
    const sim::SceneSpec scene = sim::sample_scene(rng, options.geometry, n_mics);

    const Eigen::Index span = sim::speech_span_samples(scene.overlap_ratio, total);
    const Vec speech1 = sim::synth_speech_burst(rng, span, options.sample_rate,
                                                kSpeaker1Low, kSpeaker1High);
    const Vec speech2 = sim::synth_speech_burst(rng, span, options.sample_rate,
                                                kSpeaker2Low, kSpeaker2High);
    const Vec noise = sim::synth_noise(rng, total, options.sample_rate);

    const sim::RenderedScene rendered =
        sim::render_scene(scene, speech1, speech2, noise, options.sample_rate, total);

    const std::string name = utt_name(u);
    const fs::path utt_dir = root / name;
    fs::create_directories(utt_dir);

    UtteranceRecord rec;
    rec.id = name;
    rec.num_mics = static_cast<int>(rendered.mixture.num_channels());
    rec.geometry = sim::to_string(scene.geometry);
    rec.overlap_ratio = scene.overlap_ratio;
    rec.overlap_bucket = sim::overlap_bucket(scene.overlap_ratio);
    if (scene.geometry == sim::Geometry::kCircular6) {
      rec.speaker_angle_deg = sim::speaker_angle(scene);
      rec.angle_bucket = sim::angle_bucket(rec.speaker_angle_deg);
    }
    rec.speech_snr_db = scene.speech_snr_db;
    rec.noise_snr_db = scene.noise_snr_db;
    rec.t60 = scene.room.t60;
    rec.room_dims = {scene.room.length, scene.room.width, scene.room.height};
    rec.sample_rate = options.sample_rate;
    rec.num_samples = total;

    rec.sources.resize(rendered.targets.size());
    for (int ch = 0; ch < rec.num_mics; ++ch) {
      const std::string mix_rel = name + "/mix_ch" + std::to_string(ch) + ".wav";
      write_wav((root / mix_rel).string(), rendered.mixture.channels[ch],
                options.sample_rate);
      rec.mixture.push_back(mix_rel);

      for (size_t s = 0; s < rendered.targets.size(); ++s) {
        const std::string src_rel = name + "/src" + std::to_string(s) + "_ch" +
                                    std::to_string(ch) + ".wav";
        write_wav((root / src_rel).string(),
                  rendered.targets[s].channels[ch], options.sample_rate);
        rec.sources[s].push_back(src_rel);
      }

      const std::string noise_rel =
          name + "/noise_ch" + std::to_string(ch) + ".wav";
      write_wav((root / noise_rel).string(), rendered.noise.channels[ch],
                options.sample_rate);
      rec.noise.push_back(noise_rel);
    }

    records.push_back(std::move(rec));
  }

  const std::string manifest_path = (root / "manifest.jsonl").string();
  write_manifest(manifest_path, records);
  return manifest_path;
}

}  // namespace runtime
}  // namespace fasnet

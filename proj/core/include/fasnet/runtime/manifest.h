// core/include/fasnet/runtime/manifest.h

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

#ifndef FASNET_RUNTIME_MANIFEST_H_
#define FASNET_RUNTIME_MANIFEST_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace fasnet {
namespace runtime {

// One dataset utterance. WAV paths are stored relative to the manifest file
// so the dataset directory can be moved as a unit.
struct UtteranceRecord {
  std::string id;
  std::vector<std::string> mixture;               // one mono wav per mic
  std::vector<std::vector<std::string>> sources;  // [source][mic]
  std::vector<std::string> noise;                 // one mono wav per mic
  int num_mics = 0;
  std::string geometry;
  double overlap_ratio = 0.0;
  int overlap_bucket = 0;
  double speaker_angle_deg = -1.0;  // fixed arrays only, else -1
  int angle_bucket = -1;
  double speech_snr_db = 0.0;
  double noise_snr_db = 0.0;
  double t60 = 0.0;
  std::array<double, 3> room_dims = {0.0, 0.0, 0.0};
  double sample_rate = 0.0;
  int64_t num_samples = 0;
};

// JSON-lines, one record per line.
void write_manifest(const std::string& path,
                    const std::vector<UtteranceRecord>& records);
std::vector<UtteranceRecord> read_manifest(const std::string& path);

// Joins a manifest-relative wav path onto the manifest's directory.
std::string resolve_manifest_path(const std::string& manifest_path,
                                  const std::string& relative);

}  // namespace runtime
}  // namespace fasnet

#endif  // FASNET_RUNTIME_MANIFEST_H_

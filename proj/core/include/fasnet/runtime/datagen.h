// core/include/fasnet/runtime/datagen.h

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

#ifndef FASNET_RUNTIME_DATAGEN_H_
#define FASNET_RUNTIME_DATAGEN_H_

#include <cstdint>
#include <string>

#include "fasnet/sim/scene.h"

namespace fasnet {
namespace runtime {

struct DatagenOptions {
  int num_utterances = 100;
  double utterance_seconds = 4.0;
  double sample_rate = 16000.0;
  sim::Geometry geometry = sim::Geometry::kAdhoc;
  int min_mics = 2;  // ad-hoc mic counts cycle through [min, max]
  int max_mics = 6;
  uint64_t seed = 0;

  void validate() const;
};

// Samples scenes, synthesizes band-limited sources (speaker 1 low band,
// speaker 2 high band so the two are separable by construction), renders
// them, and writes mono WAVs plus a manifest under out_dir. Utterance u
// draws from its own counter-derived stream, so the corpus is reproducible
// and insensitive to generation order. Returns the manifest path.
std::string generate_dataset(const DatagenOptions& options,
                             const std::string& out_dir);

}  // namespace runtime
}  // namespace fasnet

#endif  // FASNET_RUNTIME_DATAGEN_H_

// core/include/fasnet/runtime/dataset.h

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

#ifndef FASNET_RUNTIME_DATASET_H_
#define FASNET_RUNTIME_DATASET_H_

#include <cstdint>
#include <string>
#include <vector>

#include "fasnet/common.h"
#include "fasnet/runtime/manifest.h"

namespace fasnet {
namespace runtime {

// One training example: the mixture at every mic plus, per source, the
// reverberant clean signal at the reference mic (channel 0).
struct LoadedUtterance {
  MultichannelSignal mixture;
  std::vector<Vec> targets;
  const UtteranceRecord* record = nullptr;
};

// Loads a manifest and serves utterances. Recurrent batches must share a mic
// count, so the epoch schedule shuffles within equal-mic groups and then
// shuffles the batch order; both draws come from the seed alone, which lets a
// resumed run rebuild the exact schedule from its step index.
class Dataset {
 public:
  explicit Dataset(const std::string& manifest_path);

  size_t size() const { return records_.size(); }
  const std::vector<UtteranceRecord>& records() const { return records_; }

  LoadedUtterance load(size_t index) const;

  // Keeps every utterance in memory. Worth it for the small corpora here.
  void preload();

  // Batches for one epoch, each batch holding indices with equal mic counts.
  std::vector<std::vector<size_t>> epoch_batches(uint64_t seed, int64_t epoch,
                                                 int batch_size) const;

  int64_t batches_per_epoch(int batch_size) const;

  // The schedule is a pure function of (seed, step), so step s of a resumed
  // run sees the batch the original run saw.
  std::vector<size_t> batch_for_step(uint64_t seed, int64_t step,
                                     int batch_size) const;

 private:
  std::string manifest_path_;
  std::vector<UtteranceRecord> records_;
  std::vector<LoadedUtterance> cache_;
  bool preloaded_ = false;
};

}  // namespace runtime
}  // namespace fasnet

#endif  // FASNET_RUNTIME_DATASET_H_

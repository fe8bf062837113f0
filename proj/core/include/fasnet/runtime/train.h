// core/include/fasnet/runtime/train.h

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

#ifndef FASNET_RUNTIME_TRAIN_H_
#define FASNET_RUNTIME_TRAIN_H_

#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "fasnet/model/fasnet.h"

namespace fasnet {
namespace runtime {

struct TrainOptions {
  uint64_t seed = 0;
  int batch_size = 4;
  int64_t max_steps = 2000;
  double learning_rate = 1e-3;
  double clip_norm = 5.0;
  int64_t checkpoint_interval = 0;  // 0 saves only the final checkpoint
  int64_t valid_interval = 0;       // 0 skips held-out evaluation
  // Stop once held-out mean SI-SNR improvement reaches this, in dB.
  double stop_sisnri_db = std::numeric_limits<double>::infinity();
  std::string train_manifest;
  std::string valid_manifest;      // required when valid_interval > 0
  std::string resume_checkpoint;   // continue training from this state

  void validate() const;
};

struct TrainResult {
  int64_t steps_run = 0;
  double final_loss = 0.0;
  bool stopped_early = false;
  std::string final_checkpoint;
  // (step, held-out mean SI-SNRi dB) at each validation point.
  std::vector<std::pair<int64_t, double>> valid_history;
};

// Minimizes the permutation-invariant negative SI-SNR with Adam steps over
// shuffled equal-mic batches. Writes loss.csv and numbered checkpoints under
// out_dir. Fully deterministic for a fixed seed; a resumed run replays the
// exact remaining schedule. Throws NumericError if the loss leaves the
// finite range.
TrainResult train(const model::FasnetConfig& config,
                  const TrainOptions& options, const std::string& out_dir);

}  // namespace runtime
}  // namespace fasnet

#endif  // FASNET_RUNTIME_TRAIN_H_

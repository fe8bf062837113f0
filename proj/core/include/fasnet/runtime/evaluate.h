// core/include/fasnet/runtime/evaluate.h

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

#ifndef FASNET_RUNTIME_EVALUATE_H_
#define FASNET_RUNTIME_EVALUATE_H_

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "fasnet/model/fasnet.h"
#include "fasnet/runtime/dataset.h"

namespace fasnet {
namespace runtime {

struct EvalBucket {
  double mean_sisnri_db = 0.0;
  int64_t count = 0;
};

// Mean SI-SNR improvement over the channel-0 mixture, sliced by the
// conditions recorded in the manifest. Angle buckets fill only for fixed
// circular arrays; mic-count rows only for counts present in the data.
struct EvalReport {
  double mean_sisnri_db = 0.0;
  int64_t num_utterances = 0;
  std::array<EvalBucket, 4> by_overlap;
  bool has_angles = false;
  std::array<EvalBucket, 4> by_angle;
  std::map<int, EvalBucket> by_mics;
};

// Scores each utterance with its best output-to-target assignment. Threads
// split the utterance list; the reduction runs in utterance order, so the
// report is identical for any thread count.
EvalReport evaluate_dataset(const model::FasnetModel& model,
                            const Dataset& dataset, int num_threads);

// The headline number only, for early-stopping checks during training.
double mean_sisnri(const model::FasnetModel& model, const Dataset& dataset,
                   int num_threads);

std::string format_report(const EvalReport& report);
void write_report_json(const std::string& path, const EvalReport& report);

}  // namespace runtime
}  // namespace fasnet

#endif  // FASNET_RUNTIME_EVALUATE_H_

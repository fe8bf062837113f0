// core/include/fasnet/runtime/pipeline.h

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

#ifndef FASNET_RUNTIME_PIPELINE_H_
#define FASNET_RUNTIME_PIPELINE_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fasnet/model/fasnet.h"
#include "fasnet/runtime/datagen.h"
#include "fasnet/runtime/evaluate.h"
#include "fasnet/runtime/train.h"

namespace fasnet {
namespace runtime {

// One flat key=value file configures everything: "train."-prefixed keys set
// training options, "data."-prefixed keys set generation options, bare keys
// set the model. data.sample_rate follows the model rate unless given.
struct PipelineConfig {
  model::FasnetConfig model;
  TrainOptions train;
  DatagenOptions data;
};

PipelineConfig pipeline_config_from_kv(
    const std::map<std::string, std::string>& kv);
PipelineConfig pipeline_config_from_file(const std::string& path);

// Applies a command-line seed to both generation and training streams.
void override_seed(PipelineConfig* config, uint64_t seed);

// Returns the manifest path.
std::string run_gen_data(const PipelineConfig& config,
                         const std::string& out_dir);

TrainResult run_train(const PipelineConfig& config, const std::string& out_dir);

// Loads the model from a checkpoint (architecture included), scores the
// manifest, writes eval_report.txt and eval_report.json under out_dir.
EvalReport run_evaluate(const std::string& checkpoint_path,
                        const std::string& manifest_path,
                        const std::string& out_dir, int num_threads);

// Separates one utterance given per-mic mono WAVs; writes source<j>.wav.
void run_separate(const std::string& checkpoint_path,
                  const std::vector<std::string>& wav_paths,
                  const std::string& out_dir);

// Finite-difference sweep over every layer, the channel-communication
// module, and a tiny end-to-end model. Appends one line per check to
// *report; returns false if any gradient misses its tolerance.
bool run_grad_check(uint64_t seed, std::string* report);

}  // namespace runtime
}  // namespace fasnet

#endif  // FASNET_RUNTIME_PIPELINE_H_

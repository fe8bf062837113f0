// core/include/fasnet/runtime/checkpoint.h

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

#ifndef FASNET_RUNTIME_CHECKPOINT_H_
#define FASNET_RUNTIME_CHECKPOINT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "fasnet/model/fasnet.h"
#include "fasnet/nn/param.h"
#include "fasnet/nn/tensor_io.h"
#include "fasnet/runtime/adam.h"

namespace fasnet {
namespace runtime {

// A checkpoint is one tensor bundle: the model config and step count in the
// metadata block, parameter tensors by name, and optimizer moments under
// "adam.m/<name>" / "adam.v/<name>" when saved mid-training. The stored step
// doubles as the Adam bias-correction counter, so saving with an optimizer
// requires step == optimizer->steps_taken().
struct CheckpointData {
  model::FasnetConfig config;
  int64_t step = 0;
  nn::TensorBundle bundle;
};

void save_checkpoint(const std::string& path,
                     const model::FasnetConfig& config, int64_t step,
                     const std::vector<nn::Param*>& params,
                     const AdamOptimizer* optimizer);

CheckpointData read_checkpoint(const std::string& path);

// Copies tensors into the model (and optimizer when given). Every name and
// shape is verified before anything is written, so a mismatch leaves both
// untouched. The model's config must serialize identically to the stored one.
void apply_checkpoint(const CheckpointData& checkpoint,
                      model::FasnetModel* model, AdamOptimizer* optimizer);

}  // namespace runtime
}  // namespace fasnet

#endif  // FASNET_RUNTIME_CHECKPOINT_H_

// core/include/fasnet/runtime/adam.h

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

#ifndef FASNET_RUNTIME_ADAM_H_
#define FASNET_RUNTIME_ADAM_H_

#include <cstdint>
#include <vector>

#include "fasnet/common.h"
#include "fasnet/nn/param.h"

namespace fasnet {
namespace runtime {

struct AdamOptions {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double clip_norm = 5.0;  // global gradient norm; <= 0 disables clipping
};

// Adaptive-moment optimizer with bias correction and global-norm gradient
// clipping. Single-threaded: updates run in the fixed parameter order, so
// repeated runs with identical gradients are bit-identical.
class AdamOptimizer {
 public:
  AdamOptimizer(std::vector<nn::Param*> params, const AdamOptions& options);

  // Clips, applies one update from the accumulated grads, bumps the step
  // count. Does not clear grads; call zero_grads() between steps.
  void step();

  int64_t steps_taken() const { return steps_; }
  const AdamOptions& options() const { return options_; }
  const std::vector<nn::Param*>& params() const { return params_; }

  // Moment access for checkpointing, indexed like params().
  const std::vector<Mat>& first_moments() const { return m_; }
  const std::vector<Mat>& second_moments() const { return v_; }
  void restore_state(std::vector<Mat> m, std::vector<Mat> v, int64_t steps);

 private:
  std::vector<nn::Param*> params_;
  AdamOptions options_;
  std::vector<Mat> m_;
  std::vector<Mat> v_;
  int64_t steps_ = 0;
};

}  // namespace runtime
}  // namespace fasnet

#endif  // FASNET_RUNTIME_ADAM_H_

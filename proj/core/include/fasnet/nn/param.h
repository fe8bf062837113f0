// core/include/fasnet/nn/param.h

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

#ifndef FASNET_NN_PARAM_H_
#define FASNET_NN_PARAM_H_

#include <string>
#include <vector>

#include "fasnet/common.h"

namespace fasnet {
namespace nn {

/// A learnable tensor with its gradient accumulator. Gradients are zeroed
/// between optimization steps; backward passes accumulate into `grad`.
struct Param {
  std::string name;
  Mat value;
  Mat grad;

  Param() = default;
  Param(std::string n, Eigen::Index rows, Eigen::Index cols)
      : name(std::move(n)), value(Mat::Zero(rows, cols)),
        grad(Mat::Zero(rows, cols)) {}

  Eigen::Index size() const { return value.size(); }
  void zero_grad() { grad.setZero(); }
};

inline void zero_grads(const std::vector<Param*>& params) {
  for (Param* p : params) p->zero_grad();
}

/// Prefixes every parameter name, building hierarchical names like
/// "sep1.block0.intra.fw.wx".
inline void prefix_params(const std::string& prefix,
                          const std::vector<Param*>& params) {
  for (Param* p : params) p->name = prefix + p->name;
}

}  // namespace nn
}  // namespace fasnet

#endif  // FASNET_NN_PARAM_H_

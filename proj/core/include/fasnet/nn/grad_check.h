// core/include/fasnet/nn/grad_check.h

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

#ifndef FASNET_NN_GRAD_CHECK_H_
#define FASNET_NN_GRAD_CHECK_H_

#include <functional>
#include <string>
#include <vector>

#include "fasnet/nn/param.h"

namespace fasnet {
namespace nn {

struct GradCheckOptions {
  double step = 1e-5;       // central-difference half step
  double tolerance = 1e-6;  // max allowed relative error
  int max_entries = 0;      // 0 checks every coordinate, else per-param cap
};

struct GradCheckEntry {
  std::string param;
  int row = 0;
  int col = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  double rel_error = 0.0;
};

struct GradCheckReport {
  bool passed = false;
  double max_rel_error = 0.0;
  int checked = 0;
  std::vector<GradCheckEntry> worst;  // up to 8 entries, largest error first
};

// Compares the gradients accumulated by `loss(true)` against central finite
// differences of `loss(false)`. The callable must be deterministic in the
// parameter values; `loss(true)` is expected to zero and then fill the grads.
// Relative error uses max(|analytic|, |numeric|, 1.0) as denominator so that
// near-zero gradients are judged on absolute error. Throws NumericError if
// the loss or a gradient is non-finite.
GradCheckReport check_gradients(const std::vector<Param*>& params,
                                const std::function<double(bool with_grad)>& loss,
                                const GradCheckOptions& opts = GradCheckOptions());

std::string format_report(const GradCheckReport& report);

}  // namespace nn
}  // namespace fasnet

#endif  // FASNET_NN_GRAD_CHECK_H_

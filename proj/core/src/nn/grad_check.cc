// core/src/nn/grad_check.cc

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

#include "fasnet/nn/grad_check.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fasnet/common.h"

namespace fasnet {
namespace nn {

GradCheckReport check_gradients(const std::vector<Param*>& params,
                                const std::function<double(bool with_grad)>& loss,
                                const GradCheckOptions& opts) {
  const double base = loss(true);
  if (!std::isfinite(base)) {
    throw NumericError("grad check: non-finite loss");
  }

  std::vector<Mat> analytic;
  analytic.reserve(params.size());
  for (const Param* p : params) {
    if (!all_finite(p->grad)) {
      throw NumericError("grad check: non-finite gradient in " + p->name);
    }
    analytic.push_back(p->grad);
  }

  GradCheckReport report;
  for (size_t pi = 0; pi < params.size(); ++pi) {
    Param* p = params[pi];
    const Eigen::Index rows = p->value.rows();
    const Eigen::Index cols = p->value.cols();
    int done = 0;
    for (Eigen::Index c = 0; c < cols; ++c) {
      for (Eigen::Index r = 0; r < rows; ++r) {
        if (opts.max_entries > 0 && done >= opts.max_entries) break;
        const double saved = p->value(r, c);
        p->value(r, c) = saved + opts.step;
        const double plus = loss(false);
        p->value(r, c) = saved - opts.step;
        const double minus = loss(false);
        p->value(r, c) = saved;
        if (!std::isfinite(plus) || !std::isfinite(minus)) {
          throw NumericError("grad check: non-finite perturbed loss");
        }
        const double numeric = (plus - minus) / (2.0 * opts.step);
        const double a = analytic[pi](r, c);
        const double denom = std::max({std::abs(a), std::abs(numeric), 1.0});
        const double rel = std::abs(a - numeric) / denom;
        ++done;
        ++report.checked;
        if (rel > report.max_rel_error) report.max_rel_error = rel;
        if (report.worst.size() < 8 || rel > report.worst.back().rel_error) {
          GradCheckEntry e;
          e.param = p->name;
          e.row = static_cast<int>(r);
          e.col = static_cast<int>(c);
          e.analytic = a;
          e.numeric = numeric;
          e.rel_error = rel;
          report.worst.push_back(e);
          std::sort(report.worst.begin(), report.worst.end(),
                    [](const GradCheckEntry& x, const GradCheckEntry& y) {
                      return x.rel_error > y.rel_error;
                    });
          if (report.worst.size() > 8) report.worst.resize(8);
        }
      }
      if (opts.max_entries > 0 && done >= opts.max_entries) break;
    }
  }
  report.passed = report.max_rel_error <= opts.tolerance;
  return report;
}

std::string format_report(const GradCheckReport& report) {
  std::ostringstream os;
  os << (report.passed ? "PASS" : "FAIL") << " max_rel_error=" << report.max_rel_error
     << " checked=" << report.checked << "\n";
  for (const GradCheckEntry& e : report.worst) {
    os << "  " << e.param << "(" << e.row << "," << e.col << ") analytic=" << e.analytic
       << " numeric=" << e.numeric << " rel=" << e.rel_error << "\n";
  }
  return os.str();
}

}  // namespace nn
}  // namespace fasnet

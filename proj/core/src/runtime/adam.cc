// core/src/runtime/adam.cc

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

#include "fasnet/runtime/adam.h"

#include <cmath>
#include <stdexcept>

namespace fasnet {
namespace runtime {

AdamOptimizer::AdamOptimizer(std::vector<nn::Param*> params,
                             const AdamOptions& options)
    : params_(std::move(params)), options_(options) {
  if (params_.empty()) {
    throw std::invalid_argument("adam: no parameters");
  }
  if (options_.learning_rate < 0.0) {
    throw std::invalid_argument("adam: negative learning rate");
  }
  m_.reserve(params_.size());
  v_.reserve(params_.size());
  for (const nn::Param* p : params_) {
    m_.push_back(Mat::Zero(p->value.rows(), p->value.cols()));
    v_.push_back(Mat::Zero(p->value.rows(), p->value.cols()));
  }
}

void AdamOptimizer::step() {
  double sq_norm = 0.0;
  for (const nn::Param* p : params_) {
    const double s = p->grad.squaredNorm();
    if (!std::isfinite(s)) {
      throw NumericError("adam: non-finite gradient in " + p->name);
    }
    sq_norm += s;
  }
  double scale = 1.0;
  if (options_.clip_norm > 0.0) {
    const double norm = std::sqrt(sq_norm);
    if (norm > options_.clip_norm) {
      scale = options_.clip_norm / norm;
    }
  }

  ++steps_;
  const double bc1 =
      1.0 - std::pow(options_.beta1, static_cast<double>(steps_));
  const double bc2 =
      1.0 - std::pow(options_.beta2, static_cast<double>(steps_));
  for (size_t i = 0; i < params_.size(); ++i) {
    const Mat g = params_[i]->grad * scale;
    m_[i] = options_.beta1 * m_[i] + (1.0 - options_.beta1) * g;
    v_[i] = options_.beta2 * v_[i] +
            (1.0 - options_.beta2) * g.array().square().matrix();
    const Mat m_hat = m_[i] / bc1;
    const Mat v_hat = v_[i] / bc2;
    params_[i]->value.array() -=
        options_.learning_rate * m_hat.array() /
        (v_hat.array().sqrt() + options_.epsilon);
  }
}

void AdamOptimizer::restore_state(std::vector<Mat> m, std::vector<Mat> v,
                                  int64_t steps) {
  if (m.size() != params_.size() || v.size() != params_.size()) {
    throw std::invalid_argument("adam: moment count mismatch on restore");
  }
  for (size_t i = 0; i < params_.size(); ++i) {
    if (m[i].rows() != params_[i]->value.rows() ||
        m[i].cols() != params_[i]->value.cols() ||
        v[i].rows() != params_[i]->value.rows() ||
        v[i].cols() != params_[i]->value.cols()) {
      throw std::invalid_argument("adam: moment shape mismatch for " +
                                  params_[i]->name);
    }
  }
  m_ = std::move(m);
  v_ = std::move(v);
  steps_ = steps;
}

}  // namespace runtime
}  // namespace fasnet

// core/src/feats/ncc.cc

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

#include "fasnet/feats/ncc.h"

#include <cmath>
#include <stdexcept>

namespace fasnet {
namespace feats {

Vec ncc(const Vec& center, const Vec& context) {
  const Eigen::Index frame_len = center.size();
  const Eigen::Index num_lags = context.size() - frame_len + 1;
  if (num_lags < 1) {
    throw std::invalid_argument("ncc: context shorter than center");
  }
  Vec values(num_lags);
  const double center_norm = center.norm();
  for (Eigen::Index j = 0; j < num_lags; ++j) {
    const auto window = context.segment(j, frame_len);
    const double window_norm = window.norm();
    if (center_norm < kNccNormEps || window_norm < kNccNormEps) {
      values[j] = 0.0;
    } else {
      values[j] = center.dot(window) / (center_norm * window_norm);
    }
  }
  return values;
}

void ncc_backward(const Vec& center, const Vec& context, const Vec& dvalues,
                  Vec* dcenter, Vec* dcontext) {
  const Eigen::Index frame_len = center.size();
  const Eigen::Index num_lags = context.size() - frame_len + 1;
  if (dvalues.size() != num_lags) {
    throw std::invalid_argument("ncc_backward: gradient length mismatch");
  }
  const double na = center.norm();
  for (Eigen::Index j = 0; j < num_lags; ++j) {
    const double g = dvalues[j];
    if (g == 0.0) continue;
    const auto window = context.segment(j, frame_len);
    const double nb = window.norm();
    if (na < kNccNormEps || nb < kNccNormEps) continue;
    const double dot = center.dot(window);
    const double inv = 1.0 / (na * nb);
    if (dcenter != nullptr) {
      *dcenter += g * (window * inv - center * (dot * inv / (na * na)));
    }
    if (dcontext != nullptr) {
      dcontext->segment(j, frame_len) +=
          g * (center * inv - window * (dot * inv / (nb * nb)));
    }
  }
}

Mat ncc_frames(const Mat& centers, const Mat& contexts) {
  if (centers.rows() != contexts.rows()) {
    throw std::invalid_argument("ncc_frames: frame count mismatch");
  }
  const Eigen::Index num_lags = contexts.cols() - centers.cols() + 1;
  Mat values(centers.rows(), num_lags);
  for (Eigen::Index t = 0; t < centers.rows(); ++t) {
    values.row(t) = ncc(centers.row(t).transpose(), contexts.row(t).transpose()).transpose();
  }
  return values;
}

void ncc_frames_backward(const Mat& centers, const Mat& contexts,
                         const Mat& dvalues, Mat* dcenters, Mat* dcontexts) {
  Vec dc(centers.cols());
  Vec dx(contexts.cols());
  for (Eigen::Index t = 0; t < centers.rows(); ++t) {
    dc.setZero();
    dx.setZero();
    ncc_backward(centers.row(t).transpose(), contexts.row(t).transpose(),
                 dvalues.row(t).transpose(), &dc, &dx);
    if (dcenters != nullptr) dcenters->row(t) += dc.transpose();
    if (dcontexts != nullptr) dcontexts->row(t) += dx.transpose();
  }
}

namespace {

// Pairwise tree sum over [lo, hi) of `items`.
template <typename T>
T tree_sum(const std::vector<T>& items, size_t lo, size_t hi) {
  if (hi - lo == 1) return items[lo];
  const size_t mid = lo + (hi - lo) / 2;
  return tree_sum(items, lo, mid) + tree_sum(items, mid, hi);
}

}  // namespace

Vec ncc_mean(const std::vector<Vec>& vectors) {
  if (vectors.empty()) {
    throw std::invalid_argument("ncc_mean: empty input");
  }
  Vec sum = tree_sum(vectors, 0, vectors.size());
  return sum / static_cast<double>(vectors.size());
}

Mat ncc_mean(const std::vector<Mat>& mats) {
  if (mats.empty()) {
    throw std::invalid_argument("ncc_mean: empty input");
  }
  Mat sum = tree_sum(mats, 0, mats.size());
  return sum / static_cast<double>(mats.size());
}

Mat encode(const Mat& contexts, const Encoder& enc) {
  if (contexts.cols() != enc.weights.rows()) {
    throw std::invalid_argument("encode: context length does not match encoder");
  }
  return contexts * enc.weights;
}

Mat encode_backward(const Mat& contexts, const Encoder& enc, const Mat& dout,
                    Mat* dweights) {
  if (dweights != nullptr) {
    dweights->noalias() += contexts.transpose() * dout;
  }
  return dout * enc.weights.transpose();
}

}  // namespace feats
}  // namespace fasnet

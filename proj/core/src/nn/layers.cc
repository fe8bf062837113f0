// core/src/nn/layers.cc

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

#include "fasnet/nn/layers.h"

#include <cmath>
#include <stdexcept>

namespace fasnet {
namespace nn {

Linear::Linear(int in_dim, int out_dim, Rng& rng, bool bias)
    : weight_("w", in_dim, out_dim),
      bias_("b", 1, bias ? out_dim : 0),
      has_bias_(bias) {
  fill_uniform(&weight_.value, rng, 1.0 / std::sqrt(static_cast<double>(in_dim)));
}

Mat Linear::forward(const Mat& x, Cache* cache) const {
  if (x.cols() != weight_.value.rows()) {
    throw std::invalid_argument("Linear: input dim mismatch");
  }
  Mat y = x * weight_.value;
  if (has_bias_) y.rowwise() += bias_.value.row(0);
  if (cache != nullptr) cache->input = x;
  return y;
}

Mat Linear::backward(const Cache& cache, const Mat& dy) {
  weight_.grad.noalias() += cache.input.transpose() * dy;
  if (has_bias_) bias_.grad.row(0) += dy.colwise().sum();
  return dy * weight_.value.transpose();
}

std::vector<Param*> Linear::params() {
  std::vector<Param*> out{&weight_};
  if (has_bias_) out.push_back(&bias_);
  return out;
}

PReLU::PReLU(int channels, double init) : slope_("a", 1, channels) {
  slope_.value.setConstant(init);
}

Mat PReLU::forward(const Mat& x, Cache* cache) const {
  if (per_channel() && x.cols() != slope_.value.cols()) {
    throw std::invalid_argument("PReLU: channel count mismatch");
  }
  Mat y = x;
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    const double a = slope_at(c);
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      if (x(r, c) < 0.0) y(r, c) = a * x(r, c);
    }
  }
  if (cache != nullptr) cache->input = x;
  return y;
}

Mat PReLU::backward(const Cache& cache, const Mat& dy) {
  const Mat& x = cache.input;
  Mat dx(x.rows(), x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    const double a = slope_at(c);
    const Eigen::Index slope_col = per_channel() ? c : 0;
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      if (x(r, c) >= 0.0) {
        dx(r, c) = dy(r, c);
      } else {
        dx(r, c) = a * dy(r, c);
        slope_.grad(0, slope_col) += x(r, c) * dy(r, c);
      }
    }
  }
  return dx;
}

std::vector<Param*> PReLU::params() { return {&slope_}; }

LayerNorm::LayerNorm(int dim) : gain_("g", 1, dim), bias_("b", 1, dim) {
  gain_.value.setOnes();
  bias_.value.setZero();
}

Mat LayerNorm::forward(const Mat& x, Cache* cache) const {
  if (x.cols() != gain_.value.cols()) {
    throw std::invalid_argument("LayerNorm: dim mismatch");
  }
  const double dim = static_cast<double>(x.cols());
  Mat centered = x.colwise() - x.rowwise().mean();
  Vec inv_std(x.rows());
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    const double var = centered.row(r).squaredNorm() / dim;
    inv_std[r] = 1.0 / std::sqrt(var + kEps);
  }
  Mat normalized = centered.array().colwise() * inv_std.array();
  Mat y = (normalized.array().rowwise() * gain_.value.row(0).array()).rowwise() +
          bias_.value.row(0).array();
  if (cache != nullptr) {
    cache->normalized = normalized;
    cache->inv_std = inv_std;
    cache->centered = std::move(centered);
  }
  return y;
}

Mat LayerNorm::backward(const Cache& cache, const Mat& dy) {
  const double dim = static_cast<double>(dy.cols());
  gain_.grad.row(0) += (dy.array() * cache.normalized.array()).colwise().sum().matrix();
  bias_.grad.row(0) += dy.colwise().sum();

  // dx for y = g * (x - mu) * inv_std + b, with inv_std = (var + eps)^-1/2.
  Mat dxhat = dy.array().rowwise() * gain_.value.row(0).array();
  Mat dx(dy.rows(), dy.cols());
  for (Eigen::Index r = 0; r < dy.rows(); ++r) {
    const double inv_std = cache.inv_std[r];
    const auto xc = cache.centered.row(r);
    const auto dxh = dxhat.row(r);
    const double dvar = -0.5 * std::pow(inv_std, 3) * dxh.cwiseProduct(xc).sum();
    const double dmean = -inv_std * dxh.sum() - 2.0 * dvar * xc.mean();
    dx.row(r) =
        dxh * inv_std + (2.0 * dvar / dim) * xc + Mat::Constant(1, dy.cols(), dmean / dim);
  }
  return dx;
}

std::vector<Param*> LayerNorm::params() { return {&gain_, &bias_}; }

Mat Tanh::forward(const Mat& x, Cache* cache) const {
  Mat y = x.array().tanh();
  if (cache != nullptr) cache->output = y;
  return y;
}

Mat Tanh::backward(const Cache& cache, const Mat& dy) {
  return dy.array() * (1.0 - cache.output.array().square());
}

}  // namespace nn
}  // namespace fasnet

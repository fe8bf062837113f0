// core/include/fasnet/nn/layers.h

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

#ifndef FASNET_NN_LAYERS_H_
#define FASNET_NN_LAYERS_H_

#include <vector>

#include "fasnet/common.h"
#include "fasnet/nn/param.h"

namespace fasnet {
namespace nn {

// All layers process sequences as row-major matrices: row t is time step t.
// forward() is const and writes its activation workspace into a caller-owned
// cache, so one layer instance may serve concurrent forward calls; backward()
// accumulates into the layer's Param grads (single writer).

/// y = x W + b applied per row.
class Linear {
 public:
  struct Cache {
    Mat input;
  };

  Linear() = default;
  Linear(int in_dim, int out_dim, Rng& rng, bool bias = true);

  Mat forward(const Mat& x, Cache* cache = nullptr) const;
  Mat backward(const Cache& cache, const Mat& dy);

  std::vector<Param*> params();
  int in_dim() const { return static_cast<int>(weight_.value.rows()); }
  int out_dim() const { return static_cast<int>(weight_.value.cols()); }

  Param& weight() { return weight_; }
  Param& bias() { return bias_; }

 private:
  Param weight_;  // in x out
  Param bias_;    // 1 x out (empty when bias disabled)
  bool has_bias_ = true;
};

/// y = x where x >= 0, a*x elsewhere; `a` is learned, either one scalar or
/// one slope per feature column.
class PReLU {
 public:
  struct Cache {
    Mat input;
  };

  PReLU() = default;
  explicit PReLU(int channels, double init = 0.25);

  Mat forward(const Mat& x, Cache* cache = nullptr) const;
  Mat backward(const Cache& cache, const Mat& dy);

  std::vector<Param*> params();
  bool per_channel() const { return slope_.value.cols() > 1; }

  Param& slope() { return slope_; }

 private:
  double slope_at(Eigen::Index col) const {
    return per_channel() ? slope_.value(0, col) : slope_.value(0, 0);
  }
  Param slope_;  // 1 x 1 or 1 x channels
};

/// Per-row normalization to zero mean and unit variance (eps inside the
/// square root), followed by a learned elementwise affine.
class LayerNorm {
 public:
  static constexpr double kEps = 1e-5;

  struct Cache {
    Mat normalized;   // x_hat
    Vec inv_std;      // per row
    Mat centered;     // x - mean
  };

  LayerNorm() = default;
  explicit LayerNorm(int dim);

  Mat forward(const Mat& x, Cache* cache = nullptr) const;
  Mat backward(const Cache& cache, const Mat& dy);

  std::vector<Param*> params();

  Param& gain() { return gain_; }
  Param& bias() { return bias_; }

 private:
  Param gain_;  // 1 x dim
  Param bias_;  // 1 x dim
};

/// Elementwise tanh; stateless apart from the cached output.
class Tanh {
 public:
  struct Cache {
    Mat output;
  };

  Mat forward(const Mat& x, Cache* cache = nullptr) const;
  static Mat backward(const Cache& cache, const Mat& dy);
};

}  // namespace nn
}  // namespace fasnet

#endif  // FASNET_NN_LAYERS_H_

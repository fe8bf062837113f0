// core/include/fasnet/nn/lstm.h

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

#ifndef FASNET_NN_LSTM_H_
#define FASNET_NN_LSTM_H_

#include <vector>

#include "fasnet/common.h"
#include "fasnet/nn/param.h"

namespace fasnet {
namespace nn {

/// Unidirectional gated recurrent sequence layer (standard LSTM cell with
/// forget-gate bias initialized to 1). Zero initial state. Full
/// backpropagation through time.
class Lstm {
 public:
  struct Cache {
    Mat input;                          // T x I
    Mat gate_i, gate_f, gate_g, gate_o; // T x H, post-activation
    Mat cell;                           // T x H
    Mat cell_tanh;                      // T x H
    Mat hidden;                         // T x H
  };

  Lstm() = default;
  Lstm(int in_dim, int hidden_dim, Rng& rng);

  /// seq: T x I -> T x H. T must be >= 1.
  Mat forward(const Mat& seq, Cache* cache = nullptr) const;
  Mat backward(const Cache& cache, const Mat& dhidden);

  std::vector<Param*> params();
  int hidden_dim() const { return hidden_; }

 private:
  Param wx_;  // I x 4H, gate order [i, f, g, o]
  Param wh_;  // H x 4H
  Param b_;   // 1 x 4H
  int hidden_ = 0;
};

/// The sequence run through two Lstm instances, one on the reversed time
/// axis, outputs concatenated to T x 2H.
class BiLstm {
 public:
  struct Cache {
    Lstm::Cache fw;
    Lstm::Cache bw;
  };

  BiLstm() = default;
  BiLstm(int in_dim, int hidden_dim, Rng& rng);

  Mat forward(const Mat& seq, Cache* cache = nullptr) const;
  Mat backward(const Cache& cache, const Mat& dy);

  std::vector<Param*> params();
  int out_dim() const { return 2 * fw_.hidden_dim(); }

 private:
  Lstm fw_;
  Lstm bw_;
};

}  // namespace nn
}  // namespace fasnet

#endif  // FASNET_NN_LSTM_H_

// core/include/fasnet/tac/tac.h

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

#ifndef FASNET_TAC_TAC_H_
#define FASNET_TAC_TAC_H_

#include <vector>

#include "fasnet/common.h"
#include "fasnet/nn/layers.h"
#include "fasnet/nn/param.h"

namespace fasnet {
namespace tac {

// Transform-average-concatenate: a channel-communication layer that is
// equivariant to channel permutation and runs unchanged for any channel
// count, because one parameter set transforms every channel and the only
// cross-channel operation is a mean.
//
// Per channel i (rows are time steps):
//   f_i    = PReLU(P z_i)            K -> D
//   f_mean = PReLU(R mean_i f_i)     D -> D
//   out_i  = z_i + PReLU(S [f_i ; f_mean])   2D -> K, residual
class TacModule {
 public:
  struct ChannelCache {
    nn::Linear::Cache p_lin;
    nn::PReLU::Cache p_act;
    nn::Linear::Cache s_lin;
    nn::PReLU::Cache s_act;
  };

  struct Cache {
    std::vector<ChannelCache> channels;
    nn::Linear::Cache r_lin;
    nn::PReLU::Cache r_act;
  };

  TacModule(int feat_dim, int hidden_dim, Rng& rng);

  // z: one T x K matrix per channel, all the same shape. Output matches.
  std::vector<Mat> forward(const std::vector<Mat>& z, Cache* cache = nullptr) const;
  std::vector<Mat> backward(const Cache& cache, const std::vector<Mat>& dout);

  std::vector<nn::Param*> params();
  int feat_dim() const { return feat_dim_; }
  int hidden_dim() const { return hidden_dim_; }

 private:
  nn::Linear p_, r_, s_;
  nn::PReLU p_act_, r_act_, s_act_;
  int feat_dim_;
  int hidden_dim_;
};

}  // namespace tac
}  // namespace fasnet

#endif  // FASNET_TAC_TAC_H_

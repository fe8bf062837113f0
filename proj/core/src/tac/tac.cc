// core/src/tac/tac.cc

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

#include "fasnet/tac/tac.h"

#include <stdexcept>

namespace fasnet {
namespace tac {

TacModule::TacModule(int feat_dim, int hidden_dim, Rng& rng)
    : p_(feat_dim, hidden_dim, rng),
      r_(hidden_dim, hidden_dim, rng),
      s_(2 * hidden_dim, feat_dim, rng),
      p_act_(1),
      r_act_(1),
      s_act_(1),
      feat_dim_(feat_dim),
      hidden_dim_(hidden_dim) {
  nn::prefix_params("p.", p_.params());
  nn::prefix_params("r.", r_.params());
  nn::prefix_params("s.", s_.params());
  nn::prefix_params("p_act.", p_act_.params());
  nn::prefix_params("r_act.", r_act_.params());
  nn::prefix_params("s_act.", s_act_.params());
}

std::vector<Mat> TacModule::forward(const std::vector<Mat>& z, Cache* cache) const {
  const size_t N = z.size();
  if (N == 0) throw std::invalid_argument("TacModule: no channels");
  for (const Mat& zi : z) {
    if (zi.cols() != feat_dim_ || zi.rows() != z[0].rows()) {
      throw std::invalid_argument("TacModule: channel shape mismatch");
    }
  }
  if (cache != nullptr) cache->channels.resize(N);

  std::vector<Mat> f(N);
  for (size_t i = 0; i < N; ++i) {
    nn::Linear::Cache* lc = cache ? &cache->channels[i].p_lin : nullptr;
    nn::PReLU::Cache* ac = cache ? &cache->channels[i].p_act : nullptr;
    f[i] = p_act_.forward(p_.forward(z[i], lc), ac);
  }

  Mat mean = f[0];
  for (size_t i = 1; i < N; ++i) mean += f[i];
  mean /= static_cast<double>(N);

  Mat fhat = r_act_.forward(r_.forward(mean, cache ? &cache->r_lin : nullptr),
                            cache ? &cache->r_act : nullptr);

  std::vector<Mat> out(N);
  Mat concat(z[0].rows(), 2 * hidden_dim_);
  for (size_t i = 0; i < N; ++i) {
    concat << f[i], fhat;
    nn::Linear::Cache* lc = cache ? &cache->channels[i].s_lin : nullptr;
    nn::PReLU::Cache* ac = cache ? &cache->channels[i].s_act : nullptr;
    out[i] = z[i] + s_act_.forward(s_.forward(concat, lc), ac);
  }
  return out;
}

std::vector<Mat> TacModule::backward(const Cache& cache, const std::vector<Mat>& dout) {
  const size_t N = cache.channels.size();
  if (dout.size() != N) throw std::invalid_argument("TacModule backward: channel count mismatch");

  std::vector<Mat> dz(N);
  std::vector<Mat> df(N);
  Mat dfhat;
  for (size_t i = 0; i < N; ++i) {
    dz[i] = dout[i];  // residual path
    Mat dconcat = s_.backward(cache.channels[i].s_lin,
                              s_act_.backward(cache.channels[i].s_act, dout[i]));
    df[i] = dconcat.leftCols(hidden_dim_);
    if (i == 0) {
      dfhat = dconcat.rightCols(hidden_dim_);
    } else {
      dfhat += dconcat.rightCols(hidden_dim_);
    }
  }

  Mat dmean = r_.backward(cache.r_lin, r_act_.backward(cache.r_act, dfhat));
  dmean /= static_cast<double>(N);
  for (size_t i = 0; i < N; ++i) {
    df[i] += dmean;
    dz[i] += p_.backward(cache.channels[i].p_lin,
                         p_act_.backward(cache.channels[i].p_act, df[i]));
  }
  return dz;
}

std::vector<nn::Param*> TacModule::params() {
  std::vector<nn::Param*> out;
  for (nn::Param* p : p_.params()) out.push_back(p);
  for (nn::Param* p : p_act_.params()) out.push_back(p);
  for (nn::Param* p : r_.params()) out.push_back(p);
  for (nn::Param* p : r_act_.params()) out.push_back(p);
  for (nn::Param* p : s_.params()) out.push_back(p);
  for (nn::Param* p : s_act_.params()) out.push_back(p);
  return out;
}

}  // namespace tac
}  // namespace fasnet

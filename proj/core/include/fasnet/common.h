// core/include/fasnet/common.h

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

#ifndef FASNET_COMMON_H_
#define FASNET_COMMON_H_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace fasnet {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Raised when a computation produces non-finite values or otherwise fails
/// numerically. The CLI maps this to exit code 3.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// N waveforms of equal length sharing one sample rate.
struct MultichannelSignal {
  std::vector<Vec> channels;
  double sample_rate = 0.0;

  int num_channels() const { return static_cast<int>(channels.size()); }
  Eigen::Index num_samples() const {
    return channels.empty() ? 0 : channels.front().size();
  }
};

// ---------------------------------------------------------------------------
// Deterministic RNG helpers. std::*_distribution output is implementation
// defined, so every random draw in the project goes through these instead.
// ---------------------------------------------------------------------------

uint64_t splitmix64(uint64_t x);

/// Derives an independent seed for a named sub-stream of `base`.
/// Used for counter-based seeding (e.g. one stream per rendered utterance).
uint64_t derive_seed(uint64_t base, uint64_t stream);

using Rng = std::mt19937_64;

/// Uniform double in [0, 1).
double uniform_double(Rng& rng);

/// Uniform double in [lo, hi).
double uniform_range(Rng& rng, double lo, double hi);

/// Uniform integer in [lo, hi] (inclusive).
int64_t uniform_int(Rng& rng, int64_t lo, int64_t hi);

/// Standard normal via Box-Muller; stateless across calls (draws two
/// uniforms per sample, discards the sibling).
double normal_double(Rng& rng);

/// Fills a matrix with uniform values in [-scale, scale].
void fill_uniform(Mat* m, Rng& rng, double scale);

bool all_finite(const Mat& m);
bool all_finite(const Vec& v);

}  // namespace fasnet

#endif  // FASNET_COMMON_H_

// core/src/objective/sisnr.cc

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

#include "fasnet/objective/sisnr.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fasnet {
namespace objective {

namespace {

constexpr double kTenOverLn10 = 10.0 / 2.302585092994045684;

void check_pair(const Vec& est, const Vec& target) {
  if (est.size() != target.size()) {
    throw std::invalid_argument("si_snr: length mismatch");
  }
  if (target.squaredNorm() == 0.0) {
    throw std::invalid_argument("si_snr: all-zero target");
  }
}

}  // namespace

double si_snr(const Vec& est, const Vec& target) {
  check_pair(est, target);
  const double proj = est.dot(target) / target.squaredNorm();
  const Vec s = proj * target;
  const Vec r = est - s;
  const double a = s.squaredNorm();
  if (a == 0.0) {
    return -std::numeric_limits<double>::infinity();
  }
  return 10.0 * std::log10(a / (r.squaredNorm() + kSiSnrEps * a));
}

Vec si_snr_backward(const Vec& est, const Vec& target, double dval) {
  check_pair(est, target);
  const double p = est.dot(target);
  if (p == 0.0) {
    throw NumericError("si_snr backward: estimate orthogonal to target");
  }
  const Vec s = (p / target.squaredNorm()) * target;
  const Vec r = est - s;
  const double b = r.squaredNorm() + kSiSnrEps * s.squaredNorm();
  return dval * kTenOverLn10 * (2.0 / p * target - 2.0 / b * (r + kSiSnrEps * s));
}

UpitResult upit_loss(const std::vector<Vec>& ests, const std::vector<Vec>& targets) {
  const int C = static_cast<int>(ests.size());
  if (C < 1 || static_cast<int>(targets.size()) != C) {
    throw std::invalid_argument("upit_loss: source count mismatch");
  }
  if (C > 6) {
    throw std::invalid_argument("upit_loss: factorial enumeration capped at 6 sources");
  }

  Mat scores(C, C);
  for (int j = 0; j < C; ++j) {
    for (int k = 0; k < C; ++k) {
      scores(j, k) = si_snr(ests[j], targets[k]);
    }
  }

  std::vector<int> perm(C);
  std::iota(perm.begin(), perm.end(), 0);
  UpitResult best;
  best.loss = std::numeric_limits<double>::infinity();
  do {
    double sum = 0.0;
    for (int j = 0; j < C; ++j) sum -= scores(j, perm[j]);
    const double loss = sum / C;
    if (loss < best.loss) {  // strict: ties keep the lexicographically first
      best.loss = loss;
      best.permutation = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<Vec> upit_loss_backward(const std::vector<Vec>& ests,
                                    const std::vector<Vec>& targets, const UpitResult& result,
                                    double dloss) {
  const int C = static_cast<int>(ests.size());
  if (static_cast<int>(result.permutation.size()) != C) {
    throw std::invalid_argument("upit_loss_backward: permutation size mismatch");
  }
  std::vector<Vec> dests(C);
  for (int j = 0; j < C; ++j) {
    dests[j] = si_snr_backward(ests[j], targets[result.permutation[j]], -dloss / C);
  }
  return dests;
}

double si_snri(const Vec& est, const Vec& target, const Vec& mixture_ref) {
  return si_snr(est, target) - si_snr(mixture_ref, target);
}

}  // namespace objective
}  // namespace fasnet

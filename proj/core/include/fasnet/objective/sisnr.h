// core/include/fasnet/objective/sisnr.h

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

#ifndef FASNET_OBJECTIVE_SISNR_H_
#define FASNET_OBJECTIVE_SISNR_H_

#include <vector>

#include "fasnet/common.h"

namespace fasnet {
namespace objective {

// Residual-power floor, relative to the projection power. Caps the score at
// exactly 100 dB when the residual vanishes; scaling with |s|^2 rather than
// an absolute constant keeps the value invariant to estimate scaling.
constexpr double kSiSnrEps = 1e-10;

// Scale-invariant SNR in dB: project the estimate onto the target,
// s = (<e,t>/|t|^2) t, and return 10 log10(|s|^2 / (|e-s|^2 + eps |s|^2)).
// -inf when the projection is zero. Means are NOT removed, which shifts
// absolute dB values relative to the mean-subtracted convention. Throws
// std::invalid_argument on length mismatch or an all-zero target.
double si_snr(const Vec& est, const Vec& target);

// d(si_snr)/d(est) scaled by `dval`. Uses <e-s, t> = 0, which reduces the
// residual term's Jacobian to the identity. Throws NumericError when the
// estimate is exactly orthogonal to the target (the value itself is -inf
// there).
Vec si_snr_backward(const Vec& est, const Vec& target, double dval);

struct UpitResult {
  double loss = 0.0;
  // permutation[j] is the target index assigned to estimate j.
  std::vector<int> permutation;
};

// Utterance-level permutation-invariant loss: min over all C! assignments of
// mean_j -si_snr(est_j, target_perm(j)). Ties pick the lexicographically
// smallest permutation. C <= 6.
UpitResult upit_loss(const std::vector<Vec>& ests, const std::vector<Vec>& targets);

// Gradients wrt the estimates, flowing only through the best permutation.
std::vector<Vec> upit_loss_backward(const std::vector<Vec>& ests,
                                    const std::vector<Vec>& targets, const UpitResult& result,
                                    double dloss);

// Improvement over the unprocessed reference-channel mixture:
// si_snr(est, target) - si_snr(mixture_ref, target).
double si_snri(const Vec& est, const Vec& target, const Vec& mixture_ref);

}  // namespace objective
}  // namespace fasnet

#endif  // FASNET_OBJECTIVE_SISNR_H_

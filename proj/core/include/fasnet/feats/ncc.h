// core/include/fasnet/feats/ncc.h

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

#ifndef FASNET_FEATS_NCC_H_
#define FASNET_FEATS_NCC_H_

#include <vector>

#include "fasnet/common.h"

namespace fasnet {
namespace feats {

/// Norm floor: a window whose L2 norm falls below this yields a hard zero
/// similarity instead of a divide-by-near-zero.
inline constexpr double kNccNormEps = 1e-8;

/// Normalized cross-correlation: cosine similarity between `center` (length
/// L) and each of the 2W+1 length-L windows of `context` (length L+2W).
/// Every entry lies in [-1, 1].
Vec ncc(const Vec& center, const Vec& context);

/// Gradients of ncc wrt both arguments. Accumulates into pre-sized buffers.
/// Entries zeroed by the norm floor contribute zero gradient.
void ncc_backward(const Vec& center, const Vec& context, const Vec& dvalues,
                  Vec* dcenter, Vec* dcontext);

/// Row-wise ncc over frame matrices: centers is T x L, contexts is
/// T x (L+2W); returns T x (2W+1).
Mat ncc_frames(const Mat& centers, const Mat& contexts);

void ncc_frames_backward(const Mat& centers, const Mat& contexts,
                         const Mat& dvalues, Mat* dcenters, Mat* dcontexts);

/// Entrywise arithmetic mean over the given vectors, summed as a pairwise
/// tree over the input order. Permutation of the inputs changes the result
/// only by floating-point reassociation (tested at 1e-12).
Vec ncc_mean(const std::vector<Vec>& vectors);

/// Matrix variant of ncc_mean for stacked per-frame features.
Mat ncc_mean(const std::vector<Mat>& mats);

/// Linear frame encoder: a bare (L+2W) x K weight matrix, no bias, no
/// activation.
struct Encoder {
  Mat weights;  // (L+2W) x K

  int embedding_dim() const { return static_cast<int>(weights.cols()); }
};

/// R = c * U for each row c of `contexts` (T x (L+2W)); returns T x K.
Mat encode(const Mat& contexts, const Encoder& enc);

/// Gradients of encode: returns d(contexts) and accumulates d(weights).
Mat encode_backward(const Mat& contexts, const Encoder& enc, const Mat& dout,
                    Mat* dweights);

}  // namespace feats
}  // namespace fasnet

#endif  // FASNET_FEATS_NCC_H_

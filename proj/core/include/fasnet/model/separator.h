// core/include/fasnet/model/separator.h

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

#ifndef FASNET_MODEL_SEPARATOR_H_
#define FASNET_MODEL_SEPARATOR_H_

#include <vector>

#include "fasnet/common.h"
#include "fasnet/nn/layers.h"
#include "fasnet/nn/lstm.h"
#include "fasnet/nn/param.h"
#include "fasnet/tac/tac.h"

namespace fasnet {
namespace model {

// Chunking of a T x F sequence into 50%-overlapped windows of `chunk` rows.
// The sequence is padded with `front_pad` leading zero rows and enough
// trailing zero rows that chunks tile the padded length exactly; merging
// overlap-adds the chunks and divides by per-row coverage, then drops the
// padding.
struct SegmentSpec {
  int chunk = 0;
  int hop = 0;                  // chunk / 2
  int front_pad = 0;            // equals hop
  Eigen::Index rows = 0;        // original row count
  Eigen::Index padded_rows = 0;
  int num_chunks = 0;
};

SegmentSpec make_segment_spec(Eigen::Index rows, int chunk);

std::vector<Mat> segment_rows(const Mat& x, const SegmentSpec& spec);
Mat segment_rows_backward(const std::vector<Mat>& dchunks, const SegmentSpec& spec);
Mat merge_rows(const std::vector<Mat>& chunks, const SegmentSpec& spec);
std::vector<Mat> merge_rows_backward(const Mat& dx, const SegmentSpec& spec);

// One dual-path block: a bidirectional recurrent pass along each chunk
// (projection back to width, layer norm, residual), then the same along the
// chunk axis at every intra-chunk position.
class DprnnBlock {
 public:
  struct PathCache {
    nn::BiLstm::Cache rnn;
    nn::Linear::Cache proj;
    nn::LayerNorm::Cache norm;
  };

  struct Cache {
    std::vector<PathCache> intra;  // one per chunk
    std::vector<PathCache> inter;  // one per intra-chunk position
  };

  DprnnBlock(int width, int hidden, Rng& rng);

  // One stream's chunks, each chunk x width. Output has the same shape.
  std::vector<Mat> forward(const std::vector<Mat>& chunks, Cache* cache = nullptr) const;
  std::vector<Mat> backward(const Cache& cache, const std::vector<Mat>& dout);

  std::vector<nn::Param*> params();

 private:
  nn::BiLstm intra_rnn_, inter_rnn_;
  nn::Linear intra_proj_, inter_proj_;
  nn::LayerNorm intra_norm_, inter_norm_;
};

struct SeparatorOptions {
  int in_dim = 0;
  int width = 0;
  int hidden = 0;
  int out_dim = 0;
  int num_blocks = 1;
  int chunk_len = 100;
  bool use_tac = false;
  int tac_hidden = 0;  // required when use_tac
};

// Filter estimator: input projection, a stack of dual-path blocks over the
// segmented frame axis (with cross-stream TAC after each block when
// enabled), merge, and a tanh-bounded linear head. Streams are processed
// with one shared parameter set, so the stack accepts any stream count.
class SeparatorStack {
 public:
  struct Cache {
    SegmentSpec seg;
    std::vector<nn::Linear::Cache> in_lin;                 // per stream
    std::vector<nn::PReLU::Cache> in_act;                  // per stream
    std::vector<std::vector<DprnnBlock::Cache>> blocks;    // [block][stream]
    std::vector<std::vector<tac::TacModule::Cache>> tacs;  // [block][chunk]
    std::vector<nn::Linear::Cache> head_lin;               // per stream
    std::vector<nn::Tanh::Cache> head_act;                 // per stream
  };

  SeparatorStack(const SeparatorOptions& opts, Rng& rng);

  // streams: one T x in_dim matrix per stream; returns T x out_dim each.
  std::vector<Mat> forward(const std::vector<Mat>& streams, Cache* cache = nullptr) const;
  std::vector<Mat> backward(const Cache& cache, const std::vector<Mat>& dout);

  std::vector<nn::Param*> params();
  const SeparatorOptions& options() const { return opts_; }

 private:
  SeparatorOptions opts_;
  nn::Linear in_proj_;
  nn::PReLU in_act_;
  std::vector<DprnnBlock> blocks_;
  std::vector<tac::TacModule> tacs_;  // empty unless opts_.use_tac
  nn::Linear head_;
  nn::Tanh head_act_;
};

}  // namespace model
}  // namespace fasnet

#endif  // FASNET_MODEL_SEPARATOR_H_

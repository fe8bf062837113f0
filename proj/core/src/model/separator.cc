// core/src/model/separator.cc

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

#include "fasnet/model/separator.h"

#include <stdexcept>
#include <string>

namespace fasnet {
namespace model {

namespace {

// Chunks covering padded row i: s with s*hop <= i < s*hop + chunk.
int coverage_at(Eigen::Index i, const SegmentSpec& spec) {
  const Eigen::Index lo_num = i - spec.chunk + spec.hop;
  Eigen::Index s_lo = lo_num >= 0 ? lo_num / spec.hop : 0;
  Eigen::Index s_hi = i / spec.hop;
  if (s_hi > spec.num_chunks - 1) s_hi = spec.num_chunks - 1;
  return static_cast<int>(s_hi - s_lo + 1);
}

}  // namespace

SegmentSpec make_segment_spec(Eigen::Index rows, int chunk) {
  if (chunk < 2 || chunk % 2 != 0) {
    throw std::invalid_argument("segment: chunk length must be even and >= 2");
  }
  if (rows < 1) throw std::invalid_argument("segment: empty sequence");
  SegmentSpec spec;
  spec.chunk = chunk;
  spec.hop = chunk / 2;
  spec.front_pad = spec.hop;
  spec.rows = rows;
  const Eigen::Index needed = spec.front_pad + rows;
  Eigen::Index num_chunks = 1;
  if (needed > chunk) {
    num_chunks = 1 + (needed - chunk + spec.hop - 1) / spec.hop;
  }
  spec.num_chunks = static_cast<int>(num_chunks);
  spec.padded_rows = chunk + (num_chunks - 1) * spec.hop;
  return spec;
}

std::vector<Mat> segment_rows(const Mat& x, const SegmentSpec& spec) {
  if (x.rows() != spec.rows) throw std::invalid_argument("segment: row count mismatch");
  Mat padded = Mat::Zero(spec.padded_rows, x.cols());
  padded.middleRows(spec.front_pad, spec.rows) = x;
  std::vector<Mat> chunks(spec.num_chunks);
  for (int s = 0; s < spec.num_chunks; ++s) {
    chunks[s] = padded.middleRows(static_cast<Eigen::Index>(s) * spec.hop, spec.chunk);
  }
  return chunks;
}

Mat segment_rows_backward(const std::vector<Mat>& dchunks, const SegmentSpec& spec) {
  if (static_cast<int>(dchunks.size()) != spec.num_chunks) {
    throw std::invalid_argument("segment backward: chunk count mismatch");
  }
  Mat dpadded = Mat::Zero(spec.padded_rows, dchunks[0].cols());
  for (int s = 0; s < spec.num_chunks; ++s) {
    dpadded.middleRows(static_cast<Eigen::Index>(s) * spec.hop, spec.chunk) += dchunks[s];
  }
  return dpadded.middleRows(spec.front_pad, spec.rows);
}

Mat merge_rows(const std::vector<Mat>& chunks, const SegmentSpec& spec) {
  if (static_cast<int>(chunks.size()) != spec.num_chunks) {
    throw std::invalid_argument("merge: chunk count mismatch");
  }
  Mat padded = Mat::Zero(spec.padded_rows, chunks[0].cols());
  for (int s = 0; s < spec.num_chunks; ++s) {
    padded.middleRows(static_cast<Eigen::Index>(s) * spec.hop, spec.chunk) += chunks[s];
  }
  for (Eigen::Index i = 0; i < spec.padded_rows; ++i) {
    padded.row(i) /= static_cast<double>(coverage_at(i, spec));
  }
  return padded.middleRows(spec.front_pad, spec.rows);
}

std::vector<Mat> merge_rows_backward(const Mat& dx, const SegmentSpec& spec) {
  if (dx.rows() != spec.rows) throw std::invalid_argument("merge backward: row count mismatch");
  Mat dpadded = Mat::Zero(spec.padded_rows, dx.cols());
  dpadded.middleRows(spec.front_pad, spec.rows) = dx;
  for (Eigen::Index i = 0; i < spec.padded_rows; ++i) {
    dpadded.row(i) /= static_cast<double>(coverage_at(i, spec));
  }
  std::vector<Mat> dchunks(spec.num_chunks);
  for (int s = 0; s < spec.num_chunks; ++s) {
    dchunks[s] = dpadded.middleRows(static_cast<Eigen::Index>(s) * spec.hop, spec.chunk);
  }
  return dchunks;
}

DprnnBlock::DprnnBlock(int width, int hidden, Rng& rng)
    : intra_rnn_(width, hidden, rng),
      inter_rnn_(width, hidden, rng),
      intra_proj_(2 * hidden, width, rng),
      inter_proj_(2 * hidden, width, rng),
      intra_norm_(width),
      inter_norm_(width) {
  nn::prefix_params("intra_rnn.", intra_rnn_.params());
  nn::prefix_params("inter_rnn.", inter_rnn_.params());
  nn::prefix_params("intra_proj.", intra_proj_.params());
  nn::prefix_params("inter_proj.", inter_proj_.params());
  nn::prefix_params("intra_norm.", intra_norm_.params());
  nn::prefix_params("inter_norm.", inter_norm_.params());
}

std::vector<Mat> DprnnBlock::forward(const std::vector<Mat>& chunks, Cache* cache) const {
  const int S = static_cast<int>(chunks.size());
  if (S == 0) throw std::invalid_argument("DprnnBlock: no chunks");
  const Eigen::Index Q = chunks[0].rows();
  const Eigen::Index F = chunks[0].cols();
  if (cache != nullptr) {
    cache->intra.resize(S);
    cache->inter.resize(Q);
  }

  std::vector<Mat> out(S);
  for (int s = 0; s < S; ++s) {
    PathCache* pc = cache ? &cache->intra[s] : nullptr;
    Mat h = intra_rnn_.forward(chunks[s], pc ? &pc->rnn : nullptr);
    Mat p = intra_proj_.forward(h, pc ? &pc->proj : nullptr);
    out[s] = chunks[s] + intra_norm_.forward(p, pc ? &pc->norm : nullptr);
  }

  Mat seq(S, F);
  for (Eigen::Index q = 0; q < Q; ++q) {
    for (int s = 0; s < S; ++s) seq.row(s) = out[s].row(q);
    PathCache* pc = cache ? &cache->inter[q] : nullptr;
    Mat h = inter_rnn_.forward(seq, pc ? &pc->rnn : nullptr);
    Mat p = inter_proj_.forward(h, pc ? &pc->proj : nullptr);
    Mat z = seq + inter_norm_.forward(p, pc ? &pc->norm : nullptr);
    for (int s = 0; s < S; ++s) out[s].row(q) = z.row(s);
  }
  return out;
}

std::vector<Mat> DprnnBlock::backward(const Cache& cache, const std::vector<Mat>& dout) {
  const int S = static_cast<int>(cache.intra.size());
  const Eigen::Index Q = static_cast<Eigen::Index>(cache.inter.size());
  if (static_cast<int>(dout.size()) != S) {
    throw std::invalid_argument("DprnnBlock backward: chunk count mismatch");
  }
  const Eigen::Index F = dout[0].cols();

  // Inter path: z = seq + norm(proj(rnn(seq))).
  std::vector<Mat> dafter = dout;  // identity part of the residual
  Mat dz(S, F);
  for (Eigen::Index q = 0; q < Q; ++q) {
    for (int s = 0; s < S; ++s) dz.row(s) = dout[s].row(q);
    const PathCache& pc = cache.inter[q];
    Mat dp = inter_norm_.backward(pc.norm, dz);
    Mat dh = inter_proj_.backward(pc.proj, dp);
    Mat dseq = inter_rnn_.backward(pc.rnn, dh);
    for (int s = 0; s < S; ++s) dafter[s].row(q) += dseq.row(s);
  }

  // Intra path: out = chunk + norm(proj(rnn(chunk))).
  std::vector<Mat> dchunks(S);
  for (int s = 0; s < S; ++s) {
    const PathCache& pc = cache.intra[s];
    Mat dp = intra_norm_.backward(pc.norm, dafter[s]);
    Mat dh = intra_proj_.backward(pc.proj, dp);
    dchunks[s] = dafter[s] + intra_rnn_.backward(pc.rnn, dh);
  }
  return dchunks;
}

std::vector<nn::Param*> DprnnBlock::params() {
  std::vector<nn::Param*> out;
  for (nn::Param* p : intra_rnn_.params()) out.push_back(p);
  for (nn::Param* p : intra_proj_.params()) out.push_back(p);
  for (nn::Param* p : intra_norm_.params()) out.push_back(p);
  for (nn::Param* p : inter_rnn_.params()) out.push_back(p);
  for (nn::Param* p : inter_proj_.params()) out.push_back(p);
  for (nn::Param* p : inter_norm_.params()) out.push_back(p);
  return out;
}

SeparatorStack::SeparatorStack(const SeparatorOptions& opts, Rng& rng)
    : opts_(opts),
      in_proj_(opts.in_dim, opts.width, rng),
      in_act_(1),
      head_(opts.width, opts.out_dim, rng) {
  if (opts.in_dim < 1 || opts.width < 1 || opts.hidden < 1 || opts.out_dim < 1 ||
      opts.num_blocks < 1) {
    throw std::invalid_argument("SeparatorStack: bad dimensions");
  }
  if (opts.use_tac && opts.tac_hidden < 1) {
    throw std::invalid_argument("SeparatorStack: tac_hidden required with use_tac");
  }
  blocks_.reserve(opts.num_blocks);
  tacs_.reserve(opts.use_tac ? opts.num_blocks : 0);
  for (int b = 0; b < opts.num_blocks; ++b) {
    blocks_.emplace_back(opts.width, opts.hidden, rng);
    nn::prefix_params("block" + std::to_string(b) + ".", blocks_.back().params());
    if (opts.use_tac) {
      tacs_.emplace_back(opts.width, opts.tac_hidden, rng);
      nn::prefix_params("tac" + std::to_string(b) + ".", tacs_.back().params());
    }
  }
  nn::prefix_params("in_proj.", in_proj_.params());
  nn::prefix_params("in_act.", in_act_.params());
  nn::prefix_params("head.", head_.params());
}

std::vector<Mat> SeparatorStack::forward(const std::vector<Mat>& streams, Cache* cache) const {
  const int N = static_cast<int>(streams.size());
  if (N == 0) throw std::invalid_argument("SeparatorStack: no streams");
  for (const Mat& x : streams) {
    if (x.cols() != opts_.in_dim || x.rows() != streams[0].rows()) {
      throw std::invalid_argument("SeparatorStack: stream shape mismatch");
    }
  }
  const SegmentSpec seg = make_segment_spec(streams[0].rows(), opts_.chunk_len);
  if (cache != nullptr) {
    cache->seg = seg;
    cache->in_lin.resize(N);
    cache->in_act.resize(N);
    cache->blocks.assign(opts_.num_blocks, std::vector<DprnnBlock::Cache>(N));
    cache->tacs.assign(opts_.use_tac ? opts_.num_blocks : 0,
                       std::vector<tac::TacModule::Cache>(seg.num_chunks));
    cache->head_lin.resize(N);
    cache->head_act.resize(N);
  }

  std::vector<std::vector<Mat>> chunks(N);
  for (int i = 0; i < N; ++i) {
    Mat u = in_act_.forward(in_proj_.forward(streams[i], cache ? &cache->in_lin[i] : nullptr),
                            cache ? &cache->in_act[i] : nullptr);
    chunks[i] = segment_rows(u, seg);
  }

  std::vector<Mat> gathered(N);
  for (int b = 0; b < opts_.num_blocks; ++b) {
    for (int i = 0; i < N; ++i) {
      chunks[i] = blocks_[b].forward(chunks[i], cache ? &cache->blocks[b][i] : nullptr);
    }
    if (opts_.use_tac) {
      for (int s = 0; s < seg.num_chunks; ++s) {
        for (int i = 0; i < N; ++i) gathered[i] = std::move(chunks[i][s]);
        std::vector<Mat> mixed =
            tacs_[b].forward(gathered, cache ? &cache->tacs[b][s] : nullptr);
        for (int i = 0; i < N; ++i) chunks[i][s] = std::move(mixed[i]);
      }
    }
  }

  std::vector<Mat> out(N);
  for (int i = 0; i < N; ++i) {
    Mat merged = merge_rows(chunks[i], seg);
    out[i] = head_act_.forward(head_.forward(merged, cache ? &cache->head_lin[i] : nullptr),
                               cache ? &cache->head_act[i] : nullptr);
  }
  return out;
}

std::vector<Mat> SeparatorStack::backward(const Cache& cache, const std::vector<Mat>& dout) {
  const int N = static_cast<int>(cache.in_lin.size());
  if (static_cast<int>(dout.size()) != N) {
    throw std::invalid_argument("SeparatorStack backward: stream count mismatch");
  }
  const SegmentSpec& seg = cache.seg;

  std::vector<std::vector<Mat>> dchunks(N);
  for (int i = 0; i < N; ++i) {
    Mat dmerged = head_.backward(cache.head_lin[i], nn::Tanh::backward(cache.head_act[i], dout[i]));
    dchunks[i] = merge_rows_backward(dmerged, seg);
  }

  std::vector<Mat> gathered(N);
  for (int b = opts_.num_blocks - 1; b >= 0; --b) {
    if (opts_.use_tac) {
      for (int s = 0; s < seg.num_chunks; ++s) {
        for (int i = 0; i < N; ++i) gathered[i] = std::move(dchunks[i][s]);
        std::vector<Mat> dmixed = tacs_[b].backward(cache.tacs[b][s], gathered);
        for (int i = 0; i < N; ++i) dchunks[i][s] = std::move(dmixed[i]);
      }
    }
    for (int i = 0; i < N; ++i) {
      dchunks[i] = blocks_[b].backward(cache.blocks[b][i], dchunks[i]);
    }
  }

  std::vector<Mat> dstreams(N);
  for (int i = 0; i < N; ++i) {
    Mat du = segment_rows_backward(dchunks[i], seg);
    dstreams[i] = in_proj_.backward(cache.in_lin[i], in_act_.backward(cache.in_act[i], du));
  }
  return dstreams;
}

std::vector<nn::Param*> SeparatorStack::params() {
  std::vector<nn::Param*> out;
  for (nn::Param* p : in_proj_.params()) out.push_back(p);
  for (nn::Param* p : in_act_.params()) out.push_back(p);
  for (size_t b = 0; b < blocks_.size(); ++b) {
    for (nn::Param* p : blocks_[b].params()) out.push_back(p);
    if (opts_.use_tac) {
      for (nn::Param* p : tacs_[b].params()) out.push_back(p);
    }
  }
  for (nn::Param* p : head_.params()) out.push_back(p);
  return out;
}

}  // namespace model
}  // namespace fasnet

// core/src/nn/lstm.cc

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

#include "fasnet/nn/lstm.h"

#include <cmath>
#include <stdexcept>

namespace fasnet {
namespace nn {

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

Mat reverse_rows(const Mat& m) { return m.colwise().reverse(); }

}  // namespace

Lstm::Lstm(int in_dim, int hidden_dim, Rng& rng)
    : wx_("wx", in_dim, 4 * hidden_dim),
      wh_("wh", hidden_dim, 4 * hidden_dim),
      b_("b", 1, 4 * hidden_dim),
      hidden_(hidden_dim) {
  fill_uniform(&wx_.value, rng, 1.0 / std::sqrt(static_cast<double>(in_dim)));
  fill_uniform(&wh_.value, rng, 1.0 / std::sqrt(static_cast<double>(hidden_dim)));
  b_.value.setZero();
  b_.value.block(0, hidden_, 1, hidden_).setOnes();  // forget-gate bias
}

Mat Lstm::forward(const Mat& seq, Cache* cache) const {
  const Eigen::Index num_steps = seq.rows();
  if (num_steps < 1) {
    throw std::invalid_argument("Lstm: empty sequence");
  }
  if (seq.cols() != wx_.value.rows()) {
    throw std::invalid_argument("Lstm: input dim mismatch");
  }
  const int H = hidden_;

  // Input contribution for all steps in one product; the recurrence below
  // only adds the hidden-state term.
  Mat preact = seq * wx_.value;
  preact.rowwise() += b_.value.row(0);

  Mat gate_i(num_steps, H), gate_f(num_steps, H), gate_g(num_steps, H),
      gate_o(num_steps, H), cell(num_steps, H), cell_tanh(num_steps, H),
      hidden(num_steps, H);

  Eigen::RowVectorXd h_prev = Eigen::RowVectorXd::Zero(H);
  Eigen::RowVectorXd c_prev = Eigen::RowVectorXd::Zero(H);
  Eigen::RowVectorXd a(4 * H);
  for (Eigen::Index t = 0; t < num_steps; ++t) {
    a = preact.row(t);
    a.noalias() += h_prev * wh_.value;
    for (int k = 0; k < H; ++k) {
      const double iv = sigmoid(a[k]);
      const double fv = sigmoid(a[H + k]);
      const double gv = std::tanh(a[2 * H + k]);
      const double ov = sigmoid(a[3 * H + k]);
      const double cv = fv * c_prev[k] + iv * gv;
      const double ct = std::tanh(cv);
      gate_i(t, k) = iv;
      gate_f(t, k) = fv;
      gate_g(t, k) = gv;
      gate_o(t, k) = ov;
      cell(t, k) = cv;
      cell_tanh(t, k) = ct;
      hidden(t, k) = ov * ct;
    }
    h_prev = hidden.row(t);
    c_prev = cell.row(t);
  }

  if (cache != nullptr) {
    cache->input = seq;
    cache->gate_i = std::move(gate_i);
    cache->gate_f = std::move(gate_f);
    cache->gate_g = std::move(gate_g);
    cache->gate_o = std::move(gate_o);
    cache->cell = std::move(cell);
    cache->cell_tanh = std::move(cell_tanh);
    cache->hidden = hidden;
  }
  return hidden;
}

Mat Lstm::backward(const Cache& cache, const Mat& dhidden) {
  const Eigen::Index num_steps = cache.input.rows();
  const int H = hidden_;
  if (dhidden.rows() != num_steps || dhidden.cols() != H) {
    throw std::invalid_argument("Lstm backward: gradient shape mismatch");
  }

  Mat dpreact(num_steps, 4 * H);
  Eigen::RowVectorXd dh_next = Eigen::RowVectorXd::Zero(H);
  Eigen::RowVectorXd dc_next = Eigen::RowVectorXd::Zero(H);

  for (Eigen::Index t = num_steps - 1; t >= 0; --t) {
    for (int k = 0; k < H; ++k) {
      const double dh = dhidden(t, k) + dh_next[k];
      const double ov = cache.gate_o(t, k);
      const double ct = cache.cell_tanh(t, k);
      double dc = dc_next[k] + dh * ov * (1.0 - ct * ct);
      const double dov = dh * ct;
      const double iv = cache.gate_i(t, k);
      const double fv = cache.gate_f(t, k);
      const double gv = cache.gate_g(t, k);
      const double c_prev = (t > 0) ? cache.cell(t - 1, k) : 0.0;
      const double div = dc * gv;
      const double dgv = dc * iv;
      const double dfv = dc * c_prev;
      dpreact(t, k) = div * iv * (1.0 - iv);
      dpreact(t, H + k) = dfv * fv * (1.0 - fv);
      dpreact(t, 2 * H + k) = dgv * (1.0 - gv * gv);
      dpreact(t, 3 * H + k) = dov * ov * (1.0 - ov);
      dc_next[k] = dc * fv;
    }
    dh_next.noalias() = dpreact.row(t) * wh_.value.transpose();
  }

  wx_.grad.noalias() += cache.input.transpose() * dpreact;
  if (num_steps > 1) {
    wh_.grad.noalias() +=
        cache.hidden.topRows(num_steps - 1).transpose() * dpreact.bottomRows(num_steps - 1);
  }
  b_.grad.row(0) += dpreact.colwise().sum();
  return dpreact * wx_.value.transpose();
}

std::vector<Param*> Lstm::params() { return {&wx_, &wh_, &b_}; }

BiLstm::BiLstm(int in_dim, int hidden_dim, Rng& rng)
    : fw_(in_dim, hidden_dim, rng), bw_(in_dim, hidden_dim, rng) {
  prefix_params("fw.", fw_.params());
  prefix_params("bw.", bw_.params());
}

Mat BiLstm::forward(const Mat& seq, Cache* cache) const {
  Lstm::Cache local_fw, local_bw;
  Lstm::Cache* cfw = cache ? &cache->fw : &local_fw;
  Lstm::Cache* cbw = cache ? &cache->bw : &local_bw;
  Mat out_fw = fw_.forward(seq, cfw);
  Mat out_bw = reverse_rows(bw_.forward(reverse_rows(seq), cbw));
  Mat out(seq.rows(), out_fw.cols() + out_bw.cols());
  out << out_fw, out_bw;
  return out;
}

Mat BiLstm::backward(const Cache& cache, const Mat& dy) {
  const int H = fw_.hidden_dim();
  Mat dx = fw_.backward(cache.fw, dy.leftCols(H));
  dx += reverse_rows(bw_.backward(cache.bw, reverse_rows(dy.rightCols(H))));
  return dx;
}

std::vector<Param*> BiLstm::params() {
  std::vector<Param*> out = fw_.params();
  for (Param* p : bw_.params()) out.push_back(p);
  return out;
}

}  // namespace nn
}  // namespace fasnet

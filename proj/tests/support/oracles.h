// tests/support/oracles.h

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

// Reference implementations written as plainly as possible, against which
// the production code is tested. Loops over scalars, no shared helpers.

#ifndef FASNET_TESTS_SUPPORT_ORACLES_H_
#define FASNET_TESTS_SUPPORT_ORACLES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "fasnet/common.h"
#include "fasnet/sim/rir.h"

namespace fasnet {
namespace oracle {

// out[n] = sum_k filter[k] * context[n + k], n in [0, frame_len).
Vec apply_filter(const Vec& context, const Vec& filter, int frame_len);

// Cosine similarity of `center` against every frame_len window of `context`.
Vec ncc(const Vec& center, const Vec& context, double norm_eps);

// The channel-communication layer written directly from its definition:
// f_i = prelu(z_i P + bp); g = prelu(mean_i f_i R + br);
// out_i = z_i + prelu([f_i, g] S + bs). Weights are row-major (in x out),
// biases are 1 x out, slopes are scalars.
std::vector<Mat> tac(const std::vector<Mat>& z, const Mat& pw, const Mat& pb,
                     double p_slope, const Mat& rw, const Mat& rb,
                     double r_slope, const Mat& sw, const Mat& sb,
                     double s_slope);

// Scale-invariant SNR in dB, independent arithmetic.
double si_snr(const Vec& est, const Vec& target);

// Exhaustive assignment search by recursion; returns the minimum over all
// permutations of mean_j(-si_snr(est_j, target_perm[j])).
double upit_exhaustive(const std::vector<Vec>& ests,
                       const std::vector<Vec>& targets,
                       std::vector<int>* best_perm);

// Mirror-image room response restricted to reflection order <= max_order:
// per-axis image coordinates are prepared up front, then combined.
Vec rir_images(const sim::RoomSpec& room, double beta,
               const Eigen::Vector3d& src, const Eigen::Vector3d& mic,
               double fs, int num_taps, int max_order);

// Shortest source-image distance whose reflection order exceeds max_order;
// bounds how many taps of the full response the restricted oracle covers.
double min_image_distance_above_order(const sim::RoomSpec& room,
                                      const Eigen::Vector3d& src,
                                      const Eigen::Vector3d& mic,
                                      int max_order);

// Hand-written condition bins.
int overlap_bucket(double ratio);
int angle_bucket(double degrees);

// FNV-1a over a file / over every regular file under a directory (sorted
// relative paths, path bytes mixed in), for bit-identity comparisons.
uint64_t hash_file(const std::string& path);
uint64_t hash_tree(const std::string& root);

// Test data helpers.
Vec random_vec(Rng& rng, Eigen::Index n, double scale);
Mat random_mat(Rng& rng, Eigen::Index rows, Eigen::Index cols, double scale);

}  // namespace oracle
}  // namespace fasnet

#endif  // FASNET_TESTS_SUPPORT_ORACLES_H_

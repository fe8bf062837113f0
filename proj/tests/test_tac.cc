// tests/test_tac.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>

#include "fasnet/nn/grad_check.h"
#include "fasnet/tac/tac.h"
#include "support/oracles.h"

using namespace fasnet;

namespace {

std::map<std::string, const Mat*> param_map(tac::TacModule& module) {
  std::map<std::string, const Mat*> out;
  for (const nn::Param* p : module.params()) {
    out[p->name] = &p->value;
  }
  return out;
}

std::vector<Mat> random_inputs(Rng& rng, int channels, int rows, int cols) {
  std::vector<Mat> z;
  for (int i = 0; i < channels; ++i) {
    z.push_back(oracle::random_mat(rng, rows, cols, 1.0));
  }
  return z;
}

}  // namespace

TEST_CASE("tac: matches the direct-formula oracle") {
  Rng rng(21);
  tac::TacModule module(5, 7, rng);
  const auto params = param_map(module);
  for (const int channels : {1, 2, 4}) {
    const std::vector<Mat> z = random_inputs(rng, channels, 6, 5);
    const std::vector<Mat> got = module.forward(z);
    const std::vector<Mat> want = oracle::tac(
        z, *params.at("p.w"), *params.at("p.b"), (*params.at("p_act.a"))(0, 0),
        *params.at("r.w"), *params.at("r.b"), (*params.at("r_act.a"))(0, 0),
        *params.at("s.w"), *params.at("s.b"), (*params.at("s_act.a"))(0, 0));
    REQUIRE(got.size() == z.size());
    for (size_t i = 0; i < got.size(); ++i) {
      CHECK((got[i] - want[i]).lpNorm<Eigen::Infinity>() <= 1e-12);
    }
  }
}

TEST_CASE("tac: permuting channels permutes outputs") {
  Rng rng(22);
  tac::TacModule module(4, 6, rng);
  const std::vector<Mat> z = random_inputs(rng, 4, 5, 4);
  const std::vector<Mat> base = module.forward(z);

  std::vector<int> perm = {2, 0, 3, 1};
  std::vector<Mat> shuffled(z.size());
  for (size_t i = 0; i < z.size(); ++i) {
    shuffled[i] = z[static_cast<size_t>(perm[i])];
  }
  const std::vector<Mat> permuted = module.forward(shuffled);
  for (size_t i = 0; i < z.size(); ++i) {
    const double denom = base[static_cast<size_t>(perm[i])].norm();
    const double diff =
        (permuted[i] - base[static_cast<size_t>(perm[i])]).norm();
    CHECK(diff / denom <= 1e-10);
  }
}

TEST_CASE("tac: one parameter set serves any channel count") {
  Rng rng(23);
  tac::TacModule module(3, 5, rng);
  for (int channels = 1; channels <= 6; ++channels) {
    const std::vector<Mat> z = random_inputs(rng, channels, 4, 3);
    const std::vector<Mat> out = module.forward(z);
    REQUIRE(out.size() == static_cast<size_t>(channels));
    for (const Mat& m : out) {
      CHECK(m.rows() == 4);
      CHECK(m.cols() == 3);
      CHECK(all_finite(m));
    }
  }
}

TEST_CASE("tac: zeroed concat path reduces to the identity") {
  Rng rng(24);
  tac::TacModule module(4, 5, rng);
  for (nn::Param* p : module.params()) {
    if (p->name == "s.w" || p->name == "s.b") {
      p->value.setZero();
    }
  }
  const std::vector<Mat> z = random_inputs(rng, 3, 4, 4);
  const std::vector<Mat> out = module.forward(z);
  for (size_t i = 0; i < z.size(); ++i) {
    CHECK((out[i] - z[i]).lpNorm<Eigen::Infinity>() == 0.0);
  }
}

TEST_CASE("tac: gradients match finite differences") {
  for (uint64_t seed : {25u, 26u}) {
    Rng rng(seed);
    tac::TacModule module(4, 6, rng);
    const std::vector<Mat> z = random_inputs(rng, 3, 5, 4);
    std::vector<Mat> proj;
    for (int i = 0; i < 3; ++i) {
      proj.push_back(oracle::random_mat(rng, 5, 4, 1.0));
    }
    auto loss = [&](bool with_grad) {
      tac::TacModule::Cache cache;
      const std::vector<Mat> out = module.forward(z, &cache);
      double value = 0.0;
      for (size_t i = 0; i < out.size(); ++i) {
        value += (out[i].array() * proj[i].array()).sum();
      }
      if (with_grad) {
        nn::zero_grads(module.params());
        module.backward(cache, proj);
      }
      return value;
    };
    const nn::GradCheckReport report =
        nn::check_gradients(module.params(), loss);
    CHECK_MESSAGE(report.passed, nn::format_report(report));
  }
}

TEST_CASE("tac: input gradients flow through the residual and mean paths") {
  Rng rng(27);
  tac::TacModule module(3, 4, rng);
  const std::vector<Mat> z = random_inputs(rng, 2, 3, 3);
  std::vector<Mat> proj;
  for (int i = 0; i < 2; ++i) {
    proj.push_back(oracle::random_mat(rng, 3, 3, 1.0));
  }
  tac::TacModule::Cache cache;
  module.forward(z, &cache);
  const std::vector<Mat> dz = module.backward(cache, proj);
  REQUIRE(dz.size() == 2);

  const double step = 1e-6;
  for (int i = 0; i < 2; ++i) {
    for (Eigen::Index r = 0; r < 3; ++r) {
      for (Eigen::Index c = 0; c < 3; ++c) {
        std::vector<Mat> lo = z;
        std::vector<Mat> hi = z;
        lo[static_cast<size_t>(i)](r, c) -= step;
        hi[static_cast<size_t>(i)](r, c) += step;
        double f_lo = 0.0;
        double f_hi = 0.0;
        const std::vector<Mat> out_lo = module.forward(lo);
        const std::vector<Mat> out_hi = module.forward(hi);
        for (size_t k = 0; k < out_lo.size(); ++k) {
          f_lo += (out_lo[k].array() * proj[k].array()).sum();
          f_hi += (out_hi[k].array() * proj[k].array()).sum();
        }
        const double fd = (f_hi - f_lo) / (2.0 * step);
        CHECK(dz[static_cast<size_t>(i)](r, c) ==
              doctest::Approx(fd).epsilon(1e-5));
      }
    }
  }
}

// tests/test_nn.cc

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

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>

#include "fasnet/nn/grad_check.h"
#include "fasnet/nn/layers.h"
#include "fasnet/nn/lstm.h"
#include "fasnet/nn/tensor_io.h"
#include "support/oracles.h"

using namespace fasnet;

namespace {

// Projection loss: scalar = sum(forward(x) .* proj); grads via backward.
template <typename Layer>
nn::GradCheckReport check_layer(Layer& layer, const Mat& x, Rng& rng,
                                double tolerance) {
  const Mat proj = oracle::random_mat(rng, layer.forward(x).rows(),
                                      layer.forward(x).cols(), 1.0);
  auto loss = [&](bool with_grad) {
    typename Layer::Cache cache;
    const Mat y = layer.forward(x, &cache);
    if (with_grad) {
      nn::zero_grads(layer.params());
      layer.backward(cache, proj);
    }
    return (y.array() * proj.array()).sum();
  };
  nn::GradCheckOptions opts;
  opts.tolerance = tolerance;
  return nn::check_gradients(layer.params(), loss, opts);
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("linear: gradients match finite differences") {
  for (uint64_t seed : {1u, 2u}) {
    Rng rng(seed);
    nn::Linear layer(6, 4, rng);
    const Mat x = oracle::random_mat(rng, 7, 6, 1.0);
    const nn::GradCheckReport report = check_layer(layer, x, rng, 1e-6);
    CHECK_MESSAGE(report.passed, nn::format_report(report));
  }
}

TEST_CASE("linear: bias-free variant has no bias parameter") {
  Rng rng(3);
  nn::Linear layer(5, 2, rng, /*bias=*/false);
  CHECK(layer.params().size() == 1);
  const Mat x = Mat::Zero(3, 5);
  CHECK(layer.forward(x).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("prelu: gradients cover both sides of the kink") {
  Rng rng(4);
  nn::PReLU layer(1, 0.25);
  // Keep inputs away from zero so the finite difference never crosses it.
  Mat x = oracle::random_mat(rng, 6, 5, 1.0);
  x = x.unaryExpr([](double v) { return v >= 0.0 ? v + 0.1 : v - 0.1; });
  const nn::GradCheckReport report = check_layer(layer, x, rng, 1e-6);
  CHECK_MESSAGE(report.passed, nn::format_report(report));
}

TEST_CASE("prelu: negative slope applies only below zero") {
  nn::PReLU layer(1, 0.5);
  Mat x(1, 4);
  x << -2.0, -0.5, 0.5, 2.0;
  const Mat y = layer.forward(x);
  CHECK(y(0, 0) == -1.0);
  CHECK(y(0, 1) == -0.25);
  CHECK(y(0, 2) == 0.5);
  CHECK(y(0, 3) == 2.0);
}

TEST_CASE("layer_norm: gradients match finite differences") {
  for (uint64_t seed : {5u, 6u}) {
    Rng rng(seed);
    nn::LayerNorm layer(8);
    const Mat x = oracle::random_mat(rng, 5, 8, 2.0);
    const nn::GradCheckReport report = check_layer(layer, x, rng, 1e-6);
    CHECK_MESSAGE(report.passed, nn::format_report(report));
  }
}

TEST_CASE("layer_norm: rows come out zero-mean unit-variance before affine") {
  Rng rng(7);
  nn::LayerNorm layer(16);
  const Mat x = oracle::random_mat(rng, 4, 16, 3.0);
  const Mat y = layer.forward(x);
  // Fresh layers have gain 1, offset 0, so the output is the normalization.
  // The variance floor makes the output variance v / (v + eps), not 1.
  for (Eigen::Index r = 0; r < y.rows(); ++r) {
    CHECK(std::abs(y.row(r).mean()) <= 1e-12);
    const double mean = x.row(r).mean();
    const double v = (x.row(r).array() - mean).square().mean();
    const double var = y.row(r).array().square().mean();
    CHECK(var == doctest::Approx(v / (v + nn::LayerNorm::kEps)).epsilon(1e-9));
  }
}

TEST_CASE("tanh: output cached and reused in backward") {
  Rng rng(8);
  nn::Tanh layer;
  const Mat x = oracle::random_mat(rng, 3, 4, 2.0);
  nn::Tanh::Cache cache;
  const Mat y = layer.forward(x, &cache);
  const Mat dy = oracle::random_mat(rng, 3, 4, 1.0);
  const Mat dx = nn::Tanh::backward(cache, dy);
  const Mat want = (dy.array() * (1.0 - y.array().square())).matrix();
  CHECK((dx - want).lpNorm<Eigen::Infinity>() <= 1e-15);
}

TEST_CASE("lstm: unidirectional gradients match finite differences") {
  for (uint64_t seed : {9u, 10u}) {
    Rng rng(seed);
    nn::Lstm layer(4, 3, rng);
    const Mat x = oracle::random_mat(rng, 6, 4, 1.0);
    const nn::GradCheckReport report = check_layer(layer, x, rng, 1e-6);
    CHECK_MESSAGE(report.passed, nn::format_report(report));
  }
}

TEST_CASE("lstm: forget gate starts open") {
  Rng rng(11);
  nn::Lstm layer(4, 3, rng);
  const std::vector<nn::Param*> params = layer.params();
  const nn::Param* bias = nullptr;
  for (const nn::Param* p : params) {
    if (p->name == "b") {
      bias = p;
    }
  }
  REQUIRE(bias != nullptr);
  // Gate order [input, forget, cell, output]: forget slice is ones.
  CHECK(bias->value.block(0, 3, 1, 3).minCoeff() == 1.0);
  CHECK(bias->value.block(0, 3, 1, 3).maxCoeff() == 1.0);
  CHECK(bias->value.block(0, 0, 1, 3).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(bias->value.block(0, 6, 1, 6).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("bilstm: gradients match finite differences") {
  for (uint64_t seed : {12u, 13u}) {
    Rng rng(seed);
    nn::BiLstm layer(3, 2, rng);
    const Mat x = oracle::random_mat(rng, 5, 3, 1.0);
    const nn::GradCheckReport report = check_layer(layer, x, rng, 1e-6);
    CHECK_MESSAGE(report.passed, nn::format_report(report));
  }
}

TEST_CASE("bilstm: output is forward and reversed-backward halves") {
  Rng rng(14);
  nn::BiLstm layer(3, 2, rng);
  const Mat x = oracle::random_mat(rng, 5, 3, 1.0);
  const Mat y = layer.forward(x);
  REQUIRE(y.rows() == 5);
  REQUIRE(y.cols() == 4);
  // The last forward state must depend on every input row: perturbing row 0
  // changes row 4 of the forward half.
  Mat x2 = x;
  x2(0, 0) += 0.5;
  const Mat y2 = layer.forward(x2);
  CHECK((y.row(4).head(2) - y2.row(4).head(2)).lpNorm<Eigen::Infinity>() >
        0.0);
  // And the backward half at row 0 must see row 4.
  Mat x3 = x;
  x3(4, 0) += 0.5;
  const Mat y3 = layer.forward(x3);
  CHECK((y.row(0).tail(2) - y3.row(0).tail(2)).lpNorm<Eigen::Infinity>() >
        0.0);
}

TEST_CASE("grad_check: flags a corrupted gradient") {
  Rng rng(15);
  nn::Linear layer(4, 3, rng);
  const Mat x = oracle::random_mat(rng, 5, 4, 1.0);
  const Mat proj = oracle::random_mat(rng, 5, 3, 1.0);
  auto loss = [&](bool with_grad) {
    nn::Linear::Cache cache;
    const Mat y = layer.forward(x, &cache);
    if (with_grad) {
      nn::zero_grads(layer.params());
      layer.backward(cache, proj);
      layer.params()[0]->grad(0, 0) += 0.5;  // sabotage
    }
    return (y.array() * proj.array()).sum();
  };
  const nn::GradCheckReport report = nn::check_gradients(layer.params(), loss);
  CHECK_FALSE(report.passed);
  CHECK(report.max_rel_error > 0.1);
}

TEST_CASE("grad_check: rejects non-finite losses") {
  Rng rng(16);
  nn::Linear layer(2, 2, rng);
  auto loss = [&](bool) { return std::numeric_limits<double>::quiet_NaN(); };
  CHECK_THROWS_AS(nn::check_gradients(layer.params(), loss), NumericError);
}

TEST_CASE("tensor_io: bundles round-trip byte-identically") {
  Rng rng(17);
  nn::TensorBundle bundle;
  bundle.meta = "config.alpha = 1\nstep = 3\n";
  bundle.tensors.emplace_back("a", oracle::random_mat(rng, 3, 4, 1.0));
  bundle.tensors.emplace_back("b.weight", oracle::random_mat(rng, 1, 7, 1.0));
  Mat special(2, 2);
  special << 0.0, -0.0, 1.0 / 3.0, 1e-308;
  bundle.tensors.emplace_back("c", special);

  const std::string path1 = temp_path("fasnet_bundle_1.fnt");
  const std::string path2 = temp_path("fasnet_bundle_2.fnt");
  nn::write_tensor_bundle(path1, bundle);
  const nn::TensorBundle loaded = nn::read_tensor_bundle(path1);
  REQUIRE(loaded.tensors.size() == bundle.tensors.size());
  CHECK(loaded.meta == bundle.meta);
  for (size_t i = 0; i < bundle.tensors.size(); ++i) {
    CHECK(loaded.tensors[i].first == bundle.tensors[i].first);
    CHECK(std::memcmp(loaded.tensors[i].second.data(),
                      bundle.tensors[i].second.data(),
                      sizeof(double) *
                          static_cast<size_t>(
                              bundle.tensors[i].second.size())) == 0);
  }
  nn::write_tensor_bundle(path2, loaded);
  CHECK(oracle::hash_file(path1) == oracle::hash_file(path2));
  std::filesystem::remove(path1);
  std::filesystem::remove(path2);
}

TEST_CASE("tensor_io: find locates tensors by name") {
  nn::TensorBundle bundle;
  bundle.tensors.emplace_back("x", Mat::Ones(2, 2));
  CHECK(bundle.find("x") != nullptr);
  CHECK(bundle.find("y") == nullptr);
}

TEST_CASE("tensor_io: rejects truncation, bad magic, trailing bytes") {
  Rng rng(18);
  nn::TensorBundle bundle;
  bundle.tensors.emplace_back("t", oracle::random_mat(rng, 2, 3, 1.0));
  const std::string path = temp_path("fasnet_bundle_bad.fnt");
  nn::write_tensor_bundle(path, bundle);

  std::ifstream in(path, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  in.close();

  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << bytes.substr(0, bytes.size() - 5);
  }
  CHECK_THROWS_AS(nn::read_tensor_bundle(path), std::runtime_error);

  {
    std::string corrupt = bytes;
    corrupt[0] = 'X';
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << corrupt;
  }
  CHECK_THROWS_AS(nn::read_tensor_bundle(path), std::runtime_error);

  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << bytes << "junk";
  }
  CHECK_THROWS_AS(nn::read_tensor_bundle(path), std::runtime_error);

  std::filesystem::remove(path);
}

TEST_CASE("params: prefixing composes hierarchical names") {
  Rng rng(19);
  nn::Linear layer(2, 2, rng);
  auto params = layer.params();
  nn::prefix_params("block0.", params);
  CHECK(params[0]->name.rfind("block0.", 0) == 0);
}

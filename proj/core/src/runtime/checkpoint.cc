// core/src/runtime/checkpoint.cc

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

#include "fasnet/runtime/checkpoint.h"

#include <map>
#include <stdexcept>
#include <utility>

#include "fasnet/runtime/config_file.h"

namespace fasnet {
namespace runtime {

namespace {

constexpr char kConfigPrefix[] = "config.";
constexpr char kMomentM[] = "adam.m/";
constexpr char kMomentV[] = "adam.v/";

std::string make_meta(const model::FasnetConfig& config, int64_t step) {
  std::string meta;
  for (const auto& [key, value] : model::to_key_values(config)) {
    meta += kConfigPrefix + key + " = " + value + "\n";
  }
  meta += "step = " + std::to_string(step) + "\n";
  return meta;
}

const Mat& require_tensor(const nn::TensorBundle& bundle,
                          const std::string& name, Eigen::Index rows,
                          Eigen::Index cols) {
  const Mat* t = bundle.find(name);
  if (t == nullptr) {
    throw std::runtime_error("checkpoint: missing tensor '" + name + "'");
  }
  if (t->rows() != rows || t->cols() != cols) {
    throw std::runtime_error(
        "checkpoint: tensor '" + name + "' is " + std::to_string(t->rows()) +
        "x" + std::to_string(t->cols()) + ", model wants " +
        std::to_string(rows) + "x" + std::to_string(cols));
  }
  return *t;
}

}  // namespace

void save_checkpoint(const std::string& path,
                     const model::FasnetConfig& config, int64_t step,
                     const std::vector<nn::Param*>& params,
                     const AdamOptimizer* optimizer) {
  nn::TensorBundle bundle;
  bundle.meta = make_meta(config, step);
  bundle.tensors.reserve(params.size() * (optimizer != nullptr ? 3 : 1));
  for (const nn::Param* p : params) {
    bundle.tensors.emplace_back(p->name, p->value);
  }
  if (optimizer != nullptr) {
    const auto& opt_params = optimizer->params();
    if (opt_params.size() != params.size()) {
      throw std::invalid_argument(
          "checkpoint: optimizer tracks a different parameter set");
    }
    if (optimizer->steps_taken() != step) {
      throw std::invalid_argument(
          "checkpoint: step must equal the optimizer's step count");
    }
    for (size_t i = 0; i < params.size(); ++i) {
      bundle.tensors.emplace_back(kMomentM + params[i]->name,
                                  optimizer->first_moments()[i]);
      bundle.tensors.emplace_back(kMomentV + params[i]->name,
                                  optimizer->second_moments()[i]);
    }
  }
  nn::write_tensor_bundle(path, bundle);
}

CheckpointData read_checkpoint(const std::string& path) {
  CheckpointData out;
  out.bundle = nn::read_tensor_bundle(path);

  std::map<std::string, std::string> kv;
  try {
    kv = parse_key_values(out.bundle.meta);
  } catch (const std::exception& e) {
    throw std::runtime_error("checkpoint: bad metadata in " + path + ": " +
                             e.what());
  }
  std::map<std::string, std::string> config_kv;
  bool have_step = false;
  for (const auto& [key, value] : kv) {
    if (key.rfind(kConfigPrefix, 0) == 0) {
      config_kv.emplace(key.substr(sizeof(kConfigPrefix) - 1), value);
    } else if (key == "step") {
      out.step = parse_long(key, value);
      have_step = true;
    } else {
      throw std::runtime_error("checkpoint: unknown metadata key '" + key +
                               "' in " + path);
    }
  }
  if (!have_step) {
    throw std::runtime_error("checkpoint: metadata lacks step in " + path);
  }
  try {
    out.config = model::config_from_key_values(config_kv);
  } catch (const std::exception& e) {
    throw std::runtime_error("checkpoint: bad config in " + path + ": " +
                             e.what());
  }
  return out;
}

void apply_checkpoint(const CheckpointData& checkpoint,
                      model::FasnetModel* model, AdamOptimizer* optimizer) {
  if (model == nullptr) {
    throw std::invalid_argument("checkpoint: null model");
  }
  const auto stored = model::to_key_values(checkpoint.config);
  const auto current = model::to_key_values(model->config());
  if (stored != current) {
    for (size_t i = 0; i < stored.size() && i < current.size(); ++i) {
      if (stored[i] != current[i]) {
        throw std::runtime_error(
            "checkpoint: config mismatch at '" + stored[i].first +
            "' (stored " + stored[i].second + ", model " + current[i].second +
            ")");
      }
    }
    throw std::runtime_error("checkpoint: config key set mismatch");
  }

  std::vector<nn::Param*> params = model->params();

  // Verify everything up front; only then assign.
  std::vector<const Mat*> values;
  values.reserve(params.size());
  for (const nn::Param* p : params) {
    values.push_back(&require_tensor(checkpoint.bundle, p->name,
                                     p->value.rows(), p->value.cols()));
  }
  std::vector<const Mat*> moments_m;
  std::vector<const Mat*> moments_v;
  if (optimizer != nullptr) {
    if (optimizer->params() != params) {
      throw std::invalid_argument(
          "checkpoint: optimizer tracks a different parameter set");
    }
    moments_m.reserve(params.size());
    moments_v.reserve(params.size());
    for (const nn::Param* p : params) {
      moments_m.push_back(&require_tensor(checkpoint.bundle,
                                          kMomentM + p->name, p->value.rows(),
                                          p->value.cols()));
      moments_v.push_back(&require_tensor(checkpoint.bundle,
                                          kMomentV + p->name, p->value.rows(),
                                          p->value.cols()));
    }
  }

  for (size_t i = 0; i < params.size(); ++i) {
    params[i]->value = *values[i];
  }
  if (optimizer != nullptr) {
    std::vector<Mat> m;
    std::vector<Mat> v;
    m.reserve(params.size());
    v.reserve(params.size());
    for (size_t i = 0; i < params.size(); ++i) {
      m.push_back(*moments_m[i]);
      v.push_back(*moments_v[i]);
    }
    optimizer->restore_state(std::move(m), std::move(v), checkpoint.step);
  }
}

}  // namespace runtime
}  // namespace fasnet

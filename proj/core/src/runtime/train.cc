// core/src/runtime/train.cc

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

#include "fasnet/runtime/train.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "fasnet/objective/sisnr.h"
#include "fasnet/runtime/adam.h"
#include "fasnet/runtime/checkpoint.h"
#include "fasnet/runtime/dataset.h"
#include "fasnet/runtime/evaluate.h"

namespace fasnet {
namespace runtime {

namespace {

constexpr uint64_t kInitStream = 0x1417u;

std::string checkpoint_name(int64_t step) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "checkpoint_%06lld.fnt",
                static_cast<long long>(step));
  return buf;
}

}  // namespace

void TrainOptions::validate() const {
  if (batch_size <= 0) {
    throw std::invalid_argument("train: batch_size must be positive");
  }
  if (max_steps <= 0) {
    throw std::invalid_argument("train: max_steps must be positive");
  }
  if (learning_rate < 0.0) {
    throw std::invalid_argument("train: learning_rate must be >= 0");
  }
  if (train_manifest.empty()) {
    throw std::invalid_argument("train: train_manifest is required");
  }
  if (valid_interval > 0 && valid_manifest.empty()) {
    throw std::invalid_argument(
        "train: valid_interval needs a valid_manifest");
  }
  if (checkpoint_interval < 0 || valid_interval < 0) {
    throw std::invalid_argument("train: intervals must be >= 0");
  }
}

TrainResult train(const model::FasnetConfig& config,
                  const TrainOptions& options, const std::string& out_dir) {
  config.validate();
  options.validate();
  std::filesystem::create_directories(out_dir);

  Rng init_rng(derive_seed(options.seed, kInitStream));
  model::FasnetModel model(config, init_rng);
  std::vector<nn::Param*> params = model.params();

  AdamOptions adam_options;
  adam_options.learning_rate = options.learning_rate;
  adam_options.clip_norm = options.clip_norm;
  AdamOptimizer optimizer(params, adam_options);

  int64_t start_step = 0;
  if (!options.resume_checkpoint.empty()) {
    const CheckpointData ckpt = read_checkpoint(options.resume_checkpoint);
    apply_checkpoint(ckpt, &model, &optimizer);
    start_step = ckpt.step;
    if (start_step >= options.max_steps) {
      throw std::invalid_argument(
          "train: resume step is already past max_steps");
    }
  }

  Dataset train_set(options.train_manifest);
  train_set.preload();
  std::unique_ptr<Dataset> valid_set;
  if (options.valid_interval > 0) {
    valid_set = std::make_unique<Dataset>(options.valid_manifest);
    valid_set->preload();
  }

  const std::string loss_path =
      (std::filesystem::path(out_dir) / "loss.csv").string();
  std::ofstream loss_csv(loss_path, start_step == 0 ? std::ios::trunc
                                                    : std::ios::app);
  if (!loss_csv) {
    throw std::runtime_error("train: cannot open " + loss_path);
  }
  if (start_step == 0) {
    loss_csv << "step,loss\n";
  }

  TrainResult result;
  for (int64_t step = start_step; step < options.max_steps; ++step) {
    const std::vector<size_t> batch =
        train_set.batch_for_step(options.seed, step, options.batch_size);
    const double inv_batch = 1.0 / static_cast<double>(batch.size());

    nn::zero_grads(params);
    double loss_sum = 0.0;
    for (const size_t index : batch) {
      const LoadedUtterance utt = train_set.load(index);
      model::FasnetModel::Cache cache;
      const std::vector<Vec> ests = model.forward(utt.mixture, &cache);
      const objective::UpitResult upit =
          objective::upit_loss(ests, utt.targets);
      loss_sum += upit.loss;
      const std::vector<Vec> dests =
          objective::upit_loss_backward(ests, utt.targets, upit, inv_batch);
      model.backward(cache, dests);
    }
    const double loss = loss_sum * inv_batch;
    if (!std::isfinite(loss)) {
      throw NumericError("train: non-finite loss at step " +
                         std::to_string(step + 1));
    }
    optimizer.step();

    result.steps_run = step + 1;
    result.final_loss = loss;
    loss_csv << (step + 1) << "," << loss << "\n";

    if (options.checkpoint_interval > 0 &&
        (step + 1) % options.checkpoint_interval == 0) {
      const std::string path =
          (std::filesystem::path(out_dir) / checkpoint_name(step + 1))
              .string();
      save_checkpoint(path, config, step + 1, params, &optimizer);
    }

    if (valid_set != nullptr && (step + 1) % options.valid_interval == 0) {
      const double score = mean_sisnri(model, *valid_set, 1);
      result.valid_history.emplace_back(step + 1, score);
      if (score >= options.stop_sisnri_db) {
        result.stopped_early = true;
        break;
      }
    }
  }
  loss_csv.flush();
  if (!loss_csv) {
    throw std::runtime_error("train: write failed: " + loss_path);
  }

  result.final_checkpoint =
      (std::filesystem::path(out_dir) / "checkpoint_final.fnt").string();
  save_checkpoint(result.final_checkpoint, config, result.steps_run, params,
                  &optimizer);
  return result;
}

}  // namespace runtime
}  // namespace fasnet

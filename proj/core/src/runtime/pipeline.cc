// core/src/runtime/pipeline.cc

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

#include "fasnet/runtime/pipeline.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "fasnet/nn/grad_check.h"
#include "fasnet/nn/layers.h"
#include "fasnet/nn/lstm.h"
#include "fasnet/objective/sisnr.h"
#include "fasnet/runtime/checkpoint.h"
#include "fasnet/runtime/config_file.h"
#include "fasnet/runtime/wav_io.h"
#include "fasnet/tac/tac.h"

namespace fasnet {
namespace runtime {

namespace {

constexpr char kTrainPrefix[] = "train.";
constexpr char kDataPrefix[] = "data.";

void apply_train_key(TrainOptions* t, const std::string& key,
                     const std::string& value) {
  if (key == "seed") {
    t->seed = static_cast<uint64_t>(parse_long(key, value));
  } else if (key == "batch_size") {
    t->batch_size = static_cast<int>(parse_long(key, value));
  } else if (key == "max_steps") {
    t->max_steps = parse_long(key, value);
  } else if (key == "learning_rate") {
    t->learning_rate = parse_double(key, value);
  } else if (key == "clip_norm") {
    t->clip_norm = parse_double(key, value);
  } else if (key == "checkpoint_interval") {
    t->checkpoint_interval = parse_long(key, value);
  } else if (key == "valid_interval") {
    t->valid_interval = parse_long(key, value);
  } else if (key == "stop_sisnri_db") {
    t->stop_sisnri_db = parse_double(key, value);
  } else if (key == "train_manifest") {
    t->train_manifest = value;
  } else if (key == "valid_manifest") {
    t->valid_manifest = value;
  } else if (key == "resume_checkpoint") {
    t->resume_checkpoint = value;
  } else {
    throw std::invalid_argument("config: unknown key 'train." + key + "'");
  }
}

void apply_data_key(DatagenOptions* d, const std::string& key,
                    const std::string& value) {
  if (key == "seed") {
    d->seed = static_cast<uint64_t>(parse_long(key, value));
  } else if (key == "num_utterances") {
    d->num_utterances = static_cast<int>(parse_long(key, value));
  } else if (key == "utterance_seconds") {
    d->utterance_seconds = parse_double(key, value);
  } else if (key == "sample_rate") {
    d->sample_rate = parse_double(key, value);
  } else if (key == "geometry") {
    d->geometry = sim::geometry_from_string(value);
  } else if (key == "min_mics") {
    d->min_mics = static_cast<int>(parse_long(key, value));
  } else if (key == "max_mics") {
    d->max_mics = static_cast<int>(parse_long(key, value));
  } else {
    throw std::invalid_argument("config: unknown key 'data." + key + "'");
  }
}

}  // namespace

PipelineConfig pipeline_config_from_kv(
    const std::map<std::string, std::string>& kv) {
  PipelineConfig out;
  std::map<std::string, std::string> model_kv;
  std::map<std::string, std::string> train_kv;
  std::map<std::string, std::string> data_kv;
  for (const auto& [key, value] : kv) {
    if (key.rfind(kTrainPrefix, 0) == 0) {
      train_kv.emplace(key.substr(sizeof(kTrainPrefix) - 1), value);
    } else if (key.rfind(kDataPrefix, 0) == 0) {
      data_kv.emplace(key.substr(sizeof(kDataPrefix) - 1), value);
    } else {
      model_kv.emplace(key, value);
    }
  }
  out.model = model::config_from_key_values(model_kv);
  out.data.sample_rate = out.model.sample_rate;
  for (const auto& [key, value] : train_kv) {
    apply_train_key(&out.train, key, value);
  }
  for (const auto& [key, value] : data_kv) {
    apply_data_key(&out.data, key, value);
  }
  return out;
}

PipelineConfig pipeline_config_from_file(const std::string& path) {
  return pipeline_config_from_kv(read_key_value_file(path));
}

void override_seed(PipelineConfig* config, uint64_t seed) {
  config->train.seed = seed;
  config->data.seed = seed;
}

std::string run_gen_data(const PipelineConfig& config,
                         const std::string& out_dir) {
  return generate_dataset(config.data, out_dir);
}

TrainResult run_train(const PipelineConfig& config,
                      const std::string& out_dir) {
  return train(config.model, config.train, out_dir);
}

EvalReport run_evaluate(const std::string& checkpoint_path,
                        const std::string& manifest_path,
                        const std::string& out_dir, int num_threads) {
  const CheckpointData ckpt = read_checkpoint(checkpoint_path);
  Rng rng(0);  // overwritten by the checkpoint tensors
  model::FasnetModel model(ckpt.config, rng);
  apply_checkpoint(ckpt, &model, nullptr);

  Dataset dataset(manifest_path);
  const EvalReport report = evaluate_dataset(model, dataset, num_threads);

  std::filesystem::create_directories(out_dir);
  const auto dir = std::filesystem::path(out_dir);
  {
    std::ofstream txt(dir / "eval_report.txt", std::ios::trunc);
    if (!txt) {
      throw std::runtime_error("evaluate: cannot write report");
    }
    txt << format_report(report);
  }
  write_report_json((dir / "eval_report.json").string(), report);
  return report;
}

void run_separate(const std::string& checkpoint_path,
                  const std::vector<std::string>& wav_paths,
                  const std::string& out_dir) {
  if (wav_paths.empty()) {
    throw std::invalid_argument("separate: no input wavs");
  }
  const CheckpointData ckpt = read_checkpoint(checkpoint_path);
  Rng rng(0);
  model::FasnetModel model(ckpt.config, rng);
  apply_checkpoint(ckpt, &model, nullptr);

  MultichannelSignal mixture;
  mixture.sample_rate = ckpt.config.sample_rate;
  for (const std::string& path : wav_paths) {
    double fs = 0.0;
    Vec ch = read_wav_mono(path, &fs);
    if (fs != ckpt.config.sample_rate) {
      throw std::invalid_argument("separate: " + path + " is " +
                                  std::to_string(fs) + " Hz, model wants " +
                                  std::to_string(ckpt.config.sample_rate));
    }
    mixture.channels.push_back(std::move(ch));
  }
  const std::vector<Vec> sources = model.forward(mixture);

  std::filesystem::create_directories(out_dir);
  for (size_t j = 0; j < sources.size(); ++j) {
    const auto path = std::filesystem::path(out_dir) /
                      ("source" + std::to_string(j) + ".wav");
    write_wav(path.string(), sources[j], ckpt.config.sample_rate);
  }
}

namespace {

// Scalar objective for layer checks: a fixed random projection of the
// output, so every output coordinate influences the loss.
Mat projection_like(const Mat& out, Rng& rng) {
  Mat r(out.rows(), out.cols());
  fill_uniform(&r, rng, 1.0);
  return r;
}

bool check_one(const std::string& name, const std::vector<nn::Param*>& params,
               const std::function<double(bool)>& loss, double tolerance,
               std::string* report, double step = 1e-5) {
  nn::GradCheckOptions opts;
  opts.tolerance = tolerance;
  opts.step = step;
  const nn::GradCheckReport r = nn::check_gradients(params, loss, opts);
  char line[128];
  std::snprintf(line, sizeof(line), "%-18s %s  max rel err %.3e (%d checked)\n",
                name.c_str(), r.passed ? "ok  " : "FAIL", r.max_rel_error,
                r.checked);
  *report += line;
  return r.passed;
}

}  // namespace

bool run_grad_check(uint64_t seed, std::string* report) {
  bool all_ok = true;
  Rng rng(derive_seed(seed, 7));

  {
    nn::Linear layer(5, 4, rng);
    Mat x(6, 5);
    fill_uniform(&x, rng, 1.0);
    Mat proj = projection_like(layer.forward(x), rng);
    auto loss = [&](bool with_grad) {
      nn::Linear::Cache cache;
      const Mat y = layer.forward(x, &cache);
      if (with_grad) {
        nn::zero_grads(layer.params());
        layer.backward(cache, proj);
      }
      return (y.array() * proj.array()).sum();
    };
    all_ok &= check_one("linear", layer.params(), loss, 1e-6, report);
  }
  {
    nn::PReLU layer(1, 0.25);
    Mat x(6, 5);
    fill_uniform(&x, rng, 1.0);
    Mat proj = projection_like(x, rng);
    auto loss = [&](bool with_grad) {
      nn::PReLU::Cache cache;
      const Mat y = layer.forward(x, &cache);
      if (with_grad) {
        nn::zero_grads(layer.params());
        layer.backward(cache, proj);
      }
      return (y.array() * proj.array()).sum();
    };
    all_ok &= check_one("prelu", layer.params(), loss, 1e-6, report);
  }
  {
    nn::LayerNorm layer(5);
    Mat x(6, 5);
    fill_uniform(&x, rng, 1.0);
    Mat proj = projection_like(x, rng);
    auto loss = [&](bool with_grad) {
      nn::LayerNorm::Cache cache;
      const Mat y = layer.forward(x, &cache);
      if (with_grad) {
        nn::zero_grads(layer.params());
        layer.backward(cache, proj);
      }
      return (y.array() * proj.array()).sum();
    };
    all_ok &= check_one("layer_norm", layer.params(), loss, 1e-6, report);
  }
  {
    nn::BiLstm layer(4, 3, rng);
    Mat x(7, 4);
    fill_uniform(&x, rng, 1.0);
    Mat proj = projection_like(layer.forward(x), rng);
    auto loss = [&](bool with_grad) {
      nn::BiLstm::Cache cache;
      const Mat y = layer.forward(x, &cache);
      if (with_grad) {
        nn::zero_grads(layer.params());
        layer.backward(cache, proj);
      }
      return (y.array() * proj.array()).sum();
    };
    all_ok &= check_one("bilstm", layer.params(), loss, 1e-6, report);
  }
  {
    tac::TacModule module(4, 6, rng);
    std::vector<Mat> z(3, Mat());
    std::vector<Mat> proj(3, Mat());
    for (auto& m : z) {
      m.resize(5, 4);
      fill_uniform(&m, rng, 1.0);
    }
    const std::vector<Mat> y0 = module.forward(z);
    for (size_t i = 0; i < z.size(); ++i) {
      proj[i] = projection_like(y0[i], rng);
    }
    auto loss = [&](bool with_grad) {
      tac::TacModule::Cache cache;
      const std::vector<Mat> y = module.forward(z, &cache);
      double value = 0.0;
      for (size_t i = 0; i < y.size(); ++i) {
        value += (y[i].array() * proj[i].array()).sum();
      }
      if (with_grad) {
        nn::zero_grads(module.params());
        module.backward(cache, proj);
      }
      return value;
    };
    all_ok &= check_one("tac", module.params(), loss, 1e-6, report);
  }
  {
    // Tiny end-to-end check through the full objective.
    model::FasnetConfig cfg;
    cfg.variant = model::Variant::kSingleStageTac;
    cfg.num_sources = 2;
    cfg.sample_rate = 1000.0;
    cfg.frame_ms = 8.0;
    cfg.context_ms = 4.0;
    cfg.encoder_dim = 8;
    cfg.tac_hidden = 6;
    cfg.sep_width = 10;
    cfg.sep_hidden = 6;
    cfg.sep_blocks = 1;
    cfg.chunk_len = 2;
    cfg.validate();
    model::FasnetModel model(cfg, rng);

    MultichannelSignal x;
    x.sample_rate = cfg.sample_rate;
    const Eigen::Index n = 3 * cfg.frame_len() / 2 + cfg.frame_len() / 2;
    for (int i = 0; i < 2; ++i) {
      Mat ch(1, n);
      fill_uniform(&ch, rng, 0.5);
      x.channels.push_back(ch.row(0).transpose());
    }
    std::vector<Vec> targets;
    for (int j = 0; j < cfg.num_sources; ++j) {
      Mat t(1, n);
      fill_uniform(&t, rng, 0.5);
      targets.push_back(t.row(0).transpose());
    }
    auto loss = [&](bool with_grad) {
      model::FasnetModel::Cache cache;
      const std::vector<Vec> ests = model.forward(x, &cache);
      const objective::UpitResult upit = objective::upit_loss(ests, targets);
      if (with_grad) {
        nn::zero_grads(model.params());
        const std::vector<Vec> dests =
            objective::upit_loss_backward(ests, targets, upit, 1.0);
        model.backward(cache, dests);
      }
      return upit.loss;
    };
    // A smaller half step: third derivatives through the feature
    // renormalization dominate the central-difference error here.
    all_ok &= check_one("end_to_end", model.params(), loss, 1e-5, report, 1e-6);
  }
  return all_ok;
}

}  // namespace runtime
}  // namespace fasnet

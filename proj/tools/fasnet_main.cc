// tools/fasnet_main.cc

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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fasnet/common.h"
#include "fasnet/runtime/pipeline.h"

namespace {

namespace rt = fasnet::runtime;

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  uint64_t seed = 0;
  bool seed_given = false;
};

void add_common(CLI::App* cmd, CommonArgs* args, bool config_required,
                bool out_required) {
  auto* config =
      cmd->add_option("--config", args->config_path, "key=value config file");
  if (config_required) {
    config->required();
  }
  auto* out = cmd->add_option("--out-dir", args->out_dir, "output directory");
  if (out_required) {
    out->required();
  }
  cmd->add_option("--seed", args->seed, "seed override")
      ->each([args](const std::string&) { args->seed_given = true; });
}

rt::PipelineConfig load_config(const CommonArgs& args) {
  rt::PipelineConfig config = rt::pipeline_config_from_file(args.config_path);
  if (args.seed_given) {
    rt::override_seed(&config, args.seed);
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transform-average-concatenate beamforming toolkit"};
  app.require_subcommand(1);

  CommonArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen-data", "simulate a dataset");
  add_common(gen, &gen_args, /*config_required=*/true, /*out_required=*/true);

  CommonArgs train_args;
  CLI::App* train = app.add_subcommand("train", "train a separation model");
  add_common(train, &train_args, true, true);

  CommonArgs eval_args;
  std::string eval_checkpoint;
  std::string eval_manifest;
  int eval_threads = 1;
  CLI::App* evaluate = app.add_subcommand("evaluate", "score a checkpoint");
  add_common(evaluate, &eval_args, false, true);
  evaluate->add_option("--checkpoint", eval_checkpoint, "model checkpoint")
      ->required();
  evaluate->add_option("--manifest", eval_manifest, "dataset manifest")
      ->required();
  evaluate->add_option("--threads", eval_threads, "worker threads");

  CommonArgs sep_args;
  std::string sep_checkpoint;
  std::vector<std::string> sep_inputs;
  CLI::App* separate = app.add_subcommand("separate", "separate one mixture");
  add_common(separate, &sep_args, false, true);
  separate->add_option("--checkpoint", sep_checkpoint, "model checkpoint")
      ->required();
  separate
      ->add_option("wavs", sep_inputs, "per-microphone mono wav files")
      ->required();

  CommonArgs grad_args;
  CLI::App* grad = app.add_subcommand("grad-check", "finite-difference audit");
  add_common(grad, &grad_args, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      const rt::PipelineConfig config = load_config(gen_args);
      const std::string manifest =
          rt::run_gen_data(config, gen_args.out_dir);
      std::cout << "wrote " << manifest << "\n";
    } else if (train->parsed()) {
      const rt::PipelineConfig config = load_config(train_args);
      const rt::TrainResult result =
          rt::run_train(config, train_args.out_dir);
      std::cout << "trained " << result.steps_run << " steps, final loss "
                << result.final_loss << "\n";
      if (result.stopped_early) {
        std::cout << "stopped early at held-out target\n";
      }
      std::cout << "wrote " << result.final_checkpoint << "\n";
    } else if (evaluate->parsed()) {
      const rt::EvalReport report = rt::run_evaluate(
          eval_checkpoint, eval_manifest, eval_args.out_dir, eval_threads);
      std::cout << rt::format_report(report);
    } else if (separate->parsed()) {
      rt::run_separate(sep_checkpoint, sep_inputs, sep_args.out_dir);
      std::cout << "wrote separated sources to " << sep_args.out_dir << "\n";
    } else if (grad->parsed()) {
      std::string report;
      const bool ok = rt::run_grad_check(grad_args.seed, &report);
      std::cout << report;
      if (!grad_args.out_dir.empty()) {
        std::filesystem::create_directories(grad_args.out_dir);
        std::ofstream out(std::filesystem::path(grad_args.out_dir) /
                          "grad_check.txt");
        out << report;
      }
      if (!ok) {
        std::cerr << "gradient check failed\n";
        return 3;
      }
    }
  } catch (const fasnet::NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

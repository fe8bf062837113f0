// core/src/runtime/evaluate.cc

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

#include "fasnet/runtime/evaluate.h"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "fasnet/objective/sisnr.h"
#include "fasnet/sim/scene.h"
#include "json.hpp"

namespace fasnet {
namespace runtime {

namespace {

// Score of one utterance: SI-SNRi under the best output-to-target
// assignment, averaged over sources.
double score_utterance(const model::FasnetModel& model,
                       const LoadedUtterance& utt) {
  const std::vector<Vec> ests = model.forward(utt.mixture);
  const objective::UpitResult assignment =
      objective::upit_loss(ests, utt.targets);
  const Vec& mixture_ref = utt.mixture.channels[0];
  double sum = 0.0;
  for (size_t j = 0; j < ests.size(); ++j) {
    sum += objective::si_snri(
        ests[j], utt.targets[static_cast<size_t>(assignment.permutation[j])],
        mixture_ref);
  }
  return sum / static_cast<double>(ests.size());
}

}  // namespace

EvalReport evaluate_dataset(const model::FasnetModel& model,
                            const Dataset& dataset, int num_threads) {
  if (dataset.size() == 0) {
    throw std::invalid_argument("evaluate: empty dataset");
  }
  if (num_threads < 1) {
    num_threads = 1;
  }

  const size_t n = dataset.size();
  std::vector<double> scores(n, 0.0);

  if (num_threads == 1) {
    for (size_t i = 0; i < n; ++i) {
      scores[i] = score_utterance(model, dataset.load(i));
    }
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errors(
        static_cast<size_t>(num_threads), nullptr);
    workers.reserve(static_cast<size_t>(num_threads));
    for (int t = 0; t < num_threads; ++t) {
      workers.emplace_back([&, t]() {
        try {
          for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            scores[i] = score_utterance(model, dataset.load(i));
          }
        } catch (...) {
          errors[static_cast<size_t>(t)] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) {
      w.join();
    }
    for (const auto& e : errors) {
      if (e != nullptr) {
        std::rethrow_exception(e);
      }
    }
  }

  // Reduce in utterance order so the totals do not depend on thread timing.
  EvalReport report;
  double total = 0.0;
  std::array<double, 4> overlap_sum = {0, 0, 0, 0};
  std::array<double, 4> angle_sum = {0, 0, 0, 0};
  std::map<int, double> mic_sum;
  for (size_t i = 0; i < n; ++i) {
    const UtteranceRecord& rec = dataset.records()[i];
    total += scores[i];
    overlap_sum[static_cast<size_t>(rec.overlap_bucket)] += scores[i];
    ++report.by_overlap[static_cast<size_t>(rec.overlap_bucket)].count;
    if (rec.angle_bucket >= 0) {
      report.has_angles = true;
      angle_sum[static_cast<size_t>(rec.angle_bucket)] += scores[i];
      ++report.by_angle[static_cast<size_t>(rec.angle_bucket)].count;
    }
    mic_sum[rec.num_mics] += scores[i];
    ++report.by_mics[rec.num_mics].count;
  }

  report.num_utterances = static_cast<int64_t>(n);
  report.mean_sisnri_db = total / static_cast<double>(n);
  for (size_t b = 0; b < 4; ++b) {
    if (report.by_overlap[b].count > 0) {
      report.by_overlap[b].mean_sisnri_db =
          overlap_sum[b] / static_cast<double>(report.by_overlap[b].count);
    }
    if (report.by_angle[b].count > 0) {
      report.by_angle[b].mean_sisnri_db =
          angle_sum[b] / static_cast<double>(report.by_angle[b].count);
    }
  }
  for (auto& [mics, bucket] : report.by_mics) {
    bucket.mean_sisnri_db = mic_sum[mics] / static_cast<double>(bucket.count);
  }
  return report;
}

double mean_sisnri(const model::FasnetModel& model, const Dataset& dataset,
                   int num_threads) {
  return evaluate_dataset(model, dataset, num_threads).mean_sisnri_db;
}

std::string format_report(const EvalReport& report) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line), "utterances: %lld\n",
                static_cast<long long>(report.num_utterances));
  out += line;
  std::snprintf(line, sizeof(line), "mean si-snri: %.4f dB\n",
                report.mean_sisnri_db);
  out += line;
  for (size_t b = 0; b < 4; ++b) {
    if (report.by_overlap[b].count == 0) {
      continue;
    }
    std::snprintf(line, sizeof(line), "overlap %-7s %8.4f dB  (%lld)\n",
                  sim::kOverlapBucketNames[b],
                  report.by_overlap[b].mean_sisnri_db,
                  static_cast<long long>(report.by_overlap[b].count));
    out += line;
  }
  if (report.has_angles) {
    for (size_t b = 0; b < 4; ++b) {
      if (report.by_angle[b].count == 0) {
        continue;
      }
      std::snprintf(line, sizeof(line), "angle %-9s %8.4f dB  (%lld)\n",
                    sim::kAngleBucketNames[b],
                    report.by_angle[b].mean_sisnri_db,
                    static_cast<long long>(report.by_angle[b].count));
      out += line;
    }
  }
  for (const auto& [mics, bucket] : report.by_mics) {
    std::snprintf(line, sizeof(line), "mics %-10d %8.4f dB  (%lld)\n", mics,
                  bucket.mean_sisnri_db,
                  static_cast<long long>(bucket.count));
    out += line;
  }
  return out;
}

void write_report_json(const std::string& path, const EvalReport& report) {
  nlohmann::ordered_json j;
  j["num_utterances"] = report.num_utterances;
  j["mean_sisnri_db"] = report.mean_sisnri_db;
  nlohmann::ordered_json overlap;
  for (size_t b = 0; b < 4; ++b) {
    overlap[sim::kOverlapBucketNames[b]] = {
        {"mean_sisnri_db", report.by_overlap[b].mean_sisnri_db},
        {"count", report.by_overlap[b].count}};
  }
  j["by_overlap"] = overlap;
  if (report.has_angles) {
    nlohmann::ordered_json angle;
    for (size_t b = 0; b < 4; ++b) {
      angle[sim::kAngleBucketNames[b]] = {
          {"mean_sisnri_db", report.by_angle[b].mean_sisnri_db},
          {"count", report.by_angle[b].count}};
    }
    j["by_angle"] = angle;
  }
  nlohmann::ordered_json mics;
  for (const auto& [count, bucket] : report.by_mics) {
    mics[std::to_string(count)] = {
        {"mean_sisnri_db", bucket.mean_sisnri_db}, {"count", bucket.count}};
  }
  j["by_mics"] = mics;

  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw std::runtime_error("evaluate: cannot open for write: " + path);
  }
  out << j.dump(2) << "\n";
  if (!out) {
    throw std::runtime_error("evaluate: write failed: " + path);
  }
}

}  // namespace runtime
}  // namespace fasnet

// core/src/runtime/dataset.cc

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

#include "fasnet/runtime/dataset.h"

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>

#include "fasnet/runtime/wav_io.h"

namespace fasnet {
namespace runtime {

namespace {

constexpr uint64_t kScheduleStream = 0x5c4ed01eULL;

// Fisher-Yates with the project RNG; std::shuffle is implementation-defined.
void shuffle_indices(std::vector<size_t>* v, Rng& rng) {
  for (size_t i = v->size(); i > 1; --i) {
    const size_t j =
        static_cast<size_t>(uniform_int(rng, 0, static_cast<int64_t>(i) - 1));
    std::swap((*v)[i - 1], (*v)[j]);
  }
}

template <typename T>
void shuffle_items(std::vector<T>* v, Rng& rng) {
  for (size_t i = v->size(); i > 1; --i) {
    const size_t j =
        static_cast<size_t>(uniform_int(rng, 0, static_cast<int64_t>(i) - 1));
    std::swap((*v)[i - 1], (*v)[j]);
  }
}

}  // namespace

Dataset::Dataset(const std::string& manifest_path)
    : manifest_path_(manifest_path), records_(read_manifest(manifest_path)) {}

LoadedUtterance Dataset::load(size_t index) const {
  if (index >= records_.size()) {
    throw std::out_of_range("dataset: index out of range");
  }
  if (preloaded_) {
    LoadedUtterance copy = cache_[index];
    copy.record = &records_[index];
    return copy;
  }
  const UtteranceRecord& rec = records_[index];
  LoadedUtterance out;
  out.record = &rec;
  out.mixture.sample_rate = rec.sample_rate;
  for (const std::string& rel : rec.mixture) {
    double fs = 0.0;
    Vec ch = read_wav_mono(resolve_manifest_path(manifest_path_, rel), &fs);
    if (fs != rec.sample_rate) {
      throw std::runtime_error("dataset: sample rate mismatch in " + rel);
    }
    if (ch.size() != rec.num_samples) {
      throw std::runtime_error("dataset: length mismatch in " + rel);
    }
    out.mixture.channels.push_back(std::move(ch));
  }
  for (const auto& src : rec.sources) {
    double fs = 0.0;
    Vec ref = read_wav_mono(resolve_manifest_path(manifest_path_, src[0]), &fs);
    if (fs != rec.sample_rate || ref.size() != rec.num_samples) {
      throw std::runtime_error("dataset: bad target wav " + src[0]);
    }
    out.targets.push_back(std::move(ref));
  }
  return out;
}

void Dataset::preload() {
  if (preloaded_) {
    return;
  }
  cache_.reserve(records_.size());
  for (size_t i = 0; i < records_.size(); ++i) {
    cache_.push_back(load(i));
  }
  preloaded_ = true;
}

std::vector<std::vector<size_t>> Dataset::epoch_batches(uint64_t seed,
                                                        int64_t epoch,
                                                        int batch_size) const {
  if (batch_size <= 0) {
    throw std::invalid_argument("dataset: batch size must be positive");
  }
  Rng rng(derive_seed(seed, kScheduleStream + static_cast<uint64_t>(epoch)));

  std::map<int, std::vector<size_t>> by_mics;
  for (size_t i = 0; i < records_.size(); ++i) {
    by_mics[records_[i].num_mics].push_back(i);
  }

  std::vector<std::vector<size_t>> batches;
  for (auto& [mics, indices] : by_mics) {
    (void)mics;
    shuffle_indices(&indices, rng);
    for (size_t begin = 0; begin < indices.size();
         begin += static_cast<size_t>(batch_size)) {
      const size_t end =
          std::min(begin + static_cast<size_t>(batch_size), indices.size());
      batches.emplace_back(indices.begin() + static_cast<ptrdiff_t>(begin),
                           indices.begin() + static_cast<ptrdiff_t>(end));
    }
  }
  shuffle_items(&batches, rng);
  return batches;
}

int64_t Dataset::batches_per_epoch(int batch_size) const {
  if (batch_size <= 0) {
    throw std::invalid_argument("dataset: batch size must be positive");
  }
  std::map<int, int64_t> counts;
  for (const auto& rec : records_) {
    ++counts[rec.num_mics];
  }
  int64_t total = 0;
  for (const auto& [mics, count] : counts) {
    (void)mics;
    total += (count + batch_size - 1) / batch_size;
  }
  return total;
}

std::vector<size_t> Dataset::batch_for_step(uint64_t seed, int64_t step,
                                            int batch_size) const {
  const int64_t per_epoch = batches_per_epoch(batch_size);
  const int64_t epoch = step / per_epoch;
  const int64_t pos = step % per_epoch;
  return epoch_batches(seed, epoch, batch_size)[static_cast<size_t>(pos)];
}

}  // namespace runtime
}  // namespace fasnet

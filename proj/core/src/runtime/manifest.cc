// core/src/runtime/manifest.cc

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

#include "fasnet/runtime/manifest.h"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace fasnet {
namespace runtime {

namespace {

using Json = nlohmann::ordered_json;

Json to_json(const UtteranceRecord& r) {
  Json j;
  j["id"] = r.id;
  j["mixture"] = r.mixture;
  j["sources"] = r.sources;
  j["noise"] = r.noise;
  j["num_mics"] = r.num_mics;
  j["geometry"] = r.geometry;
  j["overlap_ratio"] = r.overlap_ratio;
  j["overlap_bucket"] = r.overlap_bucket;
  j["speaker_angle_deg"] = r.speaker_angle_deg;
  j["angle_bucket"] = r.angle_bucket;
  j["speech_snr_db"] = r.speech_snr_db;
  j["noise_snr_db"] = r.noise_snr_db;
  j["t60"] = r.t60;
  j["room_dims"] = r.room_dims;
  j["sample_rate"] = r.sample_rate;
  j["num_samples"] = r.num_samples;
  return j;
}

UtteranceRecord from_json(const Json& j) {
  UtteranceRecord r;
  r.id = j.at("id").get<std::string>();
  r.mixture = j.at("mixture").get<std::vector<std::string>>();
  r.sources = j.at("sources").get<std::vector<std::vector<std::string>>>();
  r.noise = j.at("noise").get<std::vector<std::string>>();
  r.num_mics = j.at("num_mics").get<int>();
  r.geometry = j.at("geometry").get<std::string>();
  r.overlap_ratio = j.at("overlap_ratio").get<double>();
  r.overlap_bucket = j.at("overlap_bucket").get<int>();
  r.speaker_angle_deg = j.at("speaker_angle_deg").get<double>();
  r.angle_bucket = j.at("angle_bucket").get<int>();
  r.speech_snr_db = j.at("speech_snr_db").get<double>();
  r.noise_snr_db = j.at("noise_snr_db").get<double>();
  r.t60 = j.at("t60").get<double>();
  r.room_dims = j.at("room_dims").get<std::array<double, 3>>();
  r.sample_rate = j.at("sample_rate").get<double>();
  r.num_samples = j.at("num_samples").get<int64_t>();
  return r;
}

void validate(const UtteranceRecord& r, size_t line) {
  const auto fail = [line](const std::string& why) {
    throw std::runtime_error("manifest: line " + std::to_string(line) + ": " +
                             why);
  };
  if (r.num_mics <= 0) fail("num_mics must be positive");
  if (r.mixture.size() != static_cast<size_t>(r.num_mics)) {
    fail("mixture path count does not match num_mics");
  }
  if (r.noise.size() != static_cast<size_t>(r.num_mics)) {
    fail("noise path count does not match num_mics");
  }
  if (r.sources.empty()) fail("no sources");
  for (const auto& src : r.sources) {
    if (src.size() != static_cast<size_t>(r.num_mics)) {
      fail("source path count does not match num_mics");
    }
  }
  if (r.num_samples <= 0) fail("num_samples must be positive");
  if (r.sample_rate <= 0.0) fail("sample_rate must be positive");
}

}  // namespace

void write_manifest(const std::string& path,
                    const std::vector<UtteranceRecord>& records) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw std::runtime_error("manifest: cannot open for write: " + path);
  }
  for (const auto& r : records) {
    out << to_json(r).dump() << "\n";
  }
  if (!out) {
    throw std::runtime_error("manifest: write failed: " + path);
  }
}

std::vector<UtteranceRecord> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("manifest: cannot open: " + path);
  }
  std::vector<UtteranceRecord> records;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) {
      continue;
    }
    Json j;
    try {
      j = Json::parse(line);
    } catch (const std::exception& e) {
      throw std::runtime_error("manifest: line " + std::to_string(lineno) +
                               ": " + e.what());
    }
    UtteranceRecord r;
    try {
      r = from_json(j);
    } catch (const std::exception& e) {
      throw std::runtime_error("manifest: line " + std::to_string(lineno) +
                               ": " + e.what());
    }
    validate(r, lineno);
    records.push_back(std::move(r));
  }
  if (records.empty()) {
    throw std::runtime_error("manifest: no records in " + path);
  }
  return records;
}

std::string resolve_manifest_path(const std::string& manifest_path,
                                  const std::string& relative) {
  const std::filesystem::path rel(relative);
  if (rel.is_absolute()) {
    return relative;
  }
  return (std::filesystem::path(manifest_path).parent_path() / rel).string();
}

}  // namespace runtime
}  // namespace fasnet

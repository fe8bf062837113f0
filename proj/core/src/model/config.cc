// core/src/model/config.cc

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

#include "fasnet/model/config.h"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fasnet {
namespace model {

namespace {

int ms_to_samples(double ms, double sample_rate) {
  return static_cast<int>(std::lround(ms * sample_rate / 1000.0));
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& key, const std::string& s) {
  try {
    size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad numeric value for " + key + ": '" + s + "'");
  }
}

int parse_int(const std::string& key, const std::string& s) {
  try {
    size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer value for " + key + ": '" + s + "'");
  }
}

}  // namespace

std::string to_string(Variant v) {
  switch (v) {
    case Variant::kTwoStage: return "two_stage";
    case Variant::kTwoStageTac: return "two_stage_tac";
    case Variant::kSingleStage: return "single_stage";
    case Variant::kSingleStageTac: return "single_stage_tac";
  }
  throw std::invalid_argument("unknown variant enum value");
}

Variant variant_from_string(const std::string& s) {
  if (s == "two_stage") return Variant::kTwoStage;
  if (s == "two_stage_tac") return Variant::kTwoStageTac;
  if (s == "single_stage") return Variant::kSingleStage;
  if (s == "single_stage_tac") return Variant::kSingleStageTac;
  throw std::invalid_argument("config: unknown variant '" + s + "'");
}

bool variant_uses_tac(Variant v) {
  return v == Variant::kTwoStageTac || v == Variant::kSingleStageTac;
}

bool variant_is_two_stage(Variant v) {
  return v == Variant::kTwoStage || v == Variant::kTwoStageTac;
}

int FasnetConfig::frame_len() const { return ms_to_samples(frame_ms, sample_rate); }

int FasnetConfig::context() const { return ms_to_samples(context_ms, sample_rate); }

int FasnetConfig::hop() const {
  return hop_ms > 0.0 ? ms_to_samples(hop_ms, sample_rate) : frame_len() / 2;
}

dsp::FrameSpec FasnetConfig::frame_spec() const {
  dsp::FrameSpec spec;
  spec.frame_len = frame_len();
  spec.hop = hop();
  spec.context = context();
  spec.sample_rate = sample_rate;
  return spec;
}

void FasnetConfig::validate() const {
  if (num_sources < 1) throw std::invalid_argument("config: num_sources must be >= 1");
  if (num_sources > 6) {
    throw std::invalid_argument("config: num_sources above 6 makes permutation search impractical");
  }
  if (sample_rate <= 0) throw std::invalid_argument("config: sample_rate must be positive");
  if (frame_len() < 1) throw std::invalid_argument("config: frame_ms too small for sample_rate");
  if (context() < 1) throw std::invalid_argument("config: context_ms too small for sample_rate");
  frame_spec().validate();
  if (encoder_dim < 1) throw std::invalid_argument("config: encoder_dim must be >= 1");
  if (tac_hidden < 0) throw std::invalid_argument("config: tac_hidden must be >= 0");
  if (sep_width < 1) throw std::invalid_argument("config: sep_width must be >= 1");
  if (sep_hidden < 1) throw std::invalid_argument("config: sep_hidden must be >= 1");
  if (sep_blocks < 1) throw std::invalid_argument("config: sep_blocks must be >= 1");
  if (chunk_len < 2 || chunk_len % 2 != 0) {
    throw std::invalid_argument("config: chunk_len must be even and >= 2");
  }
  if (max_channels < 1) throw std::invalid_argument("config: max_channels must be >= 1");
  if (variant_is_two_stage(variant) && max_channels < 2) {
    throw std::invalid_argument("config: two-stage variants need max_channels >= 2");
  }
  if (filter_activation != "tanh") {
    throw std::invalid_argument("config: unsupported filter_activation '" + filter_activation + "'");
  }
}

std::vector<std::pair<std::string, std::string>> to_key_values(const FasnetConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("variant", to_string(cfg.variant));
  kv.emplace_back("num_sources", std::to_string(cfg.num_sources));
  kv.emplace_back("sample_rate", format_double(cfg.sample_rate));
  kv.emplace_back("frame_ms", format_double(cfg.frame_ms));
  kv.emplace_back("context_ms", format_double(cfg.context_ms));
  kv.emplace_back("hop_ms", format_double(cfg.hop_ms));
  kv.emplace_back("encoder_dim", std::to_string(cfg.encoder_dim));
  kv.emplace_back("tac_hidden", std::to_string(cfg.tac_hidden));
  kv.emplace_back("sep_width", std::to_string(cfg.sep_width));
  kv.emplace_back("sep_hidden", std::to_string(cfg.sep_hidden));
  kv.emplace_back("sep_blocks", std::to_string(cfg.sep_blocks));
  kv.emplace_back("chunk_len", std::to_string(cfg.chunk_len));
  kv.emplace_back("max_channels", std::to_string(cfg.max_channels));
  kv.emplace_back("filter_activation", cfg.filter_activation);
  return kv;
}

FasnetConfig config_from_key_values(const std::map<std::string, std::string>& kv) {
  FasnetConfig cfg;
  for (const auto& [key, value] : kv) {
    if (key == "variant") {
      cfg.variant = variant_from_string(value);
    } else if (key == "num_sources") {
      cfg.num_sources = parse_int(key, value);
    } else if (key == "sample_rate") {
      cfg.sample_rate = parse_double(key, value);
    } else if (key == "frame_ms") {
      cfg.frame_ms = parse_double(key, value);
    } else if (key == "context_ms") {
      cfg.context_ms = parse_double(key, value);
    } else if (key == "hop_ms") {
      cfg.hop_ms = parse_double(key, value);
    } else if (key == "encoder_dim") {
      cfg.encoder_dim = parse_int(key, value);
    } else if (key == "tac_hidden") {
      cfg.tac_hidden = parse_int(key, value);
    } else if (key == "sep_width") {
      cfg.sep_width = parse_int(key, value);
    } else if (key == "sep_hidden") {
      cfg.sep_hidden = parse_int(key, value);
    } else if (key == "sep_blocks") {
      cfg.sep_blocks = parse_int(key, value);
    } else if (key == "chunk_len") {
      cfg.chunk_len = parse_int(key, value);
    } else if (key == "max_channels") {
      cfg.max_channels = parse_int(key, value);
    } else if (key == "filter_activation") {
      cfg.filter_activation = value;
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

}  // namespace model
}  // namespace fasnet

// core/include/fasnet/model/config.h

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

#ifndef FASNET_MODEL_CONFIG_H_
#define FASNET_MODEL_CONFIG_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fasnet/dsp/framing.h"

namespace fasnet {
namespace model {

// The four model variants: two-stage estimates reference-channel filters
// first and then one filter per remaining channel per source; single-stage
// estimates all N x C filters jointly from per-channel features. The *_tac
// variants insert a transform-average-concatenate layer after each separator
// block so channels exchange information.
enum class Variant {
  kTwoStage,
  kTwoStageTac,
  kSingleStage,
  kSingleStageTac,
};

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);
bool variant_uses_tac(Variant v);
bool variant_is_two_stage(Variant v);

struct FasnetConfig {
  Variant variant = Variant::kSingleStageTac;
  int num_sources = 2;         // C
  double sample_rate = 16000.0;
  double frame_ms = 16.0;      // frame length L, milliseconds
  double context_ms = 16.0;    // context half-width W, milliseconds
  double hop_ms = 0.0;         // 0 selects the default hop L/2
  int encoder_dim = 64;        // K, frame embedding width
  int tac_hidden = 0;          // TAC hidden width D; 0 selects 3K
  int sep_width = 128;         // separator feature width
  int sep_hidden = 128;        // recurrent hidden size per direction
  int sep_blocks = 2;          // dual-path blocks per separator
  int chunk_len = 100;         // intra-chunk length (even)
  int max_channels = 6;        // N_m, most channels accepted at run time
  std::string filter_activation = "tanh";

  int frame_len() const;  // L in samples
  int context() const;    // W in samples
  int hop() const;        // H in samples
  int filter_len() const { return 2 * context() + 1; }
  int feature_dim() const { return encoder_dim + filter_len(); }
  int tac_dim() const { return tac_hidden > 0 ? tac_hidden : 3 * encoder_dim; }
  dsp::FrameSpec frame_spec() const;

  // Throws std::invalid_argument with a key-specific message.
  void validate() const;
};

// Stable serialization order; values round-trip exactly.
std::vector<std::pair<std::string, std::string>> to_key_values(const FasnetConfig& cfg);

// Unknown keys are rejected so typos cannot silently fall back to defaults.
FasnetConfig config_from_key_values(const std::map<std::string, std::string>& kv);

}  // namespace model
}  // namespace fasnet

#endif  // FASNET_MODEL_CONFIG_H_

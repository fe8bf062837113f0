// core/include/fasnet/runtime/wav_io.h

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

#ifndef FASNET_RUNTIME_WAV_IO_H_
#define FASNET_RUNTIME_WAV_IO_H_

#include <string>
#include <vector>

#include "fasnet/common.h"

namespace fasnet {
namespace runtime {

// Writes a mono 32-bit IEEE float WAV. Values are narrowed from double to
// float; a second write of the read-back data is byte-identical.
void write_wav(const std::string& path, const Vec& samples, double sample_rate);

// Reads 32-bit float or 16-bit PCM WAVs (PCM is scaled to [-1, 1) by
// 1/32768). Multichannel files are deinterleaved, one Vec per channel.
std::vector<Vec> read_wav(const std::string& path, double* sample_rate);

// Convenience for the mono-per-channel layout used throughout.
Vec read_wav_mono(const std::string& path, double* sample_rate);

}  // namespace runtime
}  // namespace fasnet

#endif  // FASNET_RUNTIME_WAV_IO_H_

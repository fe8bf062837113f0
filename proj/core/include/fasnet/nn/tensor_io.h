// core/include/fasnet/nn/tensor_io.h

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

#ifndef FASNET_NN_TENSOR_IO_H_
#define FASNET_NN_TENSOR_IO_H_

#include <string>
#include <utility>
#include <vector>

#include "fasnet/common.h"

namespace fasnet {
namespace nn {

// Self-describing binary container for named f64 matrices.
//
// Layout (all integers little-endian):
//   bytes  0..7   magic "FNTC0001"
//   u32           format version (currently 1)
//   u64           meta length, then that many bytes of UTF-8 text
//   u32           tensor count
//   per tensor:   u32 name length, name bytes,
//                 u64 rows, u64 cols,
//                 rows*cols f64 values in column-major order
//
// Writing the same bundle twice produces byte-identical files.
struct TensorBundle {
  std::string meta;
  std::vector<std::pair<std::string, Mat>> tensors;

  // Returns nullptr when absent.
  const Mat* find(const std::string& name) const;
};

void write_tensor_bundle(const std::string& path, const TensorBundle& bundle);

// Throws std::runtime_error on bad magic, unsupported version, or truncation.
TensorBundle read_tensor_bundle(const std::string& path);

}  // namespace nn
}  // namespace fasnet

#endif  // FASNET_NN_TENSOR_IO_H_

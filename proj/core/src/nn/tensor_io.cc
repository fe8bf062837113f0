// core/src/nn/tensor_io.cc

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

#include "fasnet/nn/tensor_io.h"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace fasnet {
namespace nn {

namespace {

constexpr char kMagic[8] = {'F', 'N', 'T', 'C', '0', '0', '0', '1'};
constexpr uint32_t kVersion = 1;

// The container is little-endian on disk; these helpers keep the layout
// explicit instead of relying on host byte order.
void put_u32(std::string* out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string* out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string* out, double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  put_u64(out, bits);
}

struct Reader {
  const std::string& data;
  size_t pos = 0;

  void need(size_t n) const {
    if (pos + n > data.size()) throw std::runtime_error("tensor container: truncated file");
  }
  uint32_t u32() {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(static_cast<unsigned char>(data[pos + i])) << (8 * i);
    pos += 4;
    return v;
  }
  uint64_t u64() {
    need(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(static_cast<unsigned char>(data[pos + i])) << (8 * i);
    pos += 8;
    return v;
  }
  double f64() {
    uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
  }
  std::string bytes(size_t n) {
    need(n);
    std::string s = data.substr(pos, n);
    pos += n;
    return s;
  }
};

}  // namespace

const Mat* TensorBundle::find(const std::string& name) const {
  for (const auto& [n, m] : tensors) {
    if (n == name) return &m;
  }
  return nullptr;
}

void write_tensor_bundle(const std::string& path, const TensorBundle& bundle) {
  std::string buf;
  buf.append(kMagic, sizeof(kMagic));
  put_u32(&buf, kVersion);
  put_u64(&buf, bundle.meta.size());
  buf.append(bundle.meta);
  put_u32(&buf, static_cast<uint32_t>(bundle.tensors.size()));
  for (const auto& [name, m] : bundle.tensors) {
    put_u32(&buf, static_cast<uint32_t>(name.size()));
    buf.append(name);
    put_u64(&buf, static_cast<uint64_t>(m.rows()));
    put_u64(&buf, static_cast<uint64_t>(m.cols()));
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        put_f64(&buf, m(r, c));
      }
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("tensor container: cannot open for write: " + path);
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw std::runtime_error("tensor container: write failed: " + path);
}

TensorBundle read_tensor_bundle(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("tensor container: cannot open: " + path);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  Reader rd{data};
  const std::string magic = rd.bytes(sizeof(kMagic));
  if (std::memcmp(magic.data(), kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("tensor container: bad magic in " + path);
  }
  const uint32_t version = rd.u32();
  if (version != kVersion) {
    throw std::runtime_error("tensor container: unsupported version " + std::to_string(version));
  }

  TensorBundle bundle;
  const uint64_t meta_len = rd.u64();
  bundle.meta = rd.bytes(meta_len);
  const uint32_t count = rd.u32();
  bundle.tensors.reserve(count);
  for (uint32_t i = 0; i < count; ++i) {
    const uint32_t name_len = rd.u32();
    std::string name = rd.bytes(name_len);
    const uint64_t rows = rd.u64();
    const uint64_t cols = rd.u64();
    if (rows > (1u << 28) || cols > (1u << 28)) {
      throw std::runtime_error("tensor container: implausible shape in " + path);
    }
    Mat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        m(r, c) = rd.f64();
      }
    }
    bundle.tensors.emplace_back(std::move(name), std::move(m));
  }
  if (rd.pos != data.size()) {
    throw std::runtime_error("tensor container: trailing bytes in " + path);
  }
  return bundle;
}

}  // namespace nn
}  // namespace fasnet

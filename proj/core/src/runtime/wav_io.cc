// core/src/runtime/wav_io.cc

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

#include "fasnet/runtime/wav_io.h"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace fasnet {
namespace runtime {

namespace {

void put_u16(std::string* buf, uint16_t v) {
  buf->push_back(static_cast<char>(v & 0xff));
  buf->push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string* buf, uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    buf->push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
}

void put_f32(std::string* buf, float v) {
  uint32_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  put_u32(buf, bits);
}

struct Reader {
  const std::string& data;
  size_t pos = 0;
  const std::string& path;

  void need(size_t n, const char* what) {
    if (pos + n > data.size()) {
      throw std::runtime_error("wav: truncated " + std::string(what) + " in " +
                               path);
    }
  }
  uint16_t u16() {
    need(2, "field");
    uint16_t v = static_cast<uint16_t>(
        (static_cast<uint8_t>(data[pos])) |
        (static_cast<uint16_t>(static_cast<uint8_t>(data[pos + 1])) << 8));
    pos += 2;
    return v;
  }
  uint32_t u32() {
    need(4, "field");
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<uint32_t>(static_cast<uint8_t>(data[pos + i]))
           << (8 * i);
    }
    pos += 4;
    return v;
  }
  std::string tag() {
    need(4, "chunk tag");
    std::string t = data.substr(pos, 4);
    pos += 4;
    return t;
  }
};

}  // namespace

void write_wav(const std::string& path, const Vec& samples,
               double sample_rate) {
  if (samples.size() == 0) {
    throw std::invalid_argument("wav: refusing to write empty signal");
  }
  if (sample_rate <= 0.0) {
    throw std::invalid_argument("wav: sample rate must be positive");
  }
  const uint32_t fs = static_cast<uint32_t>(sample_rate);
  const uint32_t data_bytes = static_cast<uint32_t>(samples.size()) * 4u;

  std::string buf;
  buf.reserve(44 + data_bytes);
  buf += "RIFF";
  put_u32(&buf, 36 + data_bytes);
  buf += "WAVE";
  buf += "fmt ";
  put_u32(&buf, 16);
  put_u16(&buf, 3);  // IEEE float
  put_u16(&buf, 1);  // mono
  put_u32(&buf, fs);
  put_u32(&buf, fs * 4u);  // byte rate
  put_u16(&buf, 4);        // block align
  put_u16(&buf, 32);       // bits per sample
  buf += "data";
  put_u32(&buf, data_bytes);
  for (Eigen::Index i = 0; i < samples.size(); ++i) {
    put_f32(&buf, static_cast<float>(samples[i]));
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("wav: cannot open for write: " + path);
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) {
    throw std::runtime_error("wav: write failed: " + path);
  }
}

std::vector<Vec> read_wav(const std::string& path, double* sample_rate) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("wav: cannot open: " + path);
  }
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  Reader r{data, 0, path};

  if (r.tag() != "RIFF") {
    throw std::runtime_error("wav: missing RIFF header: " + path);
  }
  r.u32();  // riff size, not trusted
  if (r.tag() != "WAVE") {
    throw std::runtime_error("wav: missing WAVE tag: " + path);
  }

  uint16_t format = 0;
  uint16_t channels = 0;
  uint16_t bits = 0;
  uint32_t fs = 0;
  bool have_fmt = false;

  while (r.pos + 8 <= data.size()) {
    const std::string chunk = r.tag();
    const uint32_t size = r.u32();
    if (chunk == "fmt ") {
      const size_t end = r.pos + size;
      format = r.u16();
      channels = r.u16();
      fs = r.u32();
      r.u32();  // byte rate
      r.u16();  // block align
      bits = r.u16();
      have_fmt = true;
      r.pos = end;
    } else if (chunk == "data") {
      if (!have_fmt) {
        throw std::runtime_error("wav: data before fmt: " + path);
      }
      r.need(size, "data chunk");
      if (channels == 0) {
        throw std::runtime_error("wav: zero channels: " + path);
      }
      const uint32_t bytes_per_sample = bits / 8u;
      if (bytes_per_sample == 0 ||
          size % (bytes_per_sample * channels) != 0) {
        throw std::runtime_error("wav: data size misaligned: " + path);
      }
      const size_t frames = size / (bytes_per_sample * channels);
      std::vector<Vec> out(channels, Vec(frames));
      if (format == 3 && bits == 32) {
        for (size_t f = 0; f < frames; ++f) {
          for (uint16_t c = 0; c < channels; ++c) {
            const uint32_t raw = r.u32();
            float v;
            std::memcpy(&v, &raw, sizeof(v));
            out[c][static_cast<Eigen::Index>(f)] = static_cast<double>(v);
          }
        }
      } else if (format == 1 && bits == 16) {
        for (size_t f = 0; f < frames; ++f) {
          for (uint16_t c = 0; c < channels; ++c) {
            const int16_t raw = static_cast<int16_t>(r.u16());
            out[c][static_cast<Eigen::Index>(f)] =
                static_cast<double>(raw) / 32768.0;
          }
        }
      } else {
        throw std::runtime_error("wav: unsupported format (want float32 or "
                                 "pcm16): " +
                                 path);
      }
      if (sample_rate != nullptr) {
        *sample_rate = static_cast<double>(fs);
      }
      return out;
    } else {
      // Skip unknown chunks; sizes are padded to even byte counts.
      r.need(size, "chunk body");
      r.pos += size + (size & 1u);
    }
  }
  throw std::runtime_error("wav: no data chunk: " + path);
}

Vec read_wav_mono(const std::string& path, double* sample_rate) {
  std::vector<Vec> channels = read_wav(path, sample_rate);
  if (channels.size() != 1) {
    throw std::runtime_error("wav: expected mono file: " + path);
  }
  return channels[0];
}

}  // namespace runtime
}  // namespace fasnet

// io/binary-io.h

// Copyright 2026  emgse contributors

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

#ifndef EMGSE_IO_BINARY_IO_H_
#define EMGSE_IO_BINARY_IO_H_

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "base/emgse-common.h"

namespace emgse {

// Little-endian byte buffer helpers shared by the binary containers.
class ByteWriter {
 public:
  void U8(uint8_t v) { bytes_.push_back(v); }
  void U16(uint16_t v) { Raw(v); }
  void U32(uint32_t v) { Raw(v); }
  void U64(uint64_t v) { Raw(v); }
  void I16(int16_t v) { Raw(v); }
  void F32(float v) { Raw(v); }
  void F64(double v) { Raw(v); }
  void Bytes(const void *data, size_t n) {
    const auto *p = static_cast<const uint8_t *>(data);
    bytes_.insert(bytes_.end(), p, p + n);
  }
  void Str(const std::string &s) { Bytes(s.data(), s.size()); }

  const std::vector<uint8_t> &bytes() const { return bytes_; }

 private:
  template <typename T>
  void Raw(T v) {
    static_assert(std::endian::native == std::endian::little,
                  "containers are written on little-endian hosts only");
    Bytes(&v, sizeof(v));
  }
  std::vector<uint8_t> bytes_;
};

class ByteReader {
 public:
  ByteReader(const std::vector<uint8_t> &bytes, std::string what)
      : bytes_(bytes), what_(std::move(what)) {}

  uint8_t U8() { return Raw<uint8_t>(); }
  uint16_t U16() { return Raw<uint16_t>(); }
  uint32_t U32() { return Raw<uint32_t>(); }
  uint64_t U64() { return Raw<uint64_t>(); }
  int16_t I16() { return Raw<int16_t>(); }
  float F32() { return Raw<float>(); }
  double F64() { return Raw<double>(); }
  std::string Str(size_t n) {
    Need(n);
    std::string s(reinterpret_cast<const char *>(bytes_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  size_t Remaining() const { return bytes_.size() - pos_; }
  size_t Position() const { return pos_; }
  void Need(size_t n) const {
    if (Remaining() < n)
      throw FormatError(what_ + ": truncated (need " + std::to_string(n) +
                        " more bytes at offset " + std::to_string(pos_) + ")");
  }

 private:
  template <typename T>
  T Raw() {
    Need(sizeof(T));
    T v;
    std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  const std::vector<uint8_t> &bytes_;
  std::string what_;
  size_t pos_ = 0;
};

std::vector<uint8_t> ReadFileBytes(const std::string &path);
// Writes through a temporary file and renames, so readers never see a
// partially written file.
void WriteFileBytes(const std::string &path, const std::vector<uint8_t> &bytes);
void WriteFileText(const std::string &path, const std::string &text);
std::string ReadFileText(const std::string &path);

}  // namespace emgse

#endif  // EMGSE_IO_BINARY_IO_H_

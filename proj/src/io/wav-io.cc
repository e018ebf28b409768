// io/wav-io.cc

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

#include "io/wav-io.h"

#include <cmath>

#include "io/binary-io.h"

namespace emgse {

Waveform WavRead(const std::string &path) {
  const std::vector<uint8_t> bytes = ReadFileBytes(path);
  ByteReader r(bytes, path);
  if (r.Str(4) != "RIFF") throw FormatError(path + ": not a RIFF file");
  const uint32_t riff_size = r.U32();
  if (r.Str(4) != "WAVE") throw FormatError(path + ": not a WAVE file");
  if (riff_size + 8u > bytes.size())
    throw FormatError(path + ": RIFF size exceeds file size (truncated?)");

  bool have_fmt = false;
  uint16_t channels = 0, bits = 0;
  uint32_t rate = 0;
  while (r.Remaining() >= 8) {
    const std::string id = r.Str(4);
    const uint32_t size = r.U32();
    r.Need(size);
    if (id == "fmt ") {
      if (size < 16) throw FormatError(path + ": fmt chunk too small");
      const uint16_t format = r.U16();
      channels = r.U16();
      rate = r.U32();
      r.U32();  // byte rate
      r.U16();  // block align
      bits = r.U16();
      r.Str(size - 16);
      if (format != 1)
        throw FormatError(path + ": unsupported WAV encoding " + std::to_string(format) +
                          " (only 16-bit PCM is supported)");
      if (channels != 1)
        throw FormatError(path + ": expected mono audio, found " +
                          std::to_string(channels) + " channels");
      if (bits != 16)
        throw FormatError(path + ": expected 16-bit samples, found " + std::to_string(bits));
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) throw FormatError(path + ": data chunk before fmt chunk");
      if (size % 2 != 0) throw FormatError(path + ": odd data chunk size");
      Waveform w;
      w.sample_rate_hz = static_cast<int>(rate);
      w.samples.resize(size / 2);
      for (double &s : w.samples) s = r.I16() / 32768.0;
      return w;
    } else {
      r.Str(size + (size & 1));
    }
  }
  throw FormatError(path + ": no data chunk");
}

void WavWrite(const std::string &path, const Waveform &x) {
  ValidateWaveform(x);
  const uint32_t data_bytes = static_cast<uint32_t>(x.size() * 2);
  ByteWriter w;
  w.Str("RIFF");
  w.U32(36 + data_bytes);
  w.Str("WAVE");
  w.Str("fmt ");
  w.U32(16);
  w.U16(1);
  w.U16(1);
  w.U32(static_cast<uint32_t>(x.sample_rate_hz));
  w.U32(static_cast<uint32_t>(x.sample_rate_hz) * 2);
  w.U16(2);
  w.U16(16);
  w.Str("data");
  w.U32(data_bytes);
  for (double s : x.samples) {
    double code = std::nearbyint(std::clamp(s, -1.0, 32767.0 / 32768.0) * 32768.0);
    w.I16(static_cast<int16_t>(code));
  }
  WriteFileBytes(path, w.bytes());
}

}  // namespace emgse

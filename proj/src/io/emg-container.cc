// io/emg-container.cc

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

#include "io/emg-container.h"

#include "base/emgse-common.h"
#include "io/binary-io.h"

namespace emgse {

std::vector<uint8_t> EncodeEmgContainer(const EmgRecording &rec) {
  const int c = rec.NumChannels();
  if (c > 0xffff) throw InvalidParameter("too many EMG channels for the container");
  if (static_cast<int>(rec.channel_ids.size()) != c)
    throw ShapeMismatch("EMG channel label count does not match channel count");
  ByteWriter w;
  w.Str("EMGC");
  w.U16(kEmgContainerVersion);
  w.U16(static_cast<uint16_t>(c));
  w.U32(static_cast<uint32_t>(rec.sample_rate_hz));
  w.U32(static_cast<uint32_t>(rec.NumSamples()));
  for (const std::string &id : rec.channel_ids) {
    if (id.size() > 255) throw InvalidParameter("EMG channel label longer than 255 bytes");
    w.U8(static_cast<uint8_t>(id.size()));
    w.Str(id);
  }
  for (int ch = 0; ch < c; ++ch)
    for (int64_t i = 0; i < rec.NumSamples(); ++i)
      w.F32(static_cast<float>(rec.channels(ch, i)));
  return w.bytes();
}

EmgRecording DecodeEmgContainer(const std::vector<uint8_t> &bytes, const std::string &what) {
  ByteReader r(bytes, what);
  if (r.Str(4) != "EMGC") throw FormatError(what + ": bad magic (expected EMGC)");
  const uint16_t version = r.U16();
  if (version != kEmgContainerVersion)
    throw FormatError(what + ": unsupported container version " + std::to_string(version));
  const uint16_t channels = r.U16();
  EmgRecording rec;
  rec.sample_rate_hz = static_cast<int>(r.U32());
  const uint32_t samples = r.U32();
  for (int ch = 0; ch < channels; ++ch) rec.channel_ids.push_back(r.Str(r.U8()));
  const uint64_t payload = static_cast<uint64_t>(channels) * samples * 4;
  if (r.Remaining() != payload)
    throw FormatError(what + ": payload is " + std::to_string(r.Remaining()) +
                      " bytes, header declares " + std::to_string(payload));
  rec.channels.resize(channels, samples);
  for (int ch = 0; ch < channels; ++ch)
    for (uint32_t i = 0; i < samples; ++i) rec.channels(ch, i) = r.F32();
  return rec;
}

void EmgWrite(const std::string &path, const EmgRecording &rec) {
  WriteFileBytes(path, EncodeEmgContainer(rec));
}

EmgRecording EmgRead(const std::string &path) {
  return DecodeEmgContainer(ReadFileBytes(path), path);
}

}  // namespace emgse

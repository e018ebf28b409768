// io/emg-container.h

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

#ifndef EMGSE_IO_EMG_CONTAINER_H_
#define EMGSE_IO_EMG_CONTAINER_H_

#include <string>
#include <vector>

#include "feat/emg-features.h"

namespace emgse {

// Binary EMG container:
//
//   offset 0   "EMGC"
//          4   u16 format version (1)
//          6   u16 channel count C
//          8   u32 sample rate (Hz)
//         12   u32 samples per channel T
//         16   C labels, each u8 length + bytes
//          .   C x T float32, row-major (channel after channel)
//
// All integers little-endian.  The file size must match exactly.
constexpr uint16_t kEmgContainerVersion = 1;

std::vector<uint8_t> EncodeEmgContainer(const EmgRecording &rec);
EmgRecording DecodeEmgContainer(const std::vector<uint8_t> &bytes,
                                const std::string &what = "EMG container");

void EmgWrite(const std::string &path, const EmgRecording &rec);
EmgRecording EmgRead(const std::string &path);

}  // namespace emgse

#endif  // EMGSE_IO_EMG_CONTAINER_H_

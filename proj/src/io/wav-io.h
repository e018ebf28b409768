// io/wav-io.h

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

#ifndef EMGSE_IO_WAV_IO_H_
#define EMGSE_IO_WAV_IO_H_

#include <string>

#include "dsp/signal-dsp.h"

namespace emgse {

/// Reads a mono 16-bit PCM RIFF/WAVE file; samples are scaled by 1/32768.
/// Anything else (other encodings, more channels, truncated chunks) throws
/// FormatError.
Waveform WavRead(const std::string &path);

/// Writes a canonical 44-byte-header mono 16-bit PCM file.  Samples are
/// clamped to [-1, 1 - 2^-15] and rounded to the nearest code.
void WavWrite(const std::string &path, const Waveform &x);

constexpr uint32_t kWavFormatVersion = 1;

}  // namespace emgse

#endif  // EMGSE_IO_WAV_IO_H_

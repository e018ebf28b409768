// data/mixing.h

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

#ifndef EMGSE_DATA_MIXING_H_
#define EMGSE_DATA_MIXING_H_

#include <span>

#include "base/rng.h"
#include "dsp/signal-dsp.h"

namespace emgse {

double Rms(std::span<const double> x);

/// Gain that puts `noise` at `snr_db` below `clean`, measured over the whole
/// utterance.  Throws InvalidParameter if either signal is silent.
double SnrGain(const Waveform &clean, const Waveform &noise, double snr_db);

/// clean + SnrGain(...) * noise.  Rates and lengths must match.
Waveform MixAtSnr(const Waveform &clean, const Waveform &noise, double snr_db);

/// Length-matches a noise recording: random crop when it is long enough,
/// otherwise loop it and crop.
Waveform PrepareNoise(const Waveform &noise, size_t target_len, Rng *rng);

}  // namespace emgse

#endif  // EMGSE_DATA_MIXING_H_

// data/mixing.cc

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

#include "data/mixing.h"

#include <cmath>

#include "base/emgse-common.h"

namespace emgse {

namespace {
constexpr double kSilentRms = 1e-12;
}

double Rms(std::span<const double> x) {
  if (x.empty()) return 0.0;
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s / static_cast<double>(x.size()));
}

double SnrGain(const Waveform &clean, const Waveform &noise, double snr_db) {
  if (!std::isfinite(snr_db)) throw InvalidParameter("SNR must be finite");
  const double rc = Rms(clean.samples), rn = Rms(noise.samples);
  if (rc < kSilentRms) throw InvalidParameter("cannot mix: clean signal is silent");
  if (rn < kSilentRms) throw InvalidParameter("cannot mix: noise signal is silent");
  return rc / rn * std::pow(10.0, -snr_db / 20.0);
}

Waveform MixAtSnr(const Waveform &clean, const Waveform &noise, double snr_db) {
  if (clean.sample_rate_hz != noise.sample_rate_hz)
    throw ShapeMismatch("clean and noise sample rates differ");
  if (clean.size() != noise.size())
    throw ShapeMismatch("noise must be length-matched to the clean signal");
  const double g = SnrGain(clean, noise, snr_db);
  Waveform out = clean;
  for (size_t i = 0; i < out.size(); ++i) out.samples[i] += g * noise.samples[i];
  return out;
}

Waveform PrepareNoise(const Waveform &noise, size_t target_len, Rng *rng) {
  if (noise.samples.empty()) throw InvalidParameter("noise recording is empty");
  Waveform out;
  out.sample_rate_hz = noise.sample_rate_hz;
  const size_t n = noise.size();
  if (n == target_len) {
    out.samples = noise.samples;
    return out;
  }
  // Looping starts at a random offset as well.
  const size_t offset = n > target_len ? static_cast<size_t>(rng->Below(n - target_len + 1))
                                       : static_cast<size_t>(rng->Below(n));
  out.samples.resize(target_len);
  for (size_t i = 0; i < target_len; ++i) out.samples[i] = noise.samples[(offset + i) % n];
  return out;
}

}  // namespace emgse

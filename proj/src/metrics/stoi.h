// metrics/stoi.h

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

#ifndef EMGSE_METRICS_STOI_H_
#define EMGSE_METRICS_STOI_H_

#include "dsp/signal-dsp.h"

namespace emgse {

// Short-time objective intelligibility constants.
struct StoiConfig {
  int sample_rate_hz = 10000;
  int frame_length = 256;
  int fft_size = 512;
  int num_bands = 15;
  double min_freq_hz = 150.0;
  int segment_frames = 30;    // 384 ms
  double beta_db = -15.0;     // lower SDR bound of the clipping step
  double dynamic_range_db = 40.0;
};

/// One-third-octave band matrix (num_bands x fft_size/2+1) with the band
/// edges snapped to the nearest FFT bin; bin k belongs to band i when
/// low_i <= k < high_i.
Eigen::MatrixXd ThirdOctaveBands(const StoiConfig &config = {});

/// Drops the frames of both signals whose clean-frame energy is more than
/// the dynamic range below the loudest clean frame, then overlap-adds what
/// remains (Hann-windowed frames of frame_length, 50% overlap).
std::pair<std::vector<double>, std::vector<double>> RemoveSilentFrames(
    std::span<const double> clean, std::span<const double> processed,
    const StoiConfig &config = {});

/// STOI of `processed` against `clean`.  Both are resampled to 10 kHz.
/// Throws ShapeMismatch on different lengths or rates and InvalidParameter
/// when the clean signal is silent or, after silent-frame removal, shorter
/// than one 30-frame segment.
double Stoi(const Waveform &clean, const Waveform &processed, const StoiConfig &config = {});

/// Scale-invariant SDR in dB:  alpha = <e, r> / <r, r>,
/// 10 log10(|alpha r|^2 / |e - alpha r|^2), clamped to [-100, 100].
/// Throws InvalidParameter when the reference is all zero.
double SiSdr(const Waveform &reference, const Waveform &estimate);

}  // namespace emgse

#endif  // EMGSE_METRICS_STOI_H_

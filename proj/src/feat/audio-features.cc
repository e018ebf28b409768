// feat/audio-features.cc

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

#include "feat/audio-features.h"

#include <cmath>

#include "base/emgse-common.h"

namespace emgse {

SpectralFeatures ExtractAudioFeatures(const Waveform &x, const Normalizer *normalizer,
                                      const FeatureConfig &config) {
  ComplexSpectrogram spec = Stft(x, config.audio_rate_hz, config.window_sec,
                                 config.hop_sec, config.fft_size);
  SpectralFeatures f;
  f.frame_clock = spec.frame_clock;
  f.phase = spec.Phase();
  f.log_mag = spec.Magnitude().array().log1p().matrix();
  if (normalizer != nullptr) normalizer->Apply(&f.log_mag);
  return f;
}

Waveform ReconstructWaveform(const Eigen::MatrixXd &enhanced_norm,
                             const Eigen::MatrixXd &phase,
                             const Normalizer &normalizer, const FrameClock &clock,
                             const FeatureConfig &config) {
  if (enhanced_norm.rows() != phase.rows() || enhanced_norm.cols() != phase.cols())
    throw ShapeMismatch("enhanced spectrogram and phase shapes differ");
  if (enhanced_norm.rows() != clock.num_frames || enhanced_norm.cols() != config.NumBins())
    throw ShapeMismatch("enhanced spectrogram does not match the frame clock");
  if (!enhanced_norm.allFinite())
    throw InvalidParameter("enhanced spectrogram contains non-finite values");
  Eigen::MatrixXd mag = enhanced_norm;
  normalizer.Invert(&mag);
  mag = mag.array().expm1().cwiseMax(0.0).matrix();
  ComplexSpectrogram spec;
  spec.fft_size = config.fft_size;
  spec.frame_clock = clock;
  spec.data.resize(mag.rows(), mag.cols());
  for (Eigen::Index r = 0; r < mag.rows(); ++r)
    for (Eigen::Index c = 0; c < mag.cols(); ++c)
      spec.data(r, c) = std::polar(mag(r, c), phase(r, c));
  return Istft(spec);
}

}  // namespace emgse

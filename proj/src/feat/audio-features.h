// feat/audio-features.h

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

#ifndef EMGSE_FEAT_AUDIO_FEATURES_H_
#define EMGSE_FEAT_AUDIO_FEATURES_H_

#include <Eigen/Dense>

#include "dsp/signal-dsp.h"
#include "feat/feature-config.h"
#include "feat/normalizer.h"

namespace emgse {

/// log1p magnitude (normalized per frequency bin when a normalizer was
/// supplied) plus the untouched phase, frames x bins.
struct SpectralFeatures {
  Eigen::MatrixXd log_mag;
  Eigen::MatrixXd phase;
  FrameClock frame_clock;
};

SpectralFeatures ExtractAudioFeatures(const Waveform &x,
                                      const Normalizer *normalizer = nullptr,
                                      const FeatureConfig &config = {});

/// Inverse of the audio front end: denormalize, expm1, clamp negative
/// magnitudes to zero, attach `phase` and run the inverse STFT over `clock`.
Waveform ReconstructWaveform(const Eigen::MatrixXd &enhanced_norm,
                             const Eigen::MatrixXd &phase,
                             const Normalizer &normalizer,
                             const FrameClock &clock,
                             const FeatureConfig &config = {});

}  // namespace emgse

#endif  // EMGSE_FEAT_AUDIO_FEATURES_H_

// feat/feature-config.h

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

#ifndef EMGSE_FEAT_FEATURE_CONFIG_H_
#define EMGSE_FEAT_FEATURE_CONFIG_H_

namespace emgse {

// Front-end constants shared by the EMG and audio paths.
struct FeatureConfig {
  double window_sec = 0.032;
  double hop_sec = 0.008;
  int audio_rate_hz = 16000;
  int fft_size = 512;
  int emg_rate_hz = 2048;
  int emg_filter_order = 3;
  double emg_split_hz = 134.0;
  int context_frames = 15;

  int NumBins() const { return fft_size / 2 + 1; }
  int ContextWidth() const { return 2 * context_frames + 1; }
};

}  // namespace emgse

#endif  // EMGSE_FEAT_FEATURE_CONFIG_H_

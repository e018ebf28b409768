// data/mixture-features.h

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

#ifndef EMGSE_DATA_MIXTURE_FEATURES_H_
#define EMGSE_DATA_MIXTURE_FEATURES_H_

#include <map>
#include <string>
#include <vector>

#include "data/dataset-index.h"
#include "feat/audio-features.h"
#include "feat/emg-features.h"
#include "feat/feature-config.h"
#include "feat/normalizer.h"

namespace emgse {

/// Fitted feature statistics of a training split.  The audio normalizer is
/// fitted on the noisy training mixtures and shared by the network input and
/// the clean target.  EMG normalizers exist per channel set.
struct NormalizerSet {
  Normalizer audio;
  std::map<ChannelSet, Normalizer> emg;

  const Normalizer &Emg(ChannelSet set) const;
};

constexpr int kNormalizerSetVersion = 1;

std::string SerializeNormalizerSet(const NormalizerSet &n);
NormalizerSet ParseNormalizerSet(const std::string &text, const std::string &what);

/// Network inputs and target of one mixture, time-major.
struct MixtureExample {
  Eigen::MatrixXd emg;     // frames x EMG dim (empty when EMG is not used)
  Eigen::MatrixXd audio;   // frames x bins, normalized noisy log1p magnitude
  Eigen::MatrixXd target;  // frames x bins, normalized clean log1p magnitude
};

/// Loads clean audio, EMG time-domain features and noise recordings of a set
/// of mixtures once and renders examples from them on demand.  Rendering is
/// const and safe to call from several threads.
class MixtureFeaturizer {
 public:
  MixtureFeaturizer(const FeatureConfig &config, ChannelSet channels, bool use_emg);

  /// Reads every file referenced by `specs` (in parallel) and caches it.
  void Load(const std::vector<const MixSpec *> &specs, int jobs);

  const Waveform &Clean(const MixSpec &spec) const;
  const EmgRecording &Emg(const MixSpec &spec) const;
  Waveform Noisy(const MixSpec &spec) const;

  MixtureExample Make(const MixSpec &spec, const NormalizerSet &norm) const;

  /// Audio normalizer over the noisy mixtures and EMG normalizers over the
  /// distinct clean utterances of `specs`, for both channel sets when the
  /// recordings carry cheek labels.
  NormalizerSet Fit(const std::vector<const MixSpec *> &specs, int jobs) const;

  const FeatureConfig &config() const { return config_; }

 private:
  struct Utterance {
    Waveform audio;
    Eigen::MatrixXd clean_log_mag;
    EmgRecording emg;
    std::map<ChannelSet, Eigen::MatrixXd> td;
  };

  FeatureConfig config_;
  ChannelSet channels_;
  bool use_emg_;
  std::map<std::string, Utterance> clean_;
  std::map<std::string, Waveform> noise_;
};

}  // namespace emgse

#endif  // EMGSE_DATA_MIXTURE_FEATURES_H_

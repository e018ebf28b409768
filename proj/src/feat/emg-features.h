// feat/emg-features.h

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

#ifndef EMGSE_FEAT_EMG_FEATURES_H_
#define EMGSE_FEAT_EMG_FEATURES_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "feat/feature-config.h"
#include "feat/normalizer.h"

namespace emgse {

/// Multichannel surface EMG, one row per channel.  Channels whose id starts
/// with "cheek" belong to the cheek array, "chin" to the chin array.
struct EmgRecording {
  Eigen::MatrixXd channels;
  int sample_rate_hz = 2048;
  std::vector<std::string> channel_ids;

  int NumChannels() const { return static_cast<int>(channels.rows()); }
  int64_t NumSamples() const { return channels.cols(); }
};

enum class ChannelSet { kFull, kCheek };

const char *ChannelSetName(ChannelSet set);
ChannelSet ParseChannelSet(const std::string &name);

// Row indices of the channels used for `set`; throws InvalidParameter when
// the cheek subset is requested but no channel carries a cheek label.
std::vector<int> SelectChannels(const EmgRecording &rec, ChannelSet set);

/// Five time-domain descriptors of one frame.
struct TdFrame {
  double low_mean = 0.0;
  double low_power = 0.0;
  double high_abs_mean = 0.0;
  double high_power = 0.0;
  double high_zcr = 0.0;
};

constexpr int kTdFeaturesPerChannel = 5;

/// Low and high bands of one channel, split by complementary Butterworth
/// filters at the configured cutoff.
std::pair<std::vector<double>, std::vector<double>> SplitBands(
    std::span<const double> x, const FeatureConfig &config = {});

/// Fraction of adjacent pairs whose product is strictly negative.
double ZeroCrossingRate(std::span<const double> frame);

TdFrame TdFeatures(std::span<const double> low_frame,
                   std::span<const double> high_frame);

/// Per-frame TD features of the selected channels: frames x (5 * C), with the
/// five features of channel c at columns [5c, 5c + 5).
Eigen::MatrixXd ComputeTdMatrix(const EmgRecording &rec, ChannelSet set,
                                const FeatureConfig &config = {});

/// Stacks +-context frames around every frame (zero beyond the edges).
/// Column of (channel c, offset o, feature f) is
///   c * (2K + 1) * 5 + (o + K) * 5 + f.
FeatureMatrix StackContext(const Eigen::MatrixXd &per_frame, int context_frames);

/// Full EMG front end: split bands, frame, TD features, stack context, and
/// normalize when a normalizer is given.
FeatureMatrix ExtractEmgFeatures(const EmgRecording &rec, ChannelSet set,
                                 const Normalizer *normalizer = nullptr,
                                 const FeatureConfig &config = {});

int EmgFeatureDim(int num_channels, const FeatureConfig &config = {});

}  // namespace emgse

#endif  // EMGSE_FEAT_EMG_FEATURES_H_

// feat/emg-features.cc

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

#include "feat/emg-features.h"

#include <cmath>

#include "base/emgse-common.h"
#include "dsp/signal-dsp.h"

namespace emgse {

const char *ChannelSetName(ChannelSet set) {
  return set == ChannelSet::kCheek ? "cheek" : "full";
}

ChannelSet ParseChannelSet(const std::string &name) {
  if (name == "full") return ChannelSet::kFull;
  if (name == "cheek") return ChannelSet::kCheek;
  throw InvalidParameter("unknown channel set '" + name + "' (expected full|cheek)");
}

std::vector<int> SelectChannels(const EmgRecording &rec, ChannelSet set) {
  std::vector<int> rows;
  for (int c = 0; c < rec.NumChannels(); ++c) {
    if (set == ChannelSet::kFull) {
      rows.push_back(c);
    } else if (c < static_cast<int>(rec.channel_ids.size()) &&
               rec.channel_ids[c].rfind("cheek", 0) == 0) {
      rows.push_back(c);
    }
  }
  if (rows.empty())
    throw InvalidParameter(set == ChannelSet::kCheek
                               ? "recording has no channels labeled as cheek"
                               : "recording has no channels");
  return rows;
}

std::pair<std::vector<double>, std::vector<double>> SplitBands(
    std::span<const double> x, const FeatureConfig &config) {
  // Filter state starts from zero for every call, i.e. per utterance.
  IirFilter lp = DesignButterworth(config.emg_filter_order, config.emg_split_hz,
                                   config.emg_rate_hz, FilterKind::kLowpass);
  IirFilter hp = DesignButterworth(config.emg_filter_order, config.emg_split_hz,
                                   config.emg_rate_hz, FilterKind::kHighpass);
  return {FilterApply(lp, x), FilterApply(hp, x)};
}

double ZeroCrossingRate(std::span<const double> frame) {
  if (frame.size() < 2)
    throw InvalidParameter("zero-crossing rate needs at least two samples");
  int crossings = 0;
  for (size_t i = 1; i < frame.size(); ++i)
    if (frame[i - 1] * frame[i] < 0.0) ++crossings;
  return static_cast<double>(crossings) / static_cast<double>(frame.size() - 1);
}

TdFrame TdFeatures(std::span<const double> low_frame,
                   std::span<const double> high_frame) {
  if (low_frame.size() != high_frame.size() || low_frame.empty())
    throw ShapeMismatch("low and high band frames must have the same nonzero length");
  const double n = static_cast<double>(low_frame.size());
  TdFrame td;
  for (size_t k = 0; k < low_frame.size(); ++k) {
    td.low_mean += low_frame[k];
    td.low_power += low_frame[k] * low_frame[k];
    td.high_abs_mean += std::abs(high_frame[k]);
    td.high_power += high_frame[k] * high_frame[k];
  }
  td.low_mean /= n;
  td.low_power /= n;
  td.high_abs_mean /= n;
  td.high_power /= n;
  td.high_zcr = ZeroCrossingRate(high_frame);
  return td;
}

Eigen::MatrixXd ComputeTdMatrix(const EmgRecording &rec, ChannelSet set,
                                const FeatureConfig &config) {
  if (rec.sample_rate_hz != config.emg_rate_hz)
    throw InvalidParameter("EMG must be sampled at " +
                           std::to_string(config.emg_rate_hz) + " Hz, got " +
                           std::to_string(rec.sample_rate_hz));
  if (!rec.channels.allFinite())
    throw InvalidParameter("EMG recording contains non-finite samples");
  const std::vector<int> rows = SelectChannels(rec, set);
  const FrameClock clock = MakeFrameClock(rec.NumSamples(), rec.sample_rate_hz,
                                          config.window_sec, config.hop_sec);
  const int win = clock.WindowLength();
  Eigen::MatrixXd out(clock.num_frames,
                      kTdFeaturesPerChannel * static_cast<int>(rows.size()));
  std::vector<double> signal(static_cast<size_t>(rec.NumSamples()));
  for (size_t ci = 0; ci < rows.size(); ++ci) {
    for (int64_t i = 0; i < rec.NumSamples(); ++i) signal[i] = rec.channels(rows[ci], i);
    auto [low, high] = SplitBands(signal, config);
    for (int t = 0; t < clock.num_frames; ++t) {
      const size_t start = static_cast<size_t>(clock.FrameStart(t));
      TdFrame td = TdFeatures(std::span<const double>(low).subspan(start, win),
                              std::span<const double>(high).subspan(start, win));
      const int col = kTdFeaturesPerChannel * static_cast<int>(ci);
      out(t, col + 0) = td.low_mean;
      out(t, col + 1) = td.low_power;
      out(t, col + 2) = td.high_abs_mean;
      out(t, col + 3) = td.high_power;
      out(t, col + 4) = td.high_zcr;
    }
  }
  return out;
}

FeatureMatrix StackContext(const Eigen::MatrixXd &per_frame, int context_frames) {
  if (per_frame.cols() % kTdFeaturesPerChannel != 0)
    throw ShapeMismatch("per-frame features must hold 5 values per channel");
  const int frames = static_cast<int>(per_frame.rows());
  const int channels = static_cast<int>(per_frame.cols()) / kTdFeaturesPerChannel;
  const int width = 2 * context_frames + 1;
  const int block = width * kTdFeaturesPerChannel;
  FeatureMatrix out;
  out.data = Eigen::MatrixXd::Zero(frames, static_cast<Eigen::Index>(channels) * block);
  for (int c = 0; c < channels; ++c) {
    for (int o = -context_frames; o <= context_frames; ++o) {
      const int dst = c * block + (o + context_frames) * kTdFeaturesPerChannel;
      const int src = c * kTdFeaturesPerChannel;
      // Rows t with 0 <= t + o < frames.
      const int first = std::max(0, -o), last = std::min(frames, frames - o);
      if (last <= first) continue;
      out.data.block(first, dst, last - first, kTdFeaturesPerChannel) =
          per_frame.block(first + o, src, last - first, kTdFeaturesPerChannel);
    }
  }
  return out;
}

FeatureMatrix ExtractEmgFeatures(const EmgRecording &rec, ChannelSet set,
                                 const Normalizer *normalizer,
                                 const FeatureConfig &config) {
  FeatureMatrix m = StackContext(ComputeTdMatrix(rec, set, config), config.context_frames);
  if (normalizer != nullptr) normalizer->Apply(&m.data);
  return m;
}

int EmgFeatureDim(int num_channels, const FeatureConfig &config) {
  return num_channels * config.ContextWidth() * kTdFeaturesPerChannel;
}

}  // namespace emgse

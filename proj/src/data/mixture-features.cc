// data/mixture-features.cc

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

#include "data/mixture-features.h"

#include <mutex>

#include <json.hpp>

#include "base/emgse-common.h"
#include "base/parallel.h"
#include "io/emg-container.h"
#include "io/wav-io.h"

namespace emgse {

using nlohmann::json;

namespace {

bool HasCheekLabels(const EmgRecording &rec) {
  for (const std::string &id : rec.channel_ids)
    if (id.rfind("cheek", 0) == 0) return true;
  return false;
}

json NormalizerJson(const Normalizer &n) {
  return {{"min", std::vector<double>(n.min.data(), n.min.data() + n.min.size())},
          {"max", std::vector<double>(n.max.data(), n.max.data() + n.max.size())}};
}

Normalizer NormalizerFromJson(const json &j) {
  std::vector<double> lo = j.at("min").get<std::vector<double>>();
  std::vector<double> hi = j.at("max").get<std::vector<double>>();
  if (lo.size() != hi.size() || lo.empty()) throw FormatError("normalizer min/max sizes differ");
  Normalizer n;
  n.min = Eigen::Map<Eigen::VectorXd>(lo.data(), lo.size());
  n.max = Eigen::Map<Eigen::VectorXd>(hi.data(), hi.size());
  return n;
}

}  // namespace

const Normalizer &NormalizerSet::Emg(ChannelSet set) const {
  auto it = emg.find(set);
  if (it == emg.end())
    throw InvalidParameter(std::string("no EMG normalizer for channel set '") +
                           ChannelSetName(set) + "'");
  return it->second;
}

std::string SerializeNormalizerSet(const NormalizerSet &n) {
  json j = {{"format", "emgse-normalizers"}, {"version", kNormalizerSetVersion}, {"audio", NormalizerJson(n.audio)}};
  for (const auto &[set, norm] : n.emg) j["emg"][ChannelSetName(set)] = NormalizerJson(norm);
  return j.dump(1) + "\n";
}

NormalizerSet ParseNormalizerSet(const std::string &text, const std::string &what) {
  try {
    json j = json::parse(text);
    if (j.value("format", "") != "emgse-normalizers" || j.value("version", 0) != kNormalizerSetVersion)
      throw FormatError(what + ": not a version 1 normalizer file");
    NormalizerSet n;
    n.audio = NormalizerFromJson(j.at("audio"));
    if (j.contains("emg"))
      for (const auto &[name, value] : j["emg"].items())
        n.emg[ParseChannelSet(name)] = NormalizerFromJson(value);
    return n;
  } catch (const json::exception &e) {
    throw FormatError(what + ": " + e.what());
  }
}

MixtureFeaturizer::MixtureFeaturizer(const FeatureConfig &config, ChannelSet channels,
                                     bool use_emg)
    : config_(config), channels_(channels), use_emg_(use_emg) {}

void MixtureFeaturizer::Load(const std::vector<const MixSpec *> &specs, int jobs) {
  std::vector<const MixSpec *> todo;
  std::vector<std::string> noise_paths;
  for (const MixSpec *s : specs) {
    if (!clean_.count(s->clean_id)) {
      clean_[s->clean_id];
      todo.push_back(s);
    }
    if (!noise_.count(s->noise_path)) {
      noise_[s->noise_path];
      noise_paths.push_back(s->noise_path);
    }
  }
  ParallelFor(todo.size(), jobs, [&](size_t i) {
    const MixSpec &s = *todo[i];
    Utterance u;
    u.audio = WavRead(s.clean_audio);
    if (u.audio.sample_rate_hz != config_.audio_rate_hz)
      throw FormatError(s.clean_audio + ": expected " + std::to_string(config_.audio_rate_hz) +
                        " Hz audio");
    u.clean_log_mag = ExtractAudioFeatures(u.audio, nullptr, config_).log_mag;
    if (use_emg_) {
      if (s.emg_path.empty())
        throw MissingModality("utterance '" + s.clean_id + "' has no EMG recording");
      u.emg = EmgRead(s.emg_path);
      u.td[channels_] = ComputeTdMatrix(u.emg, channels_, config_);
      if (u.td[channels_].rows() != u.clean_log_mag.rows())
        throw ShapeMismatch("utterance '" + s.clean_id + "': EMG gives " +
                            std::to_string(u.td[channels_].rows()) + " frames, audio " +
                            std::to_string(u.clean_log_mag.rows()));
    }
    // Distinct keys were inserted up front, so each slot has one writer.
    clean_.at(s.clean_id) = std::move(u);
  });
  ParallelFor(noise_paths.size(), jobs,
              [&](size_t i) { noise_.at(noise_paths[i]) = WavRead(noise_paths[i]); });
}

const Waveform &MixtureFeaturizer::Clean(const MixSpec &spec) const {
  auto it = clean_.find(spec.clean_id);
  if (it == clean_.end()) throw InvalidParameter("utterance '" + spec.clean_id + "' not loaded");
  return it->second.audio;
}

const EmgRecording &MixtureFeaturizer::Emg(const MixSpec &spec) const {
  if (!use_emg_) throw MissingModality("featurizer was built without EMG");
  auto it = clean_.find(spec.clean_id);
  if (it == clean_.end()) throw InvalidParameter("utterance '" + spec.clean_id + "' not loaded");
  return it->second.emg;
}

Waveform MixtureFeaturizer::Noisy(const MixSpec &spec) const {
  auto it = noise_.find(spec.noise_path);
  if (it == noise_.end()) throw InvalidParameter("noise '" + spec.noise_path + "' not loaded");
  return MakeMixture(spec, Clean(spec), it->second);
}

MixtureExample MixtureFeaturizer::Make(const MixSpec &spec, const NormalizerSet &norm) const {
  const Utterance &u = clean_.at(spec.clean_id);
  MixtureExample ex;
  ex.audio = ExtractAudioFeatures(Noisy(spec), &norm.audio, config_).log_mag;
  ex.target = u.clean_log_mag;
  norm.audio.Apply(&ex.target);
  if (use_emg_) {
    ex.emg = StackContext(u.td.at(channels_), config_.context_frames).data;
    norm.Emg(channels_).Apply(&ex.emg);
  }
  return ex;
}

NormalizerSet MixtureFeaturizer::Fit(const std::vector<const MixSpec *> &specs, int jobs) const {
  if (specs.empty()) throw InvalidParameter("cannot fit normalizers on an empty split");
  std::vector<NormalizerAccumulator> audio(specs.size());
  ParallelFor(specs.size(), jobs, [&](size_t i) {
    audio[i].Add(ExtractAudioFeatures(Noisy(*specs[i]), nullptr, config_).log_mag);
  });
  NormalizerSet out;
  NormalizerAccumulator total;
  for (const NormalizerAccumulator &a : audio) total.Merge(a);
  out.audio = total.Finish();
  if (!use_emg_) return out;

  std::vector<const Utterance *> utts;
  std::map<std::string, bool> seen;
  for (const MixSpec *s : specs)
    if (!seen[s->clean_id]) {
      seen[s->clean_id] = true;
      utts.push_back(&clean_.at(s->clean_id));
    }
  std::vector<ChannelSet> sets = {ChannelSet::kFull};
  if (HasCheekLabels(utts.front()->emg)) sets.push_back(ChannelSet::kCheek);
  for (ChannelSet set : sets) {
    std::vector<NormalizerAccumulator> emg(utts.size());
    ParallelFor(utts.size(), jobs, [&](size_t i) {
      emg[i].Add(ExtractEmgFeatures(utts[i]->emg, set, nullptr, config_).data);
    });
    NormalizerAccumulator sum;
    for (const NormalizerAccumulator &a : emg) sum.Merge(a);
    out.emg[set] = sum.Finish();
  }
  return out;
}

}  // namespace emgse

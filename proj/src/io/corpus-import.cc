// io/corpus-import.cc

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

#include "io/corpus-import.h"

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>

#include <fmt/format.h>

#include "base/emgse-common.h"
#include "base/logging.h"
#include "io/binary-io.h"
#include "io/emg-container.h"
#include "io/wav-io.h"

namespace emgse {

namespace fs = std::filesystem;

namespace {

void ValidateImportConfig(const ImportConfig &c) {
  if (c.raw_channels <= 0 || c.cheek_channels < 0 || c.cheek_channels > c.raw_channels)
    throw InvalidParameter("import: bad raw/cheek channel counts");
  for (int ch : c.exclude_channels)
    if (ch < 0 || ch >= c.raw_channels)
      throw InvalidParameter(fmt::format("import: excluded channel {} out of range", ch));
  if (c.emg_rate_hz <= 0) throw InvalidParameter("import: emg_rate_hz must be positive");
  if (c.split_train < 0 || c.split_val < 0 || c.split_test < 0)
    throw InvalidParameter("import: split sizes must be >= 0");
}

std::vector<int> KeptChannels(const ImportConfig &c) {
  std::set<int> excluded(c.exclude_channels.begin(), c.exclude_channels.end());
  std::vector<int> kept;
  for (int ch = 0; ch < c.raw_channels; ++ch)
    if (!excluded.count(ch)) kept.push_back(ch);
  if (static_cast<int>(kept.size()) != c.expected_channels)
    throw InvalidParameter(fmt::format("import: {} channels remain after exclusion, expected {}",
                                       kept.size(), c.expected_channels));
  return kept;
}

}  // namespace

std::vector<std::string> ImportedChannelLabels(const ImportConfig &config) {
  ValidateImportConfig(config);
  std::vector<std::string> labels;
  int cheek = 0, chin = 0;
  for (int ch : KeptChannels(config)) {
    if (ch < config.cheek_channels)
      labels.push_back(fmt::format("cheek_{:02d}", ++cheek));
    else
      labels.push_back(fmt::format("chin_{:02d}", ++chin));
  }
  return labels;
}

EmgRecording DecodeRawEmg(const std::vector<uint8_t> &bytes, const ImportConfig &config,
                          const std::string &what) {
  std::vector<std::string> labels = ImportedChannelLabels(config);
  std::vector<int> kept = KeptChannels(config);
  const size_t frame_bytes = 2 * static_cast<size_t>(config.raw_channels);
  if (bytes.empty() || bytes.size() % frame_bytes != 0)
    throw FormatError(fmt::format("{}: {} bytes is not a whole number of {}-channel frames", what,
                                  bytes.size(), config.raw_channels));
  const int64_t samples = static_cast<int64_t>(bytes.size() / frame_bytes);
  EmgRecording rec;
  rec.sample_rate_hz = config.emg_rate_hz;
  rec.channel_ids = std::move(labels);
  rec.channels.resize(static_cast<Eigen::Index>(kept.size()), samples);
  ByteReader in(bytes, what);
  std::vector<int16_t> frame(config.raw_channels);
  for (int64_t t = 0; t < samples; ++t) {
    for (int c = 0; c < config.raw_channels; ++c) frame[c] = in.I16();
    for (size_t k = 0; k < kept.size(); ++k) rec.channels(k, t) = frame[kept[k]];
  }
  return rec;
}

std::vector<ManifestRow> ImportCorpus(const std::string &src_dir, const std::string &out_dir,
                                      const ImportConfig &config) {
  ValidateImportConfig(config);
  if (!fs::is_directory(src_dir)) throw Error("import: source directory not found: " + src_dir);

  // speaker -> sorted utterance stems that have audio
  std::map<std::string, std::vector<std::string>> speakers;
  for (const auto &entry : fs::directory_iterator(src_dir)) {
    if (!entry.is_directory()) continue;
    auto &utts = speakers[entry.path().filename().string()];
    for (const auto &f : fs::directory_iterator(entry.path()))
      if (f.is_regular_file() && f.path().extension() == ".wav")
        utts.push_back(f.path().stem().string());
    std::sort(utts.begin(), utts.end());
  }

  fs::create_directories(fs::path(out_dir) / "audio");
  fs::create_directories(fs::path(out_dir) / "emg");
  std::vector<ManifestRow> rows;
  for (const auto &[speaker, utts] : speakers) {
    int index = 0;
    for (const std::string &utt : utts) {
      const fs::path dir = fs::path(src_dir) / speaker;
      const fs::path emg_path = dir / (utt + ".emg");
      if (!fs::exists(emg_path)) {
        Log().warn("import: {} has no EMG file, skipping", (dir / utt).string());
        continue;
      }
      Split split;
      if (index < config.split_train)
        split = Split::kTrain;
      else if (index < config.split_train + config.split_val)
        split = Split::kVal;
      else if (index < config.split_train + config.split_val + config.split_test)
        split = Split::kTest;
      else
        break;
      ++index;

      Waveform audio = WavRead((dir / (utt + ".wav")).string());
      EmgRecording emg = DecodeRawEmg(ReadFileBytes(emg_path.string()), config, emg_path.string());
      ManifestRow row;
      row.id = speaker + "_" + utt;
      row.split = split;
      row.audio_path = "audio/" + row.id + ".wav";
      row.emg_path = "emg/" + row.id + ".emgc";
      WavWrite((fs::path(out_dir) / row.audio_path).string(), audio);
      EmgWrite((fs::path(out_dir) / row.emg_path).string(), emg);
      rows.push_back(row);
    }
  }
  if (rows.empty()) throw InvalidParameter("import: no utterances with both audio and EMG");
  const std::string manifest = (fs::path(out_dir) / "manifest.tsv").string();
  WriteManifest(manifest, rows);
  Log().info("import: {} utterances from {} speakers", rows.size(), speakers.size());
  return ReadManifest(manifest);
}

}  // namespace emgse

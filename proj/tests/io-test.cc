// tests/io-test.cc

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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include <gtest/gtest.h>

#include "base/emgse-common.h"
#include "base/rng.h"
#include "io/binary-io.h"
#include "io/corpus-import.h"
#include "io/emg-container.h"
#include "io/feature-file.h"
#include "io/manifest.h"
#include "io/pipeline-config.h"
#include "io/wav-io.h"

namespace emgse {
namespace {

namespace fs = std::filesystem;

std::string TempPath(const std::string &name) {
  fs::path dir = fs::temp_directory_path() /
                 ("emgse-io-test-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return (dir / name).string();
}

TEST(WavTest, QuantizedSamplesRoundTripExactly) {
  Rng rng(3);
  Waveform x;
  for (int i = 0; i < 1000; ++i)
    x.samples.push_back(static_cast<double>(static_cast<int>(rng.Below(65536)) - 32768) / 32768.0);
  std::string path = TempPath("rt.wav");
  WavWrite(path, x);
  Waveform y = WavRead(path);
  EXPECT_EQ(y.sample_rate_hz, 16000);
  ASSERT_EQ(y.samples, x.samples);
  EXPECT_EQ(fs::file_size(path), 44u + 2000u);
  // Second write is byte-identical.
  std::string path2 = TempPath("rt2.wav");
  WavWrite(path2, y);
  EXPECT_EQ(ReadFileBytes(path), ReadFileBytes(path2));
}

TEST(WavTest, ClampsAndRounds) {
  Waveform x;
  x.samples = {2.0, -3.0, 0.5 / 32768.0 * 0.9, 1.0, -1.0};
  std::string path = TempPath("clamp.wav");
  WavWrite(path, x);
  Waveform y = WavRead(path);
  EXPECT_DOUBLE_EQ(y.samples[0], 32767.0 / 32768.0);
  EXPECT_DOUBLE_EQ(y.samples[1], -1.0);
  EXPECT_DOUBLE_EQ(y.samples[2], 0.0);
  EXPECT_DOUBLE_EQ(y.samples[3], 32767.0 / 32768.0);
  EXPECT_DOUBLE_EQ(y.samples[4], -1.0);
}

TEST(WavTest, RejectsTruncatedAndForeignFiles) {
  Waveform x;
  x.samples.assign(100, 0.25);
  std::string path = TempPath("trunc.wav");
  WavWrite(path, x);
  std::vector<uint8_t> bytes = ReadFileBytes(path);
  bytes.resize(bytes.size() - 10);
  WriteFileBytes(path, bytes);
  EXPECT_THROW(WavRead(path), FormatError);

  std::string junk = TempPath("junk.wav");
  WriteFileText(junk, "this is not a wave file at all, not even close");
  EXPECT_THROW(WavRead(junk), FormatError);

  // Stereo header.
  WavWrite(path, x);
  bytes = ReadFileBytes(path);
  bytes[22] = 2;
  WriteFileBytes(path, bytes);
  EXPECT_THROW(WavRead(path), FormatError);
  EXPECT_THROW(WavRead(TempPath("missing.wav")), Error);
}

TEST(EmgContainerTest, RoundTripAndLayout) {
  EmgRecording rec;
  rec.sample_rate_hz = 2048;
  rec.channel_ids = {"cheek_01", "cheek_02", "chin_01"};
  rec.channels = Eigen::MatrixXd::Random(3, 50).array().round() * 0.5;
  std::vector<uint8_t> bytes = EncodeEmgContainer(rec);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "EMGC");
  EXPECT_EQ(bytes.size(), 16u + (1 + 8) * 2 + (1 + 7) + 3 * 50 * 4);
  EmgRecording back = DecodeEmgContainer(bytes);
  EXPECT_EQ(back.channel_ids, rec.channel_ids);
  EXPECT_EQ(back.sample_rate_hz, 2048);
  EXPECT_EQ(back.channels, rec.channels);
  EXPECT_EQ(EncodeEmgContainer(back), bytes);

  std::vector<uint8_t> cut(bytes.begin(), bytes.end() - 1);
  EXPECT_THROW(DecodeEmgContainer(cut), FormatError);
  std::vector<uint8_t> extra = bytes;
  extra.push_back(0);
  EXPECT_THROW(DecodeEmgContainer(extra), FormatError);
  std::vector<uint8_t> bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(DecodeEmgContainer(bad), FormatError);
  bad = bytes;
  bad[4] = 9;
  EXPECT_THROW(DecodeEmgContainer(bad), FormatError);
}

TEST(FeatureFileTest, TextRoundTripIsExact) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Random(7, 4);
  m(0, 0) = 1e-300;
  m(1, 1) = -123456.789012345678;
  std::string path = TempPath("feat.txt");
  WriteFeatureText(path, m, "seven frames");
  EXPECT_EQ(ReadFeatureText(path), m);
}

TEST(ManifestTest, RoundTripResolvesRelativePaths) {
  std::vector<ManifestRow> rows = {{"spk01_u001", Split::kTrain, "audio/a.wav", "emg/a.emgc"},
                                   {"spk01_u002", Split::kTest, "/abs/b.wav", ""}};
  std::string path = TempPath("m/manifest.tsv");
  WriteManifest(path, rows);
  std::vector<ManifestRow> back = ReadManifest(path);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].id, "spk01_u001");
  EXPECT_EQ(back[0].split, Split::kTrain);
  EXPECT_EQ(back[0].audio_path, (fs::path(path).parent_path() / "audio/a.wav").string());
  EXPECT_EQ(back[1].audio_path, "/abs/b.wav");
  EXPECT_EQ(back[1].split, Split::kTest);
  EXPECT_EQ(SpeakerOf("spk01_u002"), "spk01");
  EXPECT_EQ(SpeakerOf("solo"), "solo");
  EXPECT_THROW(ParseSplit("dev"), Error);
}

TEST(PipelineConfigTest, DefaultsAndOverrides) {
  PipelineConfig d = ParsePipelineConfig("", "empty");
  EXPECT_EQ(d.features.context_frames, 15);
  EXPECT_EQ(d.import.exclude_channels, (std::vector<int>{7, 15, 23, 31, 39}));
  EXPECT_EQ(d.train.patience, 15);
  EXPECT_EQ(d.variant, Variant::kEmgse);

  PipelineConfig c = ParsePipelineConfig(
      "# comment\n"
      "[features]\ncontext_frames = 4\n"
      "[dataset]\ntest_snrs = -10, 0 ,5.5\n"
      "[import]\nexclude_channels = 0,1\nexpected_channels = 38\n"
      "[train]\nvariant = SE_A\nchannels = cheek\nlearning_rate = 3e-4\n"
      "precision = f64\nval_items = 12\n",
      "inline");
  EXPECT_EQ(c.features.context_frames, 4);
  EXPECT_EQ(c.dataset.test_snrs, (std::vector<double>{-10, 0, 5.5}));
  EXPECT_EQ(c.import.exclude_channels, (std::vector<int>{0, 1}));
  EXPECT_EQ(c.variant, Variant::kSeA);
  EXPECT_EQ(c.channels, ChannelSet::kCheek);
  EXPECT_DOUBLE_EQ(c.train.adam.learning_rate, 3e-4);
  EXPECT_EQ(c.train.precision, Precision::kFloat64);
  EXPECT_EQ(c.val_items, 12);
}

TEST(PipelineConfigTest, RejectsUnknownAndMalformed) {
  EXPECT_THROW(ParsePipelineConfig("[train]\nlearning_rat = 1\n", "x"), FormatError);
  EXPECT_THROW(ParsePipelineConfig("[trian]\npatience = 1\n", "x"), FormatError);
  EXPECT_THROW(ParsePipelineConfig("patience = 1\n", "x"), FormatError);
  EXPECT_THROW(ParsePipelineConfig("[train]\npatience = 1x\n", "x"), FormatError);
  EXPECT_THROW(ParsePipelineConfig("[train]\nvariant = big\n", "x"), Error);
  EXPECT_THROW(ParsePipelineConfig("[train\n", "x"), FormatError);
}

TEST(PipelineConfigTest, ShippedConfigHoldsTheDefaults) {
  PipelineConfig c = LoadPipelineConfig(EMGSE_SOURCE_DIR "/tools/emgse.ini");
  PipelineConfig d;
  EXPECT_EQ(c.features.context_frames, d.features.context_frames);
  EXPECT_EQ(c.features.emg_split_hz, d.features.emg_split_hz);
  EXPECT_EQ(c.synth.num_speakers, d.synth.num_speakers);
  EXPECT_EQ(c.synth.num_train_noises, d.synth.num_train_noises);
  EXPECT_EQ(c.import.exclude_channels, d.import.exclude_channels);
  EXPECT_EQ(c.dataset.train_snrs, d.dataset.train_snrs);
  EXPECT_EQ(c.dataset.test_snrs, d.dataset.test_snrs);
  EXPECT_EQ(c.train.adam.learning_rate, d.train.adam.learning_rate);
  EXPECT_EQ(c.train.patience, d.train.patience);
  EXPECT_EQ(c.train.precision, d.train.precision);
  EXPECT_EQ(c.variant, d.variant);
}

std::vector<uint8_t> RawEmgBytes(int channels, int samples) {
  ByteWriter w;
  for (int t = 0; t < samples; ++t)
    for (int c = 0; c < channels; ++c) w.I16(static_cast<int16_t>(100 * c - t));
  return w.bytes();
}

TEST(CorpusImportTest, DropsExcludedChannelsAndLabels) {
  ImportConfig config;
  EmgRecording rec = DecodeRawEmg(RawEmgBytes(40, 9), config);
  ASSERT_EQ(rec.NumChannels(), 35);
  EXPECT_EQ(rec.NumSamples(), 9);
  EXPECT_EQ(rec.sample_rate_hz, 2048);
  EXPECT_EQ(rec.channel_ids[0], "cheek_01");
  EXPECT_EQ(rec.channel_ids[27], "cheek_28");
  EXPECT_EQ(rec.channel_ids[28], "chin_01");
  EXPECT_EQ(rec.channel_ids[34], "chin_07");
  // Raw channel 8 follows the excluded 7.
  EXPECT_EQ(rec.channels(7, 3), 800 - 3);
  EXPECT_EQ(rec.channels(34, 0), 3800);
  EXPECT_EQ(SelectChannels(rec, ChannelSet::kCheek).size(), 28u);

  EXPECT_THROW(DecodeRawEmg(std::vector<uint8_t>(81, 0), config), FormatError);
  ImportConfig wrong = config;
  wrong.exclude_channels = {7, 15, 23, 31};
  EXPECT_THROW(DecodeRawEmg(RawEmgBytes(40, 9), wrong), InvalidParameter);
}

TEST(CorpusImportTest, SkipsMissingEmgAndIsIdempotent) {
  fs::path src = TempPath("raw-corpus"), out = TempPath("imported");
  fs::remove_all(src);
  fs::remove_all(out);
  Rng rng(6);
  for (const char *spk : {"spk1", "spk2"}) {
    fs::create_directories(src / spk);
    for (int u = 0; u < 3; ++u) {
      Waveform w;
      for (int i = 0; i < 1600; ++i) w.samples.push_back(std::round(rng.Uniform(-1000, 1000)) / 32768.0);
      std::string stem = "utt" + std::to_string(u);
      WavWrite((src / spk / (stem + ".wav")).string(), w);
      if (std::string(spk) == "spk2" && u == 1) continue;
      WriteFileBytes((src / spk / (stem + ".emg")).string(), RawEmgBytes(40, 205));
    }
  }
  ImportConfig config;
  config.split_train = 1;
  config.split_val = 1;
  config.split_test = 1;
  std::vector<ManifestRow> rows = ImportCorpus(src.string(), out.string(), config);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0].id, "spk1_utt0");
  EXPECT_EQ(rows[0].split, Split::kTrain);
  EXPECT_EQ(rows[2].split, Split::kTest);
  EXPECT_EQ(rows[4].id, "spk2_utt2");
  EXPECT_EQ(rows[4].split, Split::kVal);
  EXPECT_EQ(EmgRead(rows[1].emg_path).NumChannels(), 35);
  EXPECT_EQ(WavRead(rows[0].audio_path).samples, WavRead((src / "spk1" / "utt0.wav").string()).samples);

  auto snapshot = [&] {
    std::map<std::string, std::vector<uint8_t>> files;
    for (const auto &e : fs::recursive_directory_iterator(out))
      if (e.is_regular_file()) files[e.path().string()] = ReadFileBytes(e.path().string());
    return files;
  };
  auto first = snapshot();
  ImportCorpus(src.string(), out.string(), config);
  EXPECT_EQ(snapshot(), first);
}

}  // namespace
}  // namespace emgse

// data/dataset-index.h

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

#ifndef EMGSE_DATA_DATASET_INDEX_H_
#define EMGSE_DATA_DATASET_INDEX_H_

#include <cstdint>
#include <string>
#include <vector>

#include "dsp/signal-dsp.h"
#include "io/manifest.h"

namespace emgse {

/// One noise recording of a bank; the id names its noise type.
struct NoiseEntry {
  std::string id;
  std::string path;
};

/// Every WAV file of a directory, sorted by file name; ids are file stems.
std::vector<NoiseEntry> ScanNoiseBank(const std::string &dir);

/// One noisy utterance: which clean utterance, which noise, which SNR, and
/// the seed that fixes the noise crop.
struct MixSpec {
  std::string id;
  Split split = Split::kTrain;
  std::string clean_id;
  std::string clean_audio;
  std::string emg_path;
  std::string noise_id;
  std::string noise_path;
  double snr_db = 0.0;
  uint64_t seed = 0;
};

struct DatasetConfig {
  std::vector<double> train_snrs = {-10, -5, 0, 5, 10};
  std::vector<double> test_snrs = {-11, -4, -1, 4};
  // Train and validation utterances each get this many distinct noise types.
  int noises_per_utterance = 5;
};

struct DatasetIndex {
  uint64_t seed = 0;
  std::vector<MixSpec> mixtures;

  std::vector<const MixSpec *> Mixtures(Split s) const;
  // Distinct clean utterances of a split, in first-appearance order.
  std::vector<std::string> Utterances(Split s) const;
};

/// Train and validation utterances get `noises_per_utterance` train-bank noise
/// types drawn without replacement, each at every training SNR; test
/// utterances get every test-bank noise at every test SNR.  Throws
/// InvalidParameter when the two banks share a noise id or file, or a clean
/// utterance appears in more than one split.
DatasetIndex BuildDataset(const std::vector<ManifestRow> &manifest,
                          const std::vector<NoiseEntry> &train_noises,
                          const std::vector<NoiseEntry> &test_noises,
                          const DatasetConfig &config, uint64_t seed);

// Line-delimited JSON: a header object followed by one object per mixture.
constexpr int kDatasetIndexVersion = 1;

std::string SerializeDatasetIndex(const DatasetIndex &index);
DatasetIndex ParseDatasetIndex(const std::string &text, const std::string &what);
void WriteDatasetIndex(const std::string &path, const DatasetIndex &index);
DatasetIndex ReadDatasetIndex(const std::string &path);

/// Loads the clean utterance and noise of `spec` and mixes them.
Waveform MakeMixture(const MixSpec &spec, const Waveform &clean, const Waveform &noise);

std::string FormatSnr(double snr_db);

}  // namespace emgse

#endif  // EMGSE_DATA_DATASET_INDEX_H_

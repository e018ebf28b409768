// data/dataset-index.cc

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

#include "data/dataset-index.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "base/emgse-common.h"
#include "base/rng.h"
#include "data/mixing.h"
#include "io/binary-io.h"

namespace emgse {

using nlohmann::json;

namespace {
}

std::vector<NoiseEntry> ScanNoiseBank(const std::string &dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw InvalidParameter("noise bank " + dir + " is not a directory");
  std::vector<NoiseEntry> bank;
  for (const auto &e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".wav")
      bank.push_back({e.path().stem().string(),
                      fs::absolute(e.path()).lexically_normal().string()});
  std::sort(bank.begin(), bank.end(),
            [](const NoiseEntry &a, const NoiseEntry &b) { return a.id < b.id; });
  return bank;
}

std::vector<const MixSpec *> DatasetIndex::Mixtures(Split s) const {
  std::vector<const MixSpec *> out;
  for (const MixSpec &m : mixtures)
    if (m.split == s) out.push_back(&m);
  return out;
}

std::vector<std::string> DatasetIndex::Utterances(Split s) const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const MixSpec &m : mixtures)
    if (m.split == s && seen.insert(m.clean_id).second) out.push_back(m.clean_id);
  return out;
}

std::string FormatSnr(double snr_db) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << (snr_db < 0 ? "m" : "p") << std::abs(snr_db);
  return os.str() + "dB";
}

DatasetIndex BuildDataset(const std::vector<ManifestRow> &manifest,
                          const std::vector<NoiseEntry> &train_noises,
                          const std::vector<NoiseEntry> &test_noises,
                          const DatasetConfig &config, uint64_t seed) {
  std::set<std::string> train_ids, train_paths;
  for (const NoiseEntry &n : train_noises) {
    train_ids.insert(n.id);
    train_paths.insert(n.path);
  }
  for (const NoiseEntry &n : test_noises)
    if (train_ids.count(n.id) || train_paths.count(n.path))
      throw InvalidParameter("noise '" + n.id +
                             "' appears in both the training and the test bank");

  std::map<std::string, Split> split_of;
  for (const ManifestRow &row : manifest) {
    auto [it, inserted] = split_of.emplace(row.id, row.split);
    if (!inserted)
      throw InvalidParameter("utterance '" + row.id + "' is listed more than once");
  }

  DatasetIndex index;
  index.seed = seed;
  uint64_t mixture_ordinal = 0;
  auto add = [&](const ManifestRow &row, const NoiseEntry &noise, double snr) {
    MixSpec m;
    m.id = row.id + "__" + noise.id + "__" + FormatSnr(snr);
    m.split = row.split;
    m.clean_id = row.id;
    m.clean_audio = row.audio_path;
    m.emg_path = row.emg_path;
    m.noise_id = noise.id;
    m.noise_path = noise.path;
    m.snr_db = snr;
    m.seed = DeriveSeed(seed, 0x100000000ULL + mixture_ordinal++);
    index.mixtures.push_back(std::move(m));
  };

  for (size_t u = 0; u < manifest.size(); ++u) {
    const ManifestRow &row = manifest[u];
    if (row.split == Split::kTest) {
      if (test_noises.empty()) throw InvalidParameter("test noise bank is empty");
      for (const NoiseEntry &n : test_noises)
        for (double snr : config.test_snrs) add(row, n, snr);
      continue;
    }
    const size_t k = static_cast<size_t>(config.noises_per_utterance);
    if (k == 0 || k > train_noises.size())
      throw InvalidParameter("cannot draw " + std::to_string(k) + " noise types from a bank of " +
                             std::to_string(train_noises.size()));
    // Partial Fisher-Yates: k distinct noise types.
    Rng rng(DeriveSeed(seed, u));
    std::vector<size_t> order(train_noises.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (size_t i = 0; i < k; ++i) {
      size_t j = i + static_cast<size_t>(rng.Below(order.size() - i));
      std::swap(order[i], order[j]);
    }
    for (size_t i = 0; i < k; ++i)
      for (double snr : config.train_snrs) add(row, train_noises[order[i]], snr);
  }
  return index;
}

std::string SerializeDatasetIndex(const DatasetIndex &index) {
  std::map<std::string, std::map<std::string, int>> counts;
  for (Split s : {Split::kTrain, Split::kVal, Split::kTest}) {
    counts[SplitName(s)]["utterances"] = static_cast<int>(index.Utterances(s).size());
    counts[SplitName(s)]["mixtures"] = static_cast<int>(index.Mixtures(s).size());
  }
  json header = {{"format", "emgse-dataset-index"},
                 {"version", kDatasetIndexVersion},
                 {"seed", index.seed},
                 {"splits", counts}};
  std::string out = header.dump() + "\n";
  for (const MixSpec &m : index.mixtures) {
    json j = {{"id", m.id},
              {"split", SplitName(m.split)},
              {"clean_id", m.clean_id},
              {"clean_audio", m.clean_audio},
              {"emg", m.emg_path},
              {"noise_id", m.noise_id},
              {"noise_path", m.noise_path},
              {"snr_db", m.snr_db},
              {"seed", m.seed}};
    out += j.dump() + "\n";
  }
  return out;
}

DatasetIndex ParseDatasetIndex(const std::string &text, const std::string &what) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw FormatError(what + ": empty dataset index");
  DatasetIndex index;
  try {
    json header = json::parse(line);
    if (header.at("format") != "emgse-dataset-index")
      throw FormatError(what + ": not a dataset index");
    if (header.at("version").get<int>() != kDatasetIndexVersion)
      throw FormatError(what + ": unsupported dataset index version");
    index.seed = header.at("seed").get<uint64_t>();
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      json j = json::parse(line);
      MixSpec m;
      m.id = j.at("id");
      m.split = ParseSplit(j.at("split"));
      m.clean_id = j.at("clean_id");
      m.clean_audio = j.at("clean_audio");
      m.emg_path = j.at("emg");
      m.noise_id = j.at("noise_id");
      m.noise_path = j.at("noise_path");
      m.snr_db = j.at("snr_db");
      m.seed = j.at("seed");
      index.mixtures.push_back(std::move(m));
    }
  } catch (const json::exception &e) {
    throw FormatError(what + ": " + e.what());
  }
  return index;
}

void WriteDatasetIndex(const std::string &path, const DatasetIndex &index) {
  WriteFileText(path, SerializeDatasetIndex(index));
}

DatasetIndex ReadDatasetIndex(const std::string &path) {
  return ParseDatasetIndex(ReadFileText(path), path);
}

Waveform MakeMixture(const MixSpec &spec, const Waveform &clean, const Waveform &noise) {
  Rng rng(spec.seed);
  return MixAtSnr(clean, PrepareNoise(noise, clean.size(), &rng), spec.snr_db);
}

}  // namespace emgse

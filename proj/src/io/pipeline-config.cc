// io/pipeline-config.cc

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

#include "io/pipeline-config.h"

#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "base/emgse-common.h"
#include "io/binary-io.h"

namespace emgse {

namespace {

namespace pt = boost::property_tree;

std::string Trim(const std::string &s) {
  const size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t") - a + 1);
}

double ToDouble(const std::string &v) {
  size_t used = 0;
  const double d = std::stod(v, &used);
  if (used != v.size()) throw std::invalid_argument(v);
  return d;
}

long ToLong(const std::string &v) {
  size_t used = 0;
  const long n = std::stol(v, &used);
  if (used != v.size()) throw std::invalid_argument(v);
  return n;
}

template <typename T>
std::vector<T> ToList(const std::string &v, T (*parse)(const std::string &)) {
  std::vector<T> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(parse(item));
  }
  return out;
}

int ToInt(const std::string &v) {
  return static_cast<int>(ToLong(v));
}

using Setter = std::function<void(const std::string &)>;
using Table = std::map<std::string, std::map<std::string, Setter>>;

Setter Bind(double *f) {
  return [f](const std::string &v) { *f = ToDouble(v); };
}
Setter Bind(int *f) {
  return [f](const std::string &v) { *f = ToInt(v); };
}
Setter Bind(std::vector<int> *f) {
  return [f](const std::string &v) { *f = ToList<int>(v, ToInt); };
}
Setter Bind(std::vector<double> *f) {
  return [f](const std::string &v) { *f = ToList<double>(v, ToDouble); };
}
Setter Bind(Variant *f) {
  return [f](const std::string &v) { *f = ParseVariant(v); };
}
Setter Bind(ChannelSet *f) {
  return [f](const std::string &v) { *f = ParseChannelSet(v); };
}
Setter Bind(Precision *f) {
  return [f](const std::string &v) { *f = ParsePrecision(v); };
}

Table Setters(PipelineConfig *c) {
  Table t;
  auto &f = t["features"];
  f["window_sec"] = Bind(&c->features.window_sec);
  f["hop_sec"] = Bind(&c->features.hop_sec);
  f["fft_size"] = Bind(&c->features.fft_size);
  f["context_frames"] = Bind(&c->features.context_frames);
  f["emg_split_hz"] = Bind(&c->features.emg_split_hz);
  f["emg_filter_order"] = Bind(&c->features.emg_filter_order);

  auto &y = t["synth"];
  y["speakers"] = Bind(&c->synth.num_speakers);
  y["utterances_per_speaker"] = Bind(&c->synth.utterances_per_speaker);
  y["min_duration_sec"] = Bind(&c->synth.min_duration_sec);
  y["max_duration_sec"] = Bind(&c->synth.max_duration_sec);
  y["split_train"] = Bind(&c->synth.split_train);
  y["split_val"] = Bind(&c->synth.split_val);
  y["split_test"] = Bind(&c->synth.split_test);
  y["emg_channels"] = Bind(&c->synth.emg_channels);
  y["cheek_channels"] = Bind(&c->synth.cheek_channels);
  y["train_noises"] = Bind(&c->synth.num_train_noises);
  y["noise_duration_sec"] = Bind(&c->synth.noise_duration_sec);

  auto &m = t["import"];
  m["raw_channels"] = Bind(&c->import.raw_channels);
  m["cheek_channels"] = Bind(&c->import.cheek_channels);
  m["exclude_channels"] = Bind(&c->import.exclude_channels);
  m["expected_channels"] = Bind(&c->import.expected_channels);
  m["emg_rate_hz"] = Bind(&c->import.emg_rate_hz);
  m["split_train"] = Bind(&c->import.split_train);
  m["split_val"] = Bind(&c->import.split_val);
  m["split_test"] = Bind(&c->import.split_test);

  auto &d = t["dataset"];
  d["train_snrs"] = Bind(&c->dataset.train_snrs);
  d["test_snrs"] = Bind(&c->dataset.test_snrs);
  d["noises_per_utterance"] = Bind(&c->dataset.noises_per_utterance);

  auto &r = t["train"];
  r["variant"] = Bind(&c->variant);
  r["channels"] = Bind(&c->channels);
  r["learning_rate"] = Bind(&c->train.adam.learning_rate);
  r["beta1"] = Bind(&c->train.adam.beta1);
  r["beta2"] = Bind(&c->train.adam.beta2);
  r["epsilon"] = Bind(&c->train.adam.epsilon);
  r["clip_norm"] = Bind(&c->train.adam.clip_norm);
  r["patience"] = Bind(&c->train.patience);
  r["max_epochs"] = Bind(&c->train.max_epochs);
  r["dropout"] = Bind(&c->train.dropout);
  r["precision"] = Bind(&c->train.precision);
  r["items_per_epoch"] = Bind(&c->train.items_per_epoch);
  r["val_items"] = Bind(&c->val_items);
  return t;
}

}  // namespace

PipelineConfig ParsePipelineConfig(const std::string &text, const std::string &what) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error &e) {
    throw FormatError(what + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  PipelineConfig config;
  const Table setters = Setters(&config);
  for (const auto &[section, body] : tree) {
    auto sec = setters.find(section);
    if (sec == setters.end()) {
      if (body.empty()) throw FormatError(what + ": key '" + section + "' outside of a section");
      throw FormatError(what + ": unknown section [" + section + "]");
    }
    for (const auto &[key, value] : body) {
      auto it = sec->second.find(key);
      if (it == sec->second.end())
        throw FormatError(what + ": unknown key '" + key + "' in [" + section + "]");
      const std::string v = Trim(value.data());
      try {
        it->second(v);
      } catch (const std::invalid_argument &) {
        throw FormatError(what + ": bad value '" + v + "' for " + section + "." + key);
      } catch (const std::out_of_range &) {
        throw FormatError(what + ": value '" + v + "' out of range for " + section + "." + key);
      }
    }
  }
  config.train.Validate();
  if (config.dataset.train_snrs.empty() || config.dataset.test_snrs.empty())
    throw FormatError(what + ": SNR lists must not be empty");
  if (config.val_items < 0) throw FormatError(what + ": val_items must be >= 0");
  return config;
}

PipelineConfig LoadPipelineConfig(const std::string &path) {
  return ParsePipelineConfig(ReadFileText(path), path);
}

}  // namespace emgse

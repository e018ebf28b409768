// model/checkpoint.cc

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

#include "model/checkpoint.h"

#include <json.hpp>

#include "io/binary-io.h"

namespace emgse {

using nlohmann::json;

namespace {

const char kMagic[6] = {'E', 'M', 'G', 'S', 'E', '\0'};

json ConfigJson(const Checkpoint &c) {
  const NetConfig &n = c.net;
  const FeatureConfig &f = c.features;
  return {
      {"variant", VariantName(n.variant)},
      {"channels", ChannelSetName(c.channels)},
      {"net",
       {{"emg_dim", n.emg_dim},
        {"audio_dim", n.audio_dim},
        {"encoder_hidden", n.encoder_hidden},
        {"encoder_out", n.encoder_out},
        {"fusion_dim", n.fusion_dim},
        {"lstm_hidden", n.lstm_hidden},
        {"lstm_layers", n.lstm_layers},
        {"out_dim", n.out_dim},
        {"dropout", n.dropout}}},
      {"features",
       {{"window_sec", f.window_sec},
        {"hop_sec", f.hop_sec},
        {"audio_rate_hz", f.audio_rate_hz},
        {"fft_size", f.fft_size},
        {"emg_rate_hz", f.emg_rate_hz},
        {"emg_filter_order", f.emg_filter_order},
        {"emg_split_hz", f.emg_split_hz},
        {"context_frames", f.context_frames}}},
      {"training",
       {{"seed", c.meta.seed},
        {"epochs_run", c.meta.epochs_run},
        {"best_epoch", c.meta.best_epoch},
        {"best_val_loss", c.meta.best_val_loss},
        {"precision", c.meta.precision},
        {"train_loss", c.meta.train_loss},
        {"val_loss", c.meta.val_loss}}},
  };
}

void WriteBlock(ByteWriter *w, const std::string &name, const Eigen::MatrixXd &m) {
  w->U32(static_cast<uint32_t>(name.size()));
  w->Str(name);
  w->U32(static_cast<uint32_t>(m.rows()));
  w->U32(static_cast<uint32_t>(m.cols()));
  for (Eigen::Index k = 0; k < m.size(); ++k) w->F64(m(k));
}

}  // namespace

std::vector<uint8_t> EncodeCheckpoint(const Checkpoint &c) {
  const ParamSet<double> layout = MakeParams<double>(c.net);
  if (!layout.SameLayout(c.params))
    throw ShapeMismatch("checkpoint parameters do not match the network config");
  const bool emg = c.net.variant == Variant::kEmgse;
  if (c.audio_norm.Dim() != c.net.audio_dim || (emg && c.emg_norm.Dim() != c.net.emg_dim))
    throw ShapeMismatch("checkpoint normalizers do not match the network config");

  ByteWriter w;
  w.Bytes(kMagic, sizeof(kMagic));
  w.U32(kCheckpointVersion);
  const std::string config = ConfigJson(c).dump();
  w.U64(config.size());
  w.Str(config);
  w.U32(static_cast<uint32_t>(c.params.size() + (emg ? 4 : 2)));
  for (size_t i = 0; i < c.params.size(); ++i)
    WriteBlock(&w, "param." + c.params.Name(i), c.params.At(i));
  WriteBlock(&w, "norm.audio.min", c.audio_norm.min);
  WriteBlock(&w, "norm.audio.max", c.audio_norm.max);
  if (emg) {
    WriteBlock(&w, "norm.emg.min", c.emg_norm.min);
    WriteBlock(&w, "norm.emg.max", c.emg_norm.max);
  }
  return w.bytes();
}

Checkpoint DecodeCheckpoint(const std::vector<uint8_t> &bytes, const std::string &what) {
  ByteReader r(bytes, what);
  if (r.Str(sizeof(kMagic)) != std::string(kMagic, sizeof(kMagic)))
    throw FormatError(what + ": not an EMGSE checkpoint");
  const uint32_t version = r.U32();
  if (version != kCheckpointVersion)
    throw FormatError(what + ": unsupported checkpoint version " + std::to_string(version));
  const uint64_t config_len = r.U64();
  r.Need(config_len);
  Checkpoint c;
  try {
    const json j = json::parse(r.Str(config_len));
    c.net.variant = ParseVariant(j.at("variant").get<std::string>());
    c.channels = ParseChannelSet(j.at("channels").get<std::string>());
    const json &n = j.at("net");
    c.net.emg_dim = n.at("emg_dim");
    c.net.audio_dim = n.at("audio_dim");
    c.net.encoder_hidden = n.at("encoder_hidden");
    c.net.encoder_out = n.at("encoder_out");
    c.net.fusion_dim = n.at("fusion_dim");
    c.net.lstm_hidden = n.at("lstm_hidden");
    c.net.lstm_layers = n.at("lstm_layers");
    c.net.out_dim = n.at("out_dim");
    c.net.dropout = n.at("dropout");
    const json &f = j.at("features");
    c.features.window_sec = f.at("window_sec");
    c.features.hop_sec = f.at("hop_sec");
    c.features.audio_rate_hz = f.at("audio_rate_hz");
    c.features.fft_size = f.at("fft_size");
    c.features.emg_rate_hz = f.at("emg_rate_hz");
    c.features.emg_filter_order = f.at("emg_filter_order");
    c.features.emg_split_hz = f.at("emg_split_hz");
    c.features.context_frames = f.at("context_frames");
    const json &t = j.at("training");
    c.meta.seed = t.at("seed");
    c.meta.epochs_run = t.at("epochs_run");
    c.meta.best_epoch = t.at("best_epoch");
    c.meta.best_val_loss = t.at("best_val_loss");
    c.meta.precision = t.at("precision");
    c.meta.train_loss = t.at("train_loss").get<std::vector<double>>();
    c.meta.val_loss = t.at("val_loss").get<std::vector<double>>();
  } catch (const json::exception &e) {
    throw FormatError(what + ": bad config blob: " + e.what());
  } catch (const InvalidParameter &e) {
    throw FormatError(what + ": bad config blob: " + e.what());
  }

  c.params = MakeParams<double>(c.net);
  const bool emg = c.net.variant == Variant::kEmgse;
  std::vector<std::pair<std::string, Eigen::MatrixXd *>> expected;
  for (size_t i = 0; i < c.params.size(); ++i)
    expected.emplace_back("param." + c.params.Name(i), &c.params.At(i));
  c.audio_norm.min.resize(c.net.audio_dim);
  c.audio_norm.max.resize(c.net.audio_dim);
  Eigen::MatrixXd amin(c.net.audio_dim, 1), amax(c.net.audio_dim, 1), emin, emax;
  expected.emplace_back("norm.audio.min", &amin);
  expected.emplace_back("norm.audio.max", &amax);
  if (emg) {
    emin.resize(c.net.emg_dim, 1);
    emax.resize(c.net.emg_dim, 1);
    expected.emplace_back("norm.emg.min", &emin);
    expected.emplace_back("norm.emg.max", &emax);
  }
  const uint32_t blocks = r.U32();
  if (blocks != expected.size())
    throw FormatError(what + ": expected " + std::to_string(expected.size()) + " blocks, found " +
                      std::to_string(blocks));
  for (auto &[name, target] : expected) {
    const std::string got = r.Str(r.U32());
    if (got != name) throw FormatError(what + ": expected block '" + name + "', found '" + got + "'");
    const uint32_t rows = r.U32(), cols = r.U32();
    if (rows != target->rows() || cols != target->cols())
      throw FormatError(what + ": block '" + name + "' has shape " + std::to_string(rows) + "x" +
                        std::to_string(cols) + ", expected " + std::to_string(target->rows()) +
                        "x" + std::to_string(target->cols()));
    r.Need(static_cast<size_t>(rows) * cols * 8);
    for (Eigen::Index k = 0; k < target->size(); ++k) (*target)(k) = r.F64();
  }
  if (r.Remaining() != 0) throw FormatError(what + ": trailing bytes after the last block");
  c.audio_norm.min = amin.col(0);
  c.audio_norm.max = amax.col(0);
  if (emg) {
    c.emg_norm.min = emin.col(0);
    c.emg_norm.max = emax.col(0);
  }
  return c;
}

void SaveCheckpoint(const std::string &path, const Checkpoint &ckpt) {
  WriteFileBytes(path, EncodeCheckpoint(ckpt));
}

Checkpoint LoadCheckpoint(const std::string &path) {
  return DecodeCheckpoint(ReadFileBytes(path), path);
}

}  // namespace emgse

// model/checkpoint.h

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

#ifndef EMGSE_MODEL_CHECKPOINT_H_
#define EMGSE_MODEL_CHECKPOINT_H_

#include <string>
#include <vector>

#include "feat/emg-features.h"
#include "feat/feature-config.h"
#include "feat/normalizer.h"
#include "model/network.h"
#include "model/param-set.h"

namespace emgse {

struct TrainingMeta {
  uint64_t seed = 0;
  int epochs_run = 0;
  int best_epoch = 0;
  double best_val_loss = 0.0;
  std::string precision = "f32";
  std::vector<double> train_loss;  // per epoch, train mode
  std::vector<double> val_loss;    // per epoch
};

/// Everything needed to run a trained model: architecture, front-end
/// configuration, normalizers and parameters.
struct Checkpoint {
  NetConfig net;
  FeatureConfig features;
  ChannelSet channels = ChannelSet::kFull;
  Normalizer audio_norm;
  Normalizer emg_norm;  // empty for SE(A)
  ParamSet<double> params;
  TrainingMeta meta;
};

// Binary container:
//
//   "EMGSE\0"  u32 version (1)
//   u64 length + UTF-8 JSON config (architecture, features, channel set,
//   training metadata), keys sorted
//   u32 block count, then per block:
//     u32 name length + name, u32 rows, u32 cols, rows x cols f64 column-major
//
// Blocks are "param.<name>" in parameter order, then "norm.audio.min",
// "norm.audio.max" and (EMGSE) "norm.emg.min", "norm.emg.max".  Loading
// rebuilds the parameter layout from the config and rejects any block that
// is missing, extra or of the wrong shape.
constexpr uint32_t kCheckpointVersion = 1;

std::vector<uint8_t> EncodeCheckpoint(const Checkpoint &ckpt);
Checkpoint DecodeCheckpoint(const std::vector<uint8_t> &bytes,
                            const std::string &what = "checkpoint");
void SaveCheckpoint(const std::string &path, const Checkpoint &ckpt);
Checkpoint LoadCheckpoint(const std::string &path);

}  // namespace emgse

#endif  // EMGSE_MODEL_CHECKPOINT_H_

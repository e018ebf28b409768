// io/pipeline-config.h

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

#ifndef EMGSE_IO_PIPELINE_CONFIG_H_
#define EMGSE_IO_PIPELINE_CONFIG_H_

#include <string>
#include <vector>

#include "data/dataset-index.h"
#include "data/synth-corpus.h"
#include "feat/feature-config.h"
#include "model/trainer.h"

namespace emgse {

/// Layout of the raw corpus read by the importer.
struct ImportConfig {
  int raw_channels = 40;
  // Raw channels [0, cheek_channels) are the cheek array, the rest chin.
  int cheek_channels = 32;
  std::vector<int> exclude_channels = {7, 15, 23, 31, 39};
  int expected_channels = 35;
  int emg_rate_hz = 2048;
  // Per speaker, in sorted utterance order.
  int split_train = 280;
  int split_val = 20;
  int split_test = 40;
};

/// Every tunable of the pipeline.  Read from an INI-style file:
///
///   [features]  window_sec hop_sec fft_size context_frames emg_split_hz
///               emg_filter_order
///   [synth]     speakers utterances_per_speaker min_duration_sec
///               max_duration_sec split_train split_val split_test
///               emg_channels cheek_channels train_noises noise_duration_sec
///   [import]    raw_channels cheek_channels exclude_channels
///               expected_channels emg_rate_hz split_train split_val
///               split_test
///   [dataset]   train_snrs test_snrs noises_per_utterance
///   [train]     variant channels learning_rate beta1 beta2 epsilon
///               clip_norm patience max_epochs dropout precision
///               items_per_epoch val_items
///
/// Lists are comma separated.  Unknown sections or keys are errors.
struct PipelineConfig {
  FeatureConfig features;
  SynthConfig synth;
  ImportConfig import;
  DatasetConfig dataset;
  TrainConfig train;
  Variant variant = Variant::kEmgse;
  ChannelSet channels = ChannelSet::kFull;
  // Validation mixtures scored per epoch (a fixed seeded subset); 0 = all.
  int val_items = 0;
};

PipelineConfig ParsePipelineConfig(const std::string &text, const std::string &what);
PipelineConfig LoadPipelineConfig(const std::string &path);

}  // namespace emgse

#endif  // EMGSE_IO_PIPELINE_CONFIG_H_

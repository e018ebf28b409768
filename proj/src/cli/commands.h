// cli/commands.h

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

#ifndef EMGSE_CLI_COMMANDS_H_
#define EMGSE_CLI_COMMANDS_H_

#include <optional>
#include <string>
#include <vector>

#include "data/dataset-index.h"
#include "data/mixture-features.h"
#include "io/manifest.h"
#include "io/pipeline-config.h"
#include "metrics/evaluate.h"
#include "model/checkpoint.h"
#include "model/inference.h"
#include "model/trainer.h"

namespace emgse {

// One function per CLI subcommand.  Each writes its artifacts under out_dir
// and returns what it wrote.  Outputs depend only on the config, the seed and
// the inputs, never on jobs.

struct CommandContext {
  PipelineConfig config;
  uint64_t seed = 0;
  std::string out_dir;
  int jobs = 1;
};

// File names under out_dir.
inline constexpr const char *kManifestFile = "manifest.tsv";
inline constexpr const char *kDatasetFile = "dataset.jsonl";
inline constexpr const char *kNormalizerFile = "normalizers.json";
inline constexpr const char *kCheckpointFile = "model.ckpt";
inline constexpr const char *kTrainLogFile = "train-log.tsv";
inline constexpr const char *kReportJsonlFile = "report.jsonl";
inline constexpr const char *kReportTableFile = "report.txt";

std::vector<ManifestRow> RunSynth(const CommandContext &ctx);

std::vector<ManifestRow> RunImport(const CommandContext &ctx, const std::string &src_dir);

/// Noise banks default to <corpus>/noise/train and <corpus>/noise/test.
DatasetIndex RunBuildDataset(const CommandContext &ctx, const std::string &corpus_dir,
                             const std::string &train_noise_dir = "",
                             const std::string &test_noise_dir = "");

/// Fits on the training mixtures of the index.
NormalizerSet RunFitNorm(const CommandContext &ctx, const std::string &dataset_path);

/// Validation mixtures scored each epoch: all of them, or a seeded subset of
/// val_items kept in index order.
std::vector<const MixSpec *> ValidationSubset(const DatasetIndex &index, int val_items,
                                              uint64_t seed);

/// Trains config.variant on config.channels.  Normalizers are fitted on the
/// training mixtures unless given.  Does not touch the file system beyond
/// reading the corpus.
Checkpoint TrainModel(const PipelineConfig &config, const DatasetIndex &index,
                      const NormalizerSet *norms, uint64_t seed, int jobs,
                      const EpochCallback &on_epoch = {});

/// TrainModel plus <out>/model.ckpt and <out>/train-log.tsv.
Checkpoint RunTrain(const CommandContext &ctx, const std::string &dataset_path,
                    const std::string &norm_path = "");

/// Writes <out>/<stem of noisy>.wav and returns its path.
std::string RunEnhance(const CommandContext &ctx, const std::string &checkpoint_path,
                       const std::string &noisy_path, const std::string &emg_path = "");

struct NamedCheckpoint {
  std::string name;  // empty: "<variant>" or "<variant>_cheek"
  std::string path;
};

/// Scores Noisy plus every checkpoint on the test mixtures (optionally only
/// at the given SNRs).  Writes report.jsonl, report.txt and, when
/// save_enhanced is set, enhanced/<system>/<mixture>.wav.
EvalReport RunEvaluate(const CommandContext &ctx, const std::string &dataset_path,
                       const std::vector<NamedCheckpoint> &checkpoints,
                       const std::vector<double> &snrs = {}, bool save_enhanced = false);

/// Writes <out>/<mixture>.<matrix>.txt for the six latent matrices.
LatentExport RunExportLatents(const CommandContext &ctx, const std::string &checkpoint_path,
                              const std::string &dataset_path, const std::string &mixture_id);

/// Container and file format versions, one "name version" line each.
std::string FormatVersions();

}  // namespace emgse

#endif  // EMGSE_CLI_COMMANDS_H_

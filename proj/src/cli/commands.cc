// cli/commands.cc

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

#include "cli/commands.h"

#include <algorithm>
#include <filesystem>
#include <numeric>

#include <fmt/format.h>

#include "base/emgse-common.h"
#include "base/logging.h"
#include "base/rng.h"
#include "data/synth-corpus.h"
#include "io/binary-io.h"
#include "io/corpus-import.h"
#include "io/emg-container.h"
#include "io/feature-file.h"
#include "io/wav-io.h"
#include "model/inference.h"

namespace emgse {

namespace fs = std::filesystem;

namespace {

// Stream indices for DeriveSeed(master, .) in training.
constexpr uint64_t kInitStream = 1;
constexpr uint64_t kTrainStream = 2;
constexpr uint64_t kValSubsetStream = 3;

std::string OutPath(const CommandContext &ctx, const std::string &name) {
  if (ctx.out_dir.empty()) throw InvalidParameter("an output directory is required");
  fs::create_directories(ctx.out_dir);
  return (fs::path(ctx.out_dir) / name).string();
}

std::string DefaultSystemName(const Checkpoint &ck) {
  std::string name = VariantName(ck.net.variant);
  if (ck.net.variant == Variant::kEmgse && ck.channels == ChannelSet::kCheek) name += "_cheek";
  return name;
}

const MixSpec &FindMixture(const DatasetIndex &index, const std::string &id) {
  for (const MixSpec &m : index.mixtures)
    if (m.id == id) return m;
  throw InvalidParameter("mixture not in dataset index: " + id);
}

}  // namespace

std::vector<ManifestRow> RunSynth(const CommandContext &ctx) {
  OutPath(ctx, "");
  std::vector<ManifestRow> rows = SynthCorpus(ctx.config.synth, ctx.seed, ctx.out_dir, ctx.jobs);
  Log().info("synth: {} utterances written to {}", rows.size(), ctx.out_dir);
  return rows;
}

std::vector<ManifestRow> RunImport(const CommandContext &ctx, const std::string &src_dir) {
  OutPath(ctx, "");
  return ImportCorpus(src_dir, ctx.out_dir, ctx.config.import);
}

DatasetIndex RunBuildDataset(const CommandContext &ctx, const std::string &corpus_dir,
                             const std::string &train_noise_dir,
                             const std::string &test_noise_dir) {
  const fs::path corpus(corpus_dir);
  const std::string tr =
      train_noise_dir.empty() ? (corpus / "noise" / "train").string() : train_noise_dir;
  const std::string te =
      test_noise_dir.empty() ? (corpus / "noise" / "test").string() : test_noise_dir;
  DatasetIndex index =
      BuildDataset(ReadManifest((corpus / kManifestFile).string()), ScanNoiseBank(tr),
                   ScanNoiseBank(te), ctx.config.dataset, ctx.seed);
  WriteDatasetIndex(OutPath(ctx, kDatasetFile), index);
  Log().info("build-dataset: {} train, {} val, {} test mixtures",
             index.Mixtures(Split::kTrain).size(), index.Mixtures(Split::kVal).size(),
             index.Mixtures(Split::kTest).size());
  return index;
}

NormalizerSet RunFitNorm(const CommandContext &ctx, const std::string &dataset_path) {
  DatasetIndex index = ReadDatasetIndex(dataset_path);
  auto train = index.Mixtures(Split::kTrain);
  MixtureFeaturizer featurizer(ctx.config.features, ChannelSet::kFull, true);
  featurizer.Load(train, ctx.jobs);
  NormalizerSet norms = featurizer.Fit(train, ctx.jobs);
  WriteFileText(OutPath(ctx, kNormalizerFile), SerializeNormalizerSet(norms));
  return norms;
}

std::vector<const MixSpec *> ValidationSubset(const DatasetIndex &index, int val_items,
                                              uint64_t seed) {
  std::vector<const MixSpec *> val = index.Mixtures(Split::kVal);
  if (val_items <= 0 || static_cast<size_t>(val_items) >= val.size()) return val;
  std::vector<size_t> order(val.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(DeriveSeed(seed, kValSubsetStream));
  rng.Shuffle(&order);
  order.resize(val_items);
  std::sort(order.begin(), order.end());
  std::vector<const MixSpec *> out;
  for (size_t i : order) out.push_back(val[i]);
  return out;
}

Checkpoint TrainModel(const PipelineConfig &config, const DatasetIndex &index,
                      const NormalizerSet *norms, uint64_t seed, int jobs,
                      const EpochCallback &on_epoch) {
  const bool use_emg = config.variant == Variant::kEmgse;
  auto train = index.Mixtures(Split::kTrain);
  auto val = ValidationSubset(index, config.val_items, seed);
  if (train.empty() || val.empty())
    throw InvalidParameter("training needs nonempty train and validation splits");

  MixtureFeaturizer featurizer(config.features, config.channels, use_emg);
  std::vector<const MixSpec *> all = train;
  all.insert(all.end(), val.begin(), val.end());
  featurizer.Load(all, jobs);
  const NormalizerSet fitted = norms ? *norms : featurizer.Fit(train, jobs);

  NetConfig net;
  net.variant = config.variant;
  net.audio_dim = config.features.NumBins();
  net.out_dim = config.features.NumBins();
  net.dropout = config.train.dropout;
  if (use_emg) {
    const int channels =
        static_cast<int>(SelectChannels(featurizer.Emg(*train.front()), config.channels).size());
    net.emg_dim = EmgFeatureDim(channels, config.features);
  }
  ParamSet<double> init = MakeParams<double>(net);
  InitParams(&init, DeriveSeed(seed, kInitStream));

  TrainConfig tc = config.train;
  tc.seed = DeriveSeed(seed, kTrainStream);
  ExampleSource train_src{train.size(),
                          [&](size_t i) { return featurizer.Make(*train[i], fitted); }};
  ExampleSource val_src{val.size(), [&](size_t i) { return featurizer.Make(*val[i], fitted); }};
  Log().info("train: {} on {} channels, {} train / {} val mixtures, {} parameters",
             VariantName(net.variant), ChannelSetName(config.channels), train.size(), val.size(),
             init.NumScalars());
  TrainResult result = TrainNetwork(net, tc, init, train_src, val_src, jobs, on_epoch);

  Checkpoint ck;
  ck.net = net;
  ck.features = config.features;
  ck.channels = config.channels;
  ck.audio_norm = fitted.audio;
  if (use_emg) ck.emg_norm = fitted.Emg(config.channels);
  ck.params = std::move(result.best_params);
  ck.meta.seed = seed;
  ck.meta.epochs_run = result.epochs_run;
  ck.meta.best_epoch = result.best_epoch;
  ck.meta.best_val_loss = result.best_val_loss;
  ck.meta.precision = PrecisionName(tc.precision);
  ck.meta.train_loss = result.train_loss;
  ck.meta.val_loss = result.val_loss;
  return ck;
}

Checkpoint RunTrain(const CommandContext &ctx, const std::string &dataset_path,
                    const std::string &norm_path) {
  DatasetIndex index = ReadDatasetIndex(dataset_path);
  std::optional<NormalizerSet> norms;
  if (!norm_path.empty()) norms = ParseNormalizerSet(ReadFileText(norm_path), norm_path);
  const std::string ckpt_path = OutPath(ctx, kCheckpointFile);
  Checkpoint ck = TrainModel(ctx.config, index, norms ? &*norms : nullptr, ctx.seed, ctx.jobs,
                             [](int epoch, double tr, double va) {
                               Log().info("epoch {:4d}  train {:.6f}  val {:.6f}", epoch, tr, va);
                             });
  SaveCheckpoint(ckpt_path, ck);
  std::string log = "epoch\ttrain_loss\tval_loss\n";
  for (size_t e = 0; e < ck.meta.train_loss.size(); ++e)
    log += fmt::format("{}\t{:.9g}\t{:.9g}\n", e + 1, ck.meta.train_loss[e], ck.meta.val_loss[e]);
  log += fmt::format("# best_epoch {} best_val_loss {:.9g}\n", ck.meta.best_epoch,
                     ck.meta.best_val_loss);
  WriteFileText(OutPath(ctx, kTrainLogFile), log);
  Log().info("train: best epoch {} of {}, checkpoint {}", ck.meta.best_epoch, ck.meta.epochs_run,
             ckpt_path);
  return ck;
}

std::string RunEnhance(const CommandContext &ctx, const std::string &checkpoint_path,
                       const std::string &noisy_path, const std::string &emg_path) {
  Checkpoint ck = LoadCheckpoint(checkpoint_path);
  if (ck.net.variant == Variant::kEmgse && emg_path.empty())
    throw MissingModality("checkpoint " + checkpoint_path + " is an EMGSE model; pass --emg");
  Waveform noisy = WavRead(noisy_path);
  std::optional<EmgRecording> emg;
  if (!emg_path.empty()) emg = EmgRead(emg_path);
  Waveform out = Enhance(ck, noisy, emg ? &*emg : nullptr);
  const std::string path = OutPath(ctx, fs::path(noisy_path).stem().string() + ".wav");
  WavWrite(path, out);
  return path;
}

EvalReport RunEvaluate(const CommandContext &ctx, const std::string &dataset_path,
                       const std::vector<NamedCheckpoint> &checkpoints,
                       const std::vector<double> &snrs, bool save_enhanced) {
  DatasetIndex index = ReadDatasetIndex(dataset_path);
  std::vector<const MixSpec *> test;
  for (const MixSpec *m : index.Mixtures(Split::kTest))
    if (snrs.empty() || std::find(snrs.begin(), snrs.end(), m->snr_db) != snrs.end())
      test.push_back(m);
  if (test.empty()) throw InvalidParameter("no test mixtures to evaluate");

  std::vector<Checkpoint> loaded;
  loaded.reserve(checkpoints.size());
  for (const NamedCheckpoint &c : checkpoints) loaded.push_back(LoadCheckpoint(c.path));
  std::vector<EvalSystem> systems = {{"Noisy", nullptr}};
  for (size_t i = 0; i < loaded.size(); ++i) {
    std::string name =
        checkpoints[i].name.empty() ? DefaultSystemName(loaded[i]) : checkpoints[i].name;
    for (const EvalSystem &s : systems)
      if (s.name == name) throw InvalidParameter("duplicate system name " + name);
    systems.push_back({name, &loaded[i]});
  }

  bool need_emg = false;
  for (const Checkpoint &c : loaded) need_emg |= c.net.variant == Variant::kEmgse;
  MixtureFeaturizer featurizer(ctx.config.features, ChannelSet::kFull, need_emg);
  featurizer.Load(test, ctx.jobs);
  const std::string enhanced_dir = save_enhanced ? OutPath(ctx, "enhanced") : "";
  EvalReport report = Evaluate(systems, test, featurizer, ctx.jobs, enhanced_dir);
  WriteFileText(OutPath(ctx, kReportJsonlFile), ReportJsonl(report));
  WriteFileText(OutPath(ctx, kReportTableFile), ReportTable(report));
  return report;
}

LatentExport RunExportLatents(const CommandContext &ctx, const std::string &checkpoint_path,
                              const std::string &dataset_path, const std::string &mixture_id) {
  Checkpoint ck = LoadCheckpoint(checkpoint_path);
  DatasetIndex index = ReadDatasetIndex(dataset_path);
  const MixSpec &spec = FindMixture(index, mixture_id);
  MixtureFeaturizer featurizer(ctx.config.features, ChannelSet::kFull, true);
  featurizer.Load({&spec}, 1);
  LatentExport ex =
      ExportLatents(ck, featurizer.Clean(spec), featurizer.Noisy(spec), featurizer.Emg(spec));
  const std::pair<const char *, const Eigen::MatrixXd *> mats[] = {
      {"clean_only", &ex.clean_only},         {"noisy_only", &ex.noisy_only},
      {"noisy_plus_emg", &ex.noisy_plus_emg}, {"diff_noisy_clean", &ex.diff_noisy_clean},
      {"diff_emg_clean", &ex.diff_emg_clean}, {"diff_emg_noisy", &ex.diff_emg_noisy}};
  for (const auto &[name, m] : mats)
    WriteFeatureText(
        OutPath(ctx, mixture_id + "." + name + ".txt"), *m,
        fmt::format("{} {} frames x {} latent", mixture_id, name, m->rows(), m->cols()));
  return ex;
}

std::string FormatVersions() {
  return fmt::format(
      "wav {}\n"
      "emg-container {}\n"
      "dataset-index {}\n"
      "normalizers {}\n"
      "checkpoint {}\n",
      kWavFormatVersion, kEmgContainerVersion, kDatasetIndexVersion, kNormalizerSetVersion,
      kCheckpointVersion);
}

}  // namespace emgse

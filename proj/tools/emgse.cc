// tools/emgse.cc

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

// emgse: command-line front end for the EMG-guided speech enhancement
// pipeline.  Run "emgse <subcommand> --help" for the options of each step.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "base/emgse-common.h"
#include "base/logging.h"
#include "cli/commands.h"

namespace {

using namespace emgse;

struct Common {
  std::string config_path;
  uint64_t seed = 0;
  std::string out_dir;
  int jobs = 1;
};

void AddCommon(CLI::App *cmd, Common *c, bool out_required = true) {
  cmd->add_option("--config", c->config_path, "Pipeline configuration (INI)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", c->seed, "Master seed");
  auto *out = cmd->add_option("--out", c->out_dir, "Output directory");
  if (out_required) out->required();
  cmd->add_option("--jobs", c->jobs, "Worker threads (outputs do not depend on it)")
      ->check(CLI::PositiveNumber);
}

CommandContext MakeContext(const Common &c) {
  CommandContext ctx;
  if (!c.config_path.empty()) ctx.config = LoadPipelineConfig(c.config_path);
  ctx.seed = c.seed;
  ctx.out_dir = c.out_dir;
  ctx.jobs = c.jobs;
  return ctx;
}

NamedCheckpoint ParseNamedCheckpoint(const std::string &arg) {
  const size_t eq = arg.find('=');
  if (eq == std::string::npos) return {"", arg};
  return {arg.substr(0, eq), arg.substr(eq + 1)};
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"EMG-guided speech enhancement pipeline"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  bool show_version = false, verbose = false, quiet = false;
  app.add_flag("--version", show_version, "Print file format versions and exit");
  app.add_flag("-v,--verbose", verbose, "Debug logging");
  app.add_flag("-q,--quiet", quiet, "Only log warnings and errors");

  Common common;
  std::string src_dir, corpus_dir, train_noise, test_noise, dataset, norm, checkpoint, noisy, emg,
      mixture, variant, channels;
  std::vector<std::string> checkpoints;
  std::vector<double> snrs;
  bool save_enhanced = false;

  auto *synth = app.add_subcommand("synth", "Generate a synthetic audio+EMG corpus");
  AddCommon(synth, &common);

  auto *import = app.add_subcommand("import", "Import a raw audio+EMG corpus");
  AddCommon(import, &common);
  import->add_option("--src", src_dir, "Raw corpus root (<speaker>/<utt>.wav + .emg)")
      ->required()
      ->check(CLI::ExistingDirectory);

  auto *build = app.add_subcommand("build-dataset", "Mix clean utterances with noise");
  AddCommon(build, &common);
  build->add_option("--corpus", corpus_dir, "Corpus directory with manifest.tsv")
      ->required()
      ->check(CLI::ExistingDirectory);
  build->add_option("--train-noise", train_noise,
                    "Training noise bank (default <corpus>/noise/train)");
  build->add_option("--test-noise", test_noise, "Test noise bank (default <corpus>/noise/test)");

  auto *fit = app.add_subcommand("fit-norm", "Fit feature normalizers on the training split");
  AddCommon(fit, &common);
  fit->add_option("--dataset", dataset, "Dataset index")->required()->check(CLI::ExistingFile);

  auto *train = app.add_subcommand("train", "Train an enhancement model");
  AddCommon(train, &common);
  train->add_option("--dataset", dataset, "Dataset index")->required()->check(CLI::ExistingFile);
  train->add_option("--norm", norm, "Normalizers from fit-norm (default: fit here)")
      ->check(CLI::ExistingFile);
  train->add_option("--variant", variant, "EMGSE or SE_A (overrides the config)")
      ->check(CLI::IsMember({"EMGSE", "SE_A"}));
  train->add_option("--channels", channels, "EMG channel set (overrides the config)")
      ->check(CLI::IsMember({"full", "cheek"}));

  auto *enhance = app.add_subcommand("enhance", "Enhance one noisy recording");
  AddCommon(enhance, &common);
  enhance->add_option("--checkpoint", checkpoint, "Model checkpoint")
      ->required()
      ->check(CLI::ExistingFile);
  enhance->add_option("--noisy", noisy, "Noisy 16 kHz WAV")->required()->check(CLI::ExistingFile);
  enhance->add_option("--emg", emg, "EMG container (required for EMGSE models)")
      ->check(CLI::ExistingFile);

  auto *evaluate = app.add_subcommand("evaluate", "Score systems on the test split");
  AddCommon(evaluate, &common);
  evaluate->add_option("--dataset", dataset, "Dataset index")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--checkpoint", checkpoints, "[NAME=]PATH, repeatable");
  evaluate->add_option("--snr", snrs, "Only these test SNRs (dB), repeatable");
  evaluate->add_flag("--save-enhanced", save_enhanced, "Write enhanced/<system>/<mixture>.wav");

  auto *latents = app.add_subcommand("export-latents", "Dump fused latents of one mixture");
  AddCommon(latents, &common);
  latents->add_option("--checkpoint", checkpoint, "EMGSE checkpoint")
      ->required()
      ->check(CLI::ExistingFile);
  latents->add_option("--dataset", dataset, "Dataset index")->required()->check(CLI::ExistingFile);
  latents->add_option("--mixture", mixture, "Mixture id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  if (show_version) {
    std::cout << FormatVersions();
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 2;
  }
  if (verbose) SetLogLevel(spdlog::level::debug);
  if (quiet) SetLogLevel(spdlog::level::warn);

  try {
    CommandContext ctx = MakeContext(common);
    if (*synth) {
      RunSynth(ctx);
    } else if (*import) {
      RunImport(ctx, src_dir);
    } else if (*build) {
      RunBuildDataset(ctx, corpus_dir, train_noise, test_noise);
    } else if (*fit) {
      RunFitNorm(ctx, dataset);
    } else if (*train) {
      if (!variant.empty()) ctx.config.variant = ParseVariant(variant);
      if (!channels.empty()) ctx.config.channels = ParseChannelSet(channels);
      RunTrain(ctx, dataset, norm);
    } else if (*enhance) {
      std::cout << RunEnhance(ctx, checkpoint, noisy, emg) << "\n";
    } else if (*evaluate) {
      std::vector<NamedCheckpoint> named;
      for (const std::string &c : checkpoints) named.push_back(ParseNamedCheckpoint(c));
      EvalReport report = RunEvaluate(ctx, dataset, named, snrs, save_enhanced);
      std::cout << ReportTable(report);
    } else if (*latents) {
      RunExportLatents(ctx, checkpoint, dataset, mixture);
    }
  } catch (const MissingModality &e) {
    Log().error("missing modality: {}", e.what());
    return 1;
  } catch (const std::exception &e) {
    Log().error("{}", e.what());
    return 1;
  }
  return 0;
}

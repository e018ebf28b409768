// tests/acceptance.cc

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

// emgse-acceptance: end-to-end acceptance checks.  Prints one line per
// criterion, "criterion N: PASS|FAIL <summary>", and exits nonzero if any
// selected criterion fails.  Tolerances and budgets are fixed below.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "base/emgse-common.h"
#include "base/logging.h"
#include "base/rng.h"
#include "cli/commands.h"
#include "data/dataset-index.h"
#include "data/mixing.h"
#include "data/mixture-features.h"
#include "data/synth-corpus.h"
#include "dsp/signal-dsp.h"
#include "feat/emg-features.h"
#include "io/binary-io.h"
#include "metrics/evaluate.h"
#include "metrics/stoi.h"
#include "model/checkpoint.h"
#include "model/gradient-check.h"
#include "model/inference.h"
#include "model/trainer.h"

namespace emgse {
namespace {

namespace fs = std::filesystem;

// Criterion 1.
constexpr double kCutoffHz = 134.0;
constexpr double kCutoffDbTarget = -3.0;
constexpr double kCutoffDbTol = 0.5;
constexpr double kDcGainTol = 1e-9;
constexpr double kRoundTripTol = 1e-6;
constexpr int kRoundTripSignals = 20;
constexpr double kDspSeconds = 10.0;
// Criterion 2.
constexpr double kFeatureTol = 1e-12;
constexpr int kFeatureFrames = 100;
constexpr int kFullDim = 5425;
constexpr int kCheekDim = 4340;
constexpr double kFeatureSeconds = 10.0;
// Criterion 3.
constexpr double kGradientTol = 1e-4;
constexpr int kGradientFrames = 3;
constexpr double kGradientSeconds = 60.0;
// Criterion 4.
constexpr int kMixtures = 1000;
constexpr double kSnrTolDb = 1e-6;
constexpr double kMixingSeconds = 30.0;
// Criterion 5.
constexpr double kOverfitRatio = 0.1;
constexpr int kOverfitEpochs = 200;
constexpr double kOverfitSeconds = 600.0;
// Criterion 6, 7, 10.
constexpr double kLowSnrDb = -10.0;
constexpr int kLatentUtterances = 10;
constexpr double kMultimodalSeconds = 7200.0;
// Criterion 8.
constexpr double kSelfStoi = 0.999;
constexpr double kScaleTol = 1e-9;
constexpr double kStoiSeconds = 30.0;

double Now() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

int failures = 0;

void Report(int id, bool pass, const std::string &summary) {
  if (!pass) ++failures;
  std::printf("criterion %2d: %s  %s\n", id, pass ? "PASS" : "FAIL", summary.c_str());
  std::fflush(stdout);
}

// Runs `body` and reports it; exceptions count as failures.
void Criterion(int id, const std::function<std::pair<bool, std::string>()> &body) {
  const double t0 = Now();
  try {
    auto [pass, summary] = body();
    Report(id, pass, fmt::format("{} [{:.1f} s]", summary, Now() - t0));
  } catch (const std::exception &e) {
    Report(id, false, fmt::format("error: {} [{:.1f} s]", e.what(), Now() - t0));
  }
}

std::string Bool(bool b) {
  return b ? "yes" : "no";
}

// ---------------------------------------------------------------------------

std::pair<bool, std::string> DspSuite() {
  const double t0 = Now();
  const IirFilter lp = DesignButterworth(3, kCutoffHz, 2048.0, FilterKind::kLowpass);
  const IirFilter hp = DesignButterworth(3, kCutoffHz, 2048.0, FilterKind::kHighpass);
  const double lp_db = 20 * std::log10(std::abs(lp.Response(kCutoffHz)));
  const double hp_db = 20 * std::log10(std::abs(hp.Response(kCutoffHz)));
  const double lp_dc = std::abs(lp.Response(0.0)), hp_dc = std::abs(hp.Response(0.0));
  double sb = 0, sa = 0;
  for (double v : lp.b) sb += v;
  for (double v : lp.a) sa += v;
  const double lp_dc_coef = sb / sa;

  Rng rng(17);
  double worst = 0.0;
  for (int trial = 0; trial < kRoundTripSignals; ++trial) {
    Waveform x;
    const size_t n = 2048 + rng.Below(20000);
    for (size_t i = 0; i < n; ++i) x.samples.push_back(rng.Uniform(-1.0, 1.0));
    const Waveform y = Istft(Stft(x));
    if (y.size() != x.size()) throw ShapeMismatch("iSTFT changed the length");
    double err = 0, ref = 0;
    for (size_t i = 384; i + 384 < n; ++i) {
      err += (x.samples[i] - y.samples[i]) * (x.samples[i] - y.samples[i]);
      ref += x.samples[i] * x.samples[i];
    }
    worst = std::max(worst, std::sqrt(err / ref));
  }
  const double secs = Now() - t0;
  const bool pass = std::abs(lp_db - kCutoffDbTarget) <= kCutoffDbTol &&
                    std::abs(hp_db - kCutoffDbTarget) <= kCutoffDbTol &&
                    std::abs(lp_dc - 1.0) <= kDcGainTol &&
                    std::abs(lp_dc_coef - 1.0) <= kDcGainTol && hp_dc <= kDcGainTol &&
                    worst < kRoundTripTol && secs < kDspSeconds;
  return {pass,
          fmt::format("dsp: gain at {} Hz LP {:.4f} dB HP {:.4f} dB (|x+3| <= {}); DC LP {:.3e} "
                      "HP {:.3e} (tol {}); worst STFT round trip {:.2e} (< {})",
                      kCutoffHz, lp_db, hp_db, kCutoffDbTol, lp_dc - 1.0, hp_dc, kDcGainTol, worst,
                      kRoundTripTol)};
}

// ---------------------------------------------------------------------------

std::pair<bool, std::string> FeatureOracle() {
  const double t0 = Now();
  Rng rng(29);
  double worst_td = 0.0;
  for (int trial = 0; trial < kFeatureFrames; ++trial) {
    const int n = 66;
    std::vector<double> lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
      lo[i] = rng.Normal() + 0.2;
      hi[i] = rng.Normal();
    }
    // Brute force, one descriptor at a time.
    double mean = 0, pow_lo = 0, abs_hi = 0, pow_hi = 0, crossings = 0;
    for (int i = 0; i < n; ++i) {
      mean += lo[i] / n;
      pow_lo += lo[i] * lo[i] / n;
      abs_hi += std::fabs(hi[i]) / n;
      pow_hi += hi[i] * hi[i] / n;
      if (i > 0 && hi[i - 1] * hi[i] < 0) crossings += 1;
    }
    const double zcr = crossings / (n - 1);
    const TdFrame td = TdFeatures(lo, hi);
    for (double d : {td.low_mean - mean, td.low_power - pow_lo, td.high_abs_mean - abs_hi,
                     td.high_power - pow_hi, td.high_zcr - zcr})
      worst_td = std::max(worst_td, std::abs(d));
  }

  const int frames = kFeatureFrames, channels = 4, k = 15;
  Eigen::MatrixXd per_frame(frames, channels * 5);
  for (Eigen::Index i = 0; i < per_frame.size(); ++i) per_frame.data()[i] = rng.Normal();
  const FeatureMatrix stacked = StackContext(per_frame, k);
  double worst_ctx = stacked.Dim() == channels * 31 * 5 ? 0.0 : 1.0;
  for (int t = 0; t < frames && worst_ctx == 0.0; ++t)
    for (int c = 0; c < channels; ++c)
      for (int o = -k; o <= k; ++o)
        for (int f = 0; f < 5; ++f) {
          const int s = t + o;
          const double want = s >= 0 && s < frames ? per_frame(s, c * 5 + f) : 0.0;
          worst_ctx =
              std::max(worst_ctx, std::abs(stacked.data(t, c * 155 + (o + k) * 5 + f) - want));
        }

  // Full and cheek dimensions on a labeled 35-channel recording.
  Rng srng(3);
  SpeakerProfile spk = MakeSpeaker(&srng);
  SynthUtterance utt = SynthesizeUtterance(spk, 1.25, &srng);
  const int full = ExtractEmgFeatures(utt.emg, ChannelSet::kFull).Dim();
  const int cheek = ExtractEmgFeatures(utt.emg, ChannelSet::kCheek).Dim();
  const double secs = Now() - t0;
  const bool pass = worst_td <= kFeatureTol && worst_ctx <= kFeatureTol && full == kFullDim &&
                    cheek == kCheekDim && secs < kFeatureSeconds;
  return {pass, fmt::format("features: td max err {:.2e}, context max err {:.2e} (tol {}); "
                            "dims full {} cheek {} (want {} / {})",
                            worst_td, worst_ctx, kFeatureTol, full, cheek, kFullDim, kCheekDim)};
}

// ---------------------------------------------------------------------------

std::pair<bool, std::string> GradientSuite() {
  const double t0 = Now();
  double worst = 0.0;
  std::string worst_name;
  size_t checked = 0;
  for (Variant v : {Variant::kEmgse, Variant::kSeA}) {
    NetConfig c;
    c.variant = v;
    c.emg_dim = 8;
    c.audio_dim = 7;
    c.encoder_hidden = 6;
    c.encoder_out = 4;
    c.fusion_dim = 5;
    c.lstm_hidden = 3;
    c.lstm_layers = 2;
    c.out_dim = 6;
    for (const GradientCheckEntry &e :
         CheckGradients(c, kGradientFrames, 41 + (v == Variant::kSeA))) {
      checked += e.checked;
      if (e.max_rel_error >= worst) {
        worst = e.max_rel_error;
        worst_name = std::string(VariantName(v)) + ":" + e.name;
      }
    }
  }
  const double secs = Now() - t0;
  return {worst < kGradientTol && secs < kGradientSeconds,
          fmt::format("gradients: {} scalars, worst rel err {:.2e} at {} (< {})", checked, worst,
                      worst_name, kGradientTol)};
}

// ---------------------------------------------------------------------------

std::pair<bool, std::string> MixingAccuracy(const fs::path &work) {
  const double t0 = Now();
  Rng rng(5);
  double worst = 0.0;
  for (int trial = 0; trial < kMixtures; ++trial) {
    const size_t n = 1600 + rng.Below(16000);
    Waveform clean, noise;
    const double cg = rng.Uniform(0.01, 0.5), ng = rng.Uniform(0.01, 0.5);
    for (size_t i = 0; i < n; ++i) {
      clean.samples.push_back(cg * rng.Normal());
      noise.samples.push_back(ng * rng.Normal());
    }
    const double snr = rng.Uniform(-15.0, 15.0);
    const Waveform mix = MixAtSnr(clean, noise, snr);
    double ps = 0, pn = 0;
    for (size_t i = 0; i < n; ++i) {
      ps += clean.samples[i] * clean.samples[i];
      const double d = mix.samples[i] - clean.samples[i];
      pn += d * d;
    }
    worst = std::max(worst, std::abs(10 * std::log10(ps / pn) - snr));
  }

  // Disjointness: a built index never shares noise between train and test,
  // and an overlapping bank is refused.
  SynthConfig sc;
  sc.num_speakers = 1;
  sc.utterances_per_speaker = 4;
  sc.split_train = 2;
  sc.split_val = 1;
  sc.split_test = 1;
  sc.num_train_noises = 5;
  sc.noise_duration_sec = 2.0;
  const fs::path dir = work / "mixing-corpus";
  std::vector<ManifestRow> rows = SynthCorpus(sc, 9, dir.string());
  std::vector<NoiseEntry> tr = ScanNoiseBank((dir / "noise/train").string());
  std::vector<NoiseEntry> te = ScanNoiseBank((dir / "noise/test").string());
  DatasetIndex index = BuildDataset(rows, tr, te, DatasetConfig(), 9);
  std::set<std::string> train_noise, test_noise;
  for (const MixSpec &m : index.mixtures)
    (m.split == Split::kTest ? test_noise : train_noise).insert(m.noise_path);
  bool disjoint = true;
  for (const std::string &p : test_noise) disjoint &= !train_noise.count(p);
  bool refused = false;
  std::vector<NoiseEntry> leaky = te;
  leaky.push_back(tr.front());
  try {
    BuildDataset(rows, tr, leaky, DatasetConfig(), 9);
  } catch (const InvalidParameter &) {
    refused = true;
  }
  const double secs = Now() - t0;
  return {worst <= kSnrTolDb && disjoint && refused && secs < kMixingSeconds,
          fmt::format("mixing: {} mixtures, worst SNR error {:.2e} dB (<= {}); disjoint {}; "
                      "overlapping bank refused {}",
                      kMixtures, worst, kSnrTolDb, Bool(disjoint), Bool(refused))};
}

// ---------------------------------------------------------------------------

std::pair<bool, std::string> OverfitConvergence(const fs::path &work) {
  const double t0 = Now();
  SynthConfig sc;
  sc.num_speakers = 1;
  sc.utterances_per_speaker = 4;
  sc.split_train = 2;
  sc.split_val = 1;
  sc.split_test = 1;
  sc.num_train_noises = 2;
  sc.noise_duration_sec = 3.0;
  const fs::path dir = work / "overfit-corpus";
  std::vector<ManifestRow> rows = SynthCorpus(sc, 21, dir.string());
  DatasetConfig dc;  // every training SNR, one noise type per utterance
  dc.test_snrs = {0};
  dc.noises_per_utterance = 1;
  DatasetIndex index = BuildDataset(rows, ScanNoiseBank((dir / "noise/train").string()),
                                    ScanNoiseBank((dir / "noise/test").string()), dc, 3);
  std::vector<const MixSpec *> train = index.Mixtures(Split::kTrain);
  MixtureFeaturizer featurizer(FeatureConfig(), ChannelSet::kFull, true);
  featurizer.Load(train, 1);
  const NormalizerSet norms = featurizer.Fit(train, 1);
  ExampleSource src{train.size(), [&](size_t i) { return featurizer.Make(*train[i], norms); }};

  NetConfig net;
  ParamSet<double> init = MakeParams<double>(net);
  InitParams(&init, 8);
  TrainConfig tc;
  tc.adam.learning_rate = 1e-3;
  tc.max_epochs = kOverfitEpochs;
  tc.patience = kOverfitEpochs;
  tc.seed = 8;
  const double initial = EvaluateLoss(net, init, src, Precision::kFloat64);
  TrainResult r = TrainNetwork(net, tc, init, src, src);
  const double final_loss = EvaluateLoss(net, r.best_params, src, Precision::kFloat64);
  const double ratio = final_loss / initial;
  const double secs = Now() - t0;
  return {ratio <= kOverfitRatio && secs < kOverfitSeconds,
          fmt::format("overfit: {} utterances ({} mixtures), {} epochs, L1 {:.5f} -> {:.5f}, ratio "
                      "{:.3f} (<= {})",
                      index.Utterances(Split::kTrain).size(), train.size(), r.epochs_run, initial,
                      final_loss, ratio, kOverfitRatio)};
}

// ---------------------------------------------------------------------------

std::pair<bool, std::string> StoiProperties() {
  const double t0 = Now();
  Rng srng(12);
  SpeakerProfile spk = MakeSpeaker(&srng);
  bool self_ok = true, scale_ok = true, mono_ok = true;
  double worst_self = 1.0, worst_scale = 0.0;
  std::string detail;
  for (int u = 0; u < 3; ++u) {
    const Waveform x = SynthesizeUtterance(spk, 1.5 + 0.25 * u, &srng).audio;
    Rng nrng(100 + u);
    Waveform noise;
    for (size_t i = 0; i < x.size(); ++i) noise.samples.push_back(nrng.Normal());
    const double self = Stoi(x, x);
    worst_self = std::min(worst_self, self);
    self_ok &= self >= kSelfStoi;
    const Waveform y = MixAtSnr(x, noise, 0.0);
    Waveform y3 = y;
    for (double &v : y3.samples) v *= 3.0;
    const double d = std::abs(Stoi(x, y3) - Stoi(x, y));
    worst_scale = std::max(worst_scale, d);
    scale_ok &= d <= kScaleTol;
    double last = -1.0;
    for (double snr : {-10.0, 0.0, 10.0}) {
      const double s = Stoi(x, MixAtSnr(x, noise, snr));
      mono_ok &= s > last;
      detail += fmt::format("{}{:.3f}", snr == -10.0 ? (u ? "; " : "") : "<", s);
      last = s;
    }
  }
  const double secs = Now() - t0;
  return {self_ok && scale_ok && mono_ok && secs < kStoiSeconds,
          fmt::format("stoi: min self {:.6f} (>= {}); scale diff {:.2e} (<= {}); -10/0/10 dB {}",
                      worst_self, kSelfStoi, worst_scale, kScaleTol, detail)};
}

// ---------------------------------------------------------------------------

int RunCli(const std::string &args, const fs::path &log) {
  const std::string cmd =
      std::string("'") + EMGSE_CLI + "' " + args + " -q > /dev/null 2>> '" + log.string() + "'";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::map<std::string, std::vector<uint8_t>> Snapshot(const fs::path &dir) {
  std::map<std::string, std::vector<uint8_t>> files;
  for (const auto &e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file())
      files[fs::relative(e.path(), dir).string()] = ReadFileBytes(e.path().string());
  return files;
}

std::pair<bool, std::string> Determinism(const fs::path &work) {
  const fs::path dir = work / "determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path log = dir / "cli.log";
  const fs::path ini = dir / "det.ini";
  WriteFileText(
      ini.string(),
      "[synth]\nspeakers = 1\nutterances_per_speaker = 5\nsplit_train = 2\nsplit_val = 1\n"
      "split_test = 2\ntrain_noises = 2\nnoise_duration_sec = 3\n"
      "[dataset]\ntrain_snrs = 0, 5\ntest_snrs = -5, 5\nnoises_per_utterance = 1\n"
      "[train]\nmax_epochs = 2\nlearning_rate = 1e-3\n");
  const std::string common = "--config '" + ini.string() + "' --seed 11";
  const std::string corpus = (dir / "corpus").string(), data = (dir / "data").string();
  if (RunCli("synth " + common + " --out '" + corpus + "'", log) != 0 ||
      RunCli("build-dataset " + common + " --corpus '" + corpus + "' --out '" + data + "'", log) !=
          0)
    return {false, "determinism: corpus preparation failed, see " + log.string()};
  const std::string dataset = data + "/dataset.jsonl";
  const std::string noisy = corpus + "/audio/spk01_u004.wav", emg = corpus + "/emg/spk01_u004.emgc";

  auto run = [&](const std::string &name, int jobs) -> bool {
    const std::string out = (dir / name).string();
    const std::string j = " --jobs " + std::to_string(jobs);
    return RunCli("train " + common + j + " --dataset '" + dataset + "' --out '" + out + "/model'",
                  log) == 0 &&
           RunCli("enhance " + common + j + " --checkpoint '" + out +
                      "/model/model.ckpt' --noisy '" + noisy + "' --emg '" + emg + "' --out '" +
                      out + "/enhanced'",
                  log) == 0 &&
           RunCli("evaluate " + common + j + " --dataset '" + dataset + "' --checkpoint '" + out +
                      "/model/model.ckpt' --save-enhanced --out '" + out + "/eval'",
                  log) == 0;
  };
  if (!run("run1", 1) || !run("run2", 1) || !run("run3", 4))
    return {false, "determinism: a CLI step failed, see " + log.string()};
  const auto a = Snapshot(dir / "run1"), b = Snapshot(dir / "run2"), c = Snapshot(dir / "run3");
  const bool same_runs = a == b, same_jobs = a == c;
  return {
      same_runs && same_jobs && a.size() > 4,
      fmt::format("determinism: {} files (checkpoint, log, waveforms, reports); run1 == run2 {}; "
                  "jobs 1 == jobs 4 {}",
                  a.size(), Bool(same_runs), Bool(same_jobs))};
}

// ---------------------------------------------------------------------------

void Multimodal(const fs::path &work, int jobs) {
  const double t0 = Now();
  const fs::path dir = work / "multimodal";
  fs::create_directories(dir);

  PipelineConfig config;  // 4 speakers x 40 utterances
  config.dataset.test_snrs = {kLowSnrDb};
  config.train.adam.learning_rate = 1e-3;
  config.train.items_per_epoch = 300;
  config.train.max_epochs = 12;
  const uint64_t seed = 1;

  std::vector<ManifestRow> rows = SynthCorpus(config.synth, seed, (dir / "corpus").string(), jobs);
  DatasetIndex index =
      BuildDataset(rows, ScanNoiseBank((dir / "corpus/noise/train").string()),
                   ScanNoiseBank((dir / "corpus/noise/test").string()), config.dataset, seed);
  // Shared normalizers so every system sees identical audio features.
  MixtureFeaturizer fit_featurizer(config.features, ChannelSet::kFull, true);
  fit_featurizer.Load(index.Mixtures(Split::kTrain), jobs);
  const NormalizerSet norms = fit_featurizer.Fit(index.Mixtures(Split::kTrain), jobs);

  auto train = [&](Variant v, ChannelSet cs, const std::string &name) {
    PipelineConfig c = config;
    c.variant = v;
    c.channels = cs;
    const double ts = Now();
    Checkpoint ck = TrainModel(c, index, &norms, seed, jobs);
    SaveCheckpoint((dir / (name + ".ckpt")).string(), ck);
    std::printf("  trained %-12s best epoch %2d of %2d, val L1 %.5f [%.0f s]\n", name.c_str(),
                ck.meta.best_epoch, ck.meta.epochs_run, ck.meta.best_val_loss, Now() - ts);
    std::fflush(stdout);
    return ck;
  };
  const Checkpoint emgse = train(Variant::kEmgse, ChannelSet::kFull, "EMGSE");
  const Checkpoint se_a = train(Variant::kSeA, ChannelSet::kFull, "SE_A");
  const Checkpoint cheek = train(Variant::kEmgse, ChannelSet::kCheek, "EMGSE_cheek");

  std::vector<const MixSpec *> test = index.Mixtures(Split::kTest);
  MixtureFeaturizer featurizer(config.features, ChannelSet::kFull, true);
  featurizer.Load(test, jobs);
  EvalReport report =
      Evaluate({{"Noisy", nullptr}, {"EMGSE", &emgse}, {"SE_A", &se_a}, {"EMGSE_cheek", &cheek}},
               test, featurizer, jobs);
  WriteFileText((dir / "report.txt").string(), ReportTable(report));
  WriteFileText((dir / "report.jsonl").string(), ReportJsonl(report));
  const double noisy = report.MeanStoi("Noisy", kLowSnrDb);
  const double s_emgse = report.MeanStoi("EMGSE", kLowSnrDb);
  const double s_se_a = report.MeanStoi("SE_A", kLowSnrDb);
  const double s_cheek = report.MeanStoi("EMGSE_cheek", kLowSnrDb);
  const double secs = Now() - t0;

  size_t failed = 0;
  for (const EvalRecord &r : report.records) failed += !r.ok;
  Report(
      6,
      s_emgse > s_se_a && s_se_a > noisy && s_emgse > noisy && failed == 0 &&
          secs < kMultimodalSeconds,
      fmt::format("multimodal: mean STOI at {} dB over {} mixtures: EMGSE {:.4f} > SE(A) {:.4f} > "
                  "Noisy {:.4f} [{:.0f} s]",
                  kLowSnrDb, test.size(), s_emgse, s_se_a, noisy, secs));

  const double gap = s_emgse - s_se_a, diff = std::abs(s_emgse - s_cheek);
  Report(7, diff < gap,
         fmt::format("cheek: |EMGSE {:.4f} - EMGSE_cheek {:.4f}| = {:.4f} < EMGSE-SE(A) gap {:.4f}",
                     s_emgse, s_cheek, diff, gap));

  // First -10 dB mixture of each of the first test utterances.
  std::vector<const MixSpec *> probes;
  std::set<std::string> seen;
  for (const MixSpec *m : test)
    if (m->snr_db == kLowSnrDb && seen.insert(m->clean_id).second &&
        static_cast<int>(probes.size()) < kLatentUtterances)
      probes.push_back(m);
  double with_emg = 0, without = 0;
  for (const MixSpec *m : probes) {
    LatentExport ex =
        ExportLatents(emgse, featurizer.Clean(*m), featurizer.Noisy(*m), featurizer.Emg(*m));
    with_emg += ex.diff_emg_clean.mean() / probes.size();
    without += ex.diff_noisy_clean.mean() / probes.size();
  }
  Report(
      10, static_cast<int>(probes.size()) == kLatentUtterances && with_emg < without,
      fmt::format("latents: mean |noisy+EMG - clean| {:.5f} < mean |noisy - clean| {:.5f} over {} "
                  "utterances at {} dB",
                  with_emg, without, probes.size(), kLowSnrDb));
}

}  // namespace
}  // namespace emgse

int main(int argc, char **argv) {
  using namespace emgse;
  CLI::App app{"Acceptance checks for the EMG-guided speech enhancement pipeline"};
  std::string group = "all", work;
  int jobs = 1;
  bool keep = false;
  app.add_option("--group", group, "fast (1-5, 8, 9), multimodal (6, 7, 10) or all")
      ->check(CLI::IsMember({"fast", "multimodal", "all"}));
  app.add_option("--work", work, "Scratch directory (default: a fresh temp directory)");
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--keep", keep, "Keep the scratch directory");
  CLI11_PARSE(app, argc, argv);

  SetLogLevel(spdlog::level::warn);
  const bool own_work = work.empty();
  fs::path root =
      own_work ? fs::temp_directory_path() / ("emgse-acceptance-" + std::to_string(::getpid()))
               : fs::path(work);
  fs::create_directories(root);

  if (group != "multimodal") {
    Criterion(1, DspSuite);
    Criterion(2, FeatureOracle);
    Criterion(3, GradientSuite);
    Criterion(4, [&] { return MixingAccuracy(root); });
    Criterion(5, [&] { return OverfitConvergence(root); });
    Criterion(8, StoiProperties);
    Criterion(9, [&] { return Determinism(root); });
  }
  if (group != "fast") {
    try {
      Multimodal(root, jobs);
    } catch (const std::exception &e) {
      for (int id : {6, 7, 10}) Report(id, false, fmt::format("error: {}", e.what()));
    }
  }
  if (own_work && !keep) fs::remove_all(root);
  std::printf("%s: %d failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}

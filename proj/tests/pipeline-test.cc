// tests/pipeline-test.cc

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

#include <cmath>
#include <filesystem>

#include <gtest/gtest.h>

#include "base/emgse-common.h"
#include "data/dataset-index.h"
#include "data/mixture-features.h"
#include "data/synth-corpus.h"
#include "io/binary-io.h"
#include "metrics/stoi.h"
#include "model/checkpoint.h"
#include "model/inference.h"
#include "model/trainer.h"

namespace emgse {
namespace {

namespace fs = std::filesystem;

class PipelineTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    root_ = new fs::path(fs::temp_directory_path() /
                         ("emgse-pipeline-" + std::to_string(::getpid())));
    SynthConfig cfg;
    cfg.num_speakers = 1;
    cfg.utterances_per_speaker = 4;
    cfg.split_train = 2;
    cfg.split_val = 1;
    cfg.split_test = 1;
    cfg.num_train_noises = 2;
    cfg.noise_duration_sec = 3.0;
    std::vector<ManifestRow> rows = SynthCorpus(cfg, 21, root_->string(), 1);
    // Default training SNRs, one noise type per utterance: 2 utterances give
    // 10 training mixtures.
    DatasetConfig dc;
    dc.test_snrs = {0};
    dc.noises_per_utterance = 1;
    index_ = new DatasetIndex(BuildDataset(rows, ScanNoiseBank((*root_ / "noise/train").string()),
                                           ScanNoiseBank((*root_ / "noise/test").string()), dc, 3));
    featurizer_ = new MixtureFeaturizer(FeatureConfig(), ChannelSet::kFull, true);
    featurizer_->Load(All(), 1);
    norms_ = new NormalizerSet(featurizer_->Fit(index_->Mixtures(Split::kTrain), 1));
  }
  static void TearDownTestSuite() {
    fs::remove_all(*root_);
    delete featurizer_;
    delete norms_;
    delete index_;
    delete root_;
  }
  static std::vector<const MixSpec *> All() {
    std::vector<const MixSpec *> v;
    for (const MixSpec &m : index_->mixtures) v.push_back(&m);
    return v;
  }
  static Checkpoint MakeCheckpoint(Variant v, uint64_t seed) {
    Checkpoint c;
    c.net.variant = v;
    c.audio_norm = norms_->audio;
    if (v == Variant::kEmgse) c.emg_norm = norms_->Emg(ChannelSet::kFull);
    c.params = MakeParams<double>(c.net);
    InitParams(&c.params, seed);
    c.meta.seed = seed;
    return c;
  }

  static fs::path *root_;
  static DatasetIndex *index_;
  static MixtureFeaturizer *featurizer_;
  static NormalizerSet *norms_;
};

fs::path *PipelineTest::root_;
DatasetIndex *PipelineTest::index_;
MixtureFeaturizer *PipelineTest::featurizer_;
NormalizerSet *PipelineTest::norms_;

TEST_F(PipelineTest, ExamplesAreAlignedAndNormalized) {
  const MixSpec &spec = *index_->Mixtures(Split::kTrain)[0];
  MixtureExample ex = featurizer_->Make(spec, *norms_);
  EXPECT_EQ(ex.emg.rows(), ex.audio.rows());
  EXPECT_EQ(ex.target.rows(), ex.audio.rows());
  EXPECT_EQ(ex.emg.cols(), 5425);
  EXPECT_EQ(ex.audio.cols(), 257);
  EXPECT_GE(ex.audio.minCoeff(), 0.0);
  EXPECT_LE(ex.audio.maxCoeff(), 1.0);
  EXPECT_GE(ex.target.minCoeff(), 0.0);
  EXPECT_LE(ex.emg.maxCoeff(), 1.0);
  EXPECT_EQ(norms_->Emg(ChannelSet::kCheek).Dim(), 4340);
  NormalizerSet back = ParseNormalizerSet(SerializeNormalizerSet(*norms_), "test");
  EXPECT_EQ(back.audio.min, norms_->audio.min);
  EXPECT_EQ(back.Emg(ChannelSet::kFull).max, norms_->Emg(ChannelSet::kFull).max);
  EXPECT_EQ(SerializeNormalizerSet(back), SerializeNormalizerSet(*norms_));
}

TEST_F(PipelineTest, CheckpointRoundTripIsByteIdentical) {
  for (Variant v : {Variant::kEmgse, Variant::kSeA}) {
    Checkpoint c = MakeCheckpoint(v, 4);
    c.meta.train_loss = {0.5, 0.25};
    c.meta.val_loss = {0.4, 0.3};
    c.meta.best_val_loss = 0.3;
    const std::vector<uint8_t> bytes = EncodeCheckpoint(c);
    EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 6), std::string("EMGSE\0", 6));
    Checkpoint back = DecodeCheckpoint(bytes);
    EXPECT_EQ(EncodeCheckpoint(back), bytes);
    EXPECT_EQ(back.params["output.weight"], c.params["output.weight"]);
    EXPECT_EQ(back.meta.val_loss, c.meta.val_loss);

    std::vector<uint8_t> cut(bytes.begin(), bytes.end() - 8);
    EXPECT_THROW(DecodeCheckpoint(cut), FormatError);
    std::vector<uint8_t> extra = bytes;
    extra.push_back(1);
    EXPECT_THROW(DecodeCheckpoint(extra), FormatError);
  }
  Checkpoint c = MakeCheckpoint(Variant::kEmgse, 4);
  c.net.encoder_out = 99;
  EXPECT_THROW(EncodeCheckpoint(c), ShapeMismatch);
}

TEST_F(PipelineTest, EnhanceContract) {
  const MixSpec &spec = *index_->Mixtures(Split::kTest)[0];
  const Waveform noisy = featurizer_->Noisy(spec);
  Checkpoint emgse = MakeCheckpoint(Variant::kEmgse, 5);
  const Waveform a = Enhance(emgse, noisy, &featurizer_->Emg(spec));
  const Waveform b = Enhance(emgse, noisy, &featurizer_->Emg(spec));
  EXPECT_EQ(a.size(), noisy.size());
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_THROW(Enhance(emgse, noisy, nullptr), MissingModality);
  Checkpoint sea = MakeCheckpoint(Variant::kSeA, 5);
  EXPECT_EQ(Enhance(sea, noisy, nullptr).size(), noisy.size());

  LatentExport lat = ExportLatents(emgse, featurizer_->Clean(spec), noisy, featurizer_->Emg(spec));
  EXPECT_EQ(lat.clean_only.cols(), 200);
  EXPECT_EQ(lat.noisy_plus_emg.rows(), lat.clean_only.rows());
  LatentExport same =
      ExportLatents(emgse, featurizer_->Clean(spec), featurizer_->Clean(spec), featurizer_->Emg(spec));
  EXPECT_EQ(same.diff_noisy_clean.maxCoeff(), 0.0);
}

TEST_F(PipelineTest, OverfitTwoUtterances) {
  std::vector<const MixSpec *> train = index_->Mixtures(Split::kTrain);
  ASSERT_EQ(index_->Utterances(Split::kTrain).size(), 2u);
  ASSERT_EQ(train.size(), 10u);
  ExampleSource src{train.size(), [&](size_t i) { return featurizer_->Make(*train[i], *norms_); }};
  Checkpoint c = MakeCheckpoint(Variant::kEmgse, 8);
  TrainConfig tc;
  tc.adam.learning_rate = 1e-3;
  tc.max_epochs = 200;
  tc.patience = 200;
  tc.seed = 8;
  const double initial = EvaluateLoss(c.net, c.params, src, Precision::kFloat64);
  TrainResult r = TrainNetwork(c.net, tc, c.params, src, src);
  c.params = r.best_params;
  const double final_loss = EvaluateLoss(c.net, c.params, src, Precision::kFloat64);
  EXPECT_LE(final_loss, 0.1 * initial) << "initial " << initial << " final " << final_loss;

  const MixSpec &spec = *train[0];
  const Waveform noisy = featurizer_->Noisy(spec);
  const Waveform out = Enhance(c, noisy, &featurizer_->Emg(spec));
  EXPECT_GT(Stoi(featurizer_->Clean(spec), out), Stoi(featurizer_->Clean(spec), noisy));
}

TEST_F(PipelineTest, TrainingIsDeterministic) {
  std::vector<const MixSpec *> train = index_->Mixtures(Split::kTrain);
  std::vector<const MixSpec *> val = index_->Mixtures(Split::kVal);
  ExampleSource tr{train.size(), [&](size_t i) { return featurizer_->Make(*train[i], *norms_); }};
  ExampleSource va{val.size(), [&](size_t i) { return featurizer_->Make(*val[i], *norms_); }};
  TrainConfig tc;
  tc.max_epochs = 2;
  tc.seed = 3;
  Checkpoint c = MakeCheckpoint(Variant::kEmgse, 3);
  TrainResult a = TrainNetwork(c.net, tc, c.params, tr, va, 1);
  TrainResult b = TrainNetwork(c.net, tc, c.params, tr, va, 3);
  EXPECT_EQ(a.val_loss, b.val_loss);
  c.params = a.best_params;
  Checkpoint d = c;
  d.params = b.best_params;
  EXPECT_EQ(EncodeCheckpoint(c), EncodeCheckpoint(d));
  EXPECT_THROW(TrainNetwork(c.net, tc, c.params, tr, ExampleSource{}), InvalidParameter);
}

}  // namespace
}  // namespace emgse

// model/trainer.h

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

#ifndef EMGSE_MODEL_TRAINER_H_
#define EMGSE_MODEL_TRAINER_H_

#include <functional>
#include <string>
#include <vector>

#include "data/mixture-features.h"
#include "model/network.h"
#include "model/optimizer.h"

namespace emgse {

enum class Precision { kFloat32, kFloat64 };
const char *PrecisionName(Precision p);
Precision ParsePrecision(const std::string &name);

struct TrainConfig {
  AdamConfig adam;
  int patience = 15;
  int max_epochs = 300;
  double dropout = 0.5;
  uint64_t seed = 0;
  // Arithmetic of the training loop; parameters are kept in double outside it.
  Precision precision = Precision::kFloat32;
  // Shuffled training items visited per epoch; 0 visits all of them.
  int items_per_epoch = 0;

  void Validate() const;
};

/// Random-access supply of training or validation examples.
struct ExampleSource {
  size_t size = 0;
  std::function<MixtureExample(size_t)> get;
};

struct TrainResult {
  ParamSet<double> best_params;
  ParamSet<double> last_params;
  std::vector<double> train_loss;  // mean train-mode loss per epoch
  std::vector<double> val_loss;    // mean eval-mode loss per epoch
  int best_epoch = 0;
  double best_val_loss = 0.0;
  int epochs_run = 0;
};

using EpochCallback = std::function<void(int epoch, double train_loss, double val_loss)>;

/// One full utterance per step.  Each epoch visits the training items in an
/// order shuffled from (seed, epoch), takes one Adam step per item, then
/// measures the mean validation L1 in eval mode.  The parameters of the best
/// validation epoch are kept; training stops after `patience` epochs without
/// improvement or at `max_epochs`.  `init` is the starting point (see
/// InitParams).  Validation runs on `jobs` threads; the result does not
/// depend on `jobs`.
TrainResult TrainNetwork(const NetConfig &net, const TrainConfig &config,
                         const ParamSet<double> &init, const ExampleSource &train,
                         const ExampleSource &val, int jobs = 1,
                         const EpochCallback &on_epoch = {});

/// Mean eval-mode L1 of `params` over a source.
double EvaluateLoss(const NetConfig &net, const ParamSet<double> &params,
                    const ExampleSource &source, Precision precision, int jobs = 1);

}  // namespace emgse

#endif  // EMGSE_MODEL_TRAINER_H_

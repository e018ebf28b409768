// model/optimizer.h

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

#ifndef EMGSE_MODEL_OPTIMIZER_H_
#define EMGSE_MODEL_OPTIMIZER_H_

#include <limits>

#include "model/param-set.h"

namespace emgse {

struct AdamConfig {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  // Global gradient-norm clip; 0 disables it.
  double clip_norm = 0.0;
};

/// Adam with bias correction.  Moments start at zero and the step counter at 0.
template <typename R>
class Adam {
 public:
  Adam(const AdamConfig &config, const ParamSet<R> &like)
      : config_(config), m_(like.ZerosLike()), v_(like.ZerosLike()) {}

  void Step(const ParamSet<R> &grads, ParamSet<R> *params);
  long steps() const { return t_; }

 private:
  AdamConfig config_;
  ParamSet<R> m_, v_;
  long t_ = 0;
};

/// L2 norm over every entry of every gradient matrix.
template <typename R>
double GlobalNorm(const ParamSet<R> &grads);

/// Keeps the best (lowest) validation loss and stops after `patience`
/// consecutive epochs without a strict improvement.
class EarlyStopping {
 public:
  explicit EarlyStopping(int patience);

  // Returns true when `loss` is a new best.  Epochs count from 1.
  bool Update(double loss);
  bool ShouldStop() const { return bad_epochs_ >= patience_; }
  int best_epoch() const { return best_epoch_; }
  double best_loss() const { return best_; }
  int epochs() const { return epoch_; }

 private:
  int patience_;
  int epoch_ = 0;
  int best_epoch_ = 0;
  int bad_epochs_ = 0;
  double best_ = std::numeric_limits<double>::infinity();
};

}  // namespace emgse

#endif  // EMGSE_MODEL_OPTIMIZER_H_

// model/trainer.cc

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

#include "model/trainer.h"

#include <numeric>

#include "base/parallel.h"

namespace emgse {

const char *PrecisionName(Precision p) { return p == Precision::kFloat32 ? "f32" : "f64"; }

Precision ParsePrecision(const std::string &name) {
  if (name == "f32" || name == "float32") return Precision::kFloat32;
  if (name == "f64" || name == "float64") return Precision::kFloat64;
  throw InvalidParameter("unknown precision '" + name + "' (f32 or f64)");
}

void TrainConfig::Validate() const {
  if (!(adam.learning_rate > 0.0)) throw InvalidParameter("learning rate must be positive");
  if (!(adam.beta1 >= 0.0 && adam.beta1 < 1.0 && adam.beta2 >= 0.0 && adam.beta2 < 1.0))
    throw InvalidParameter("Adam betas must be in [0, 1)");
  if (!(adam.epsilon > 0.0)) throw InvalidParameter("Adam epsilon must be positive");
  if (adam.clip_norm < 0.0) throw InvalidParameter("clip norm must be >= 0");
  if (patience < 1) throw InvalidParameter("patience must be at least 1");
  if (max_epochs < 1) throw InvalidParameter("max_epochs must be at least 1");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw InvalidParameter("dropout must be in [0, 1)");
  if (items_per_epoch < 0) throw InvalidParameter("items_per_epoch must be >= 0");
}

namespace {

template <typename R>
double MeanEvalLoss(const NetConfig &net, const ParamSet<R> &params, const ExampleSource &source,
                    int jobs) {
  std::vector<double> losses(source.size);
  ParallelFor(source.size, jobs, [&](size_t i) {
    const MixtureExample ex = source.get(i);
    const Mat<R> emg = ex.emg.cast<R>(), audio = ex.audio.cast<R>();
    NetOutput<R> out = Forward(net, params, emg, audio, Mode::kEval, nullptr, nullptr, nullptr);
    losses[i] = L1Loss(out.z, Mat<R>(ex.target.cast<R>()));
  });
  // Summed in index order so the value does not depend on scheduling.
  return std::accumulate(losses.begin(), losses.end(), 0.0) / static_cast<double>(source.size);
}

template <typename R>
TrainResult Train(const NetConfig &net, const TrainConfig &config, const ParamSet<double> &init,
                  const ExampleSource &train, const ExampleSource &val, int jobs,
                  const EpochCallback &on_epoch) {
  ParamSet<R> params = init.Cast<R>();
  ParamSet<R> grads = params.ZerosLike();
  Adam<R> adam(config.adam, params);
  EarlyStopping stopping(config.patience);
  TrainResult result;
  result.best_params = init;

  std::vector<size_t> order(train.size);
  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    std::iota(order.begin(), order.end(), size_t{0});
    Rng rng(DeriveSeed(config.seed, static_cast<uint64_t>(epoch)));
    rng.Shuffle(&order);
    const size_t steps = config.items_per_epoch > 0
                             ? std::min(order.size(), static_cast<size_t>(config.items_per_epoch))
                             : order.size();
    double total = 0.0;
    ForwardCache<R> cache;
    for (size_t s = 0; s < steps; ++s) {
      const MixtureExample ex = train.get(order[s]);
      const Mat<R> emg = ex.emg.cast<R>(), audio = ex.audio.cast<R>(),
                   target = ex.target.cast<R>();
      NetOutput<R> out = Forward(net, params, emg, audio, Mode::kTrain, &rng, nullptr, &cache);
      total += L1Loss(out.z, target);
      grads.SetZero();
      Backward(net, params, cache, L1LossGrad(out.z, target), &grads);
      adam.Step(grads, &params);
    }
    const double train_loss = total / static_cast<double>(steps);
    const double val_loss = MeanEvalLoss(net, params, val, jobs);
    if (!std::isfinite(train_loss) || !std::isfinite(val_loss))
      throw Error("training diverged at epoch " + std::to_string(epoch));
    result.train_loss.push_back(train_loss);
    result.val_loss.push_back(val_loss);
    if (stopping.Update(val_loss)) result.best_params = params.template Cast<double>();
    result.epochs_run = epoch;
    if (on_epoch) on_epoch(epoch, train_loss, val_loss);
    if (stopping.ShouldStop()) break;
  }
  result.best_epoch = stopping.best_epoch();
  result.best_val_loss = stopping.best_loss();
  result.last_params = params.template Cast<double>();
  return result;
}

}  // namespace

TrainResult TrainNetwork(const NetConfig &net, const TrainConfig &config,
                         const ParamSet<double> &init, const ExampleSource &train,
                         const ExampleSource &val, int jobs, const EpochCallback &on_epoch) {
  config.Validate();
  if (train.size == 0) throw InvalidParameter("training split is empty");
  if (val.size == 0) throw InvalidParameter("validation split is empty");
  NetConfig n = net;
  n.dropout = config.dropout;
  if (!MakeParams<double>(n).SameLayout(init))
    throw ShapeMismatch("initial parameters do not match the network config");
  if (config.precision == Precision::kFloat32)
    return Train<float>(n, config, init, train, val, jobs, on_epoch);
  return Train<double>(n, config, init, train, val, jobs, on_epoch);
}

double EvaluateLoss(const NetConfig &net, const ParamSet<double> &params,
                    const ExampleSource &source, Precision precision, int jobs) {
  if (source.size == 0) throw InvalidParameter("cannot evaluate an empty split");
  if (precision == Precision::kFloat32)
    return MeanEvalLoss(net, params.Cast<float>(), source, jobs);
  return MeanEvalLoss(net, params, source, jobs);
}

}  // namespace emgse

// model/gradient-check.cc

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

#include "model/gradient-check.h"

#include <algorithm>
#include <cmath>

namespace emgse {

std::vector<GradientCheckEntry> CheckGradients(const NetConfig &config, int frames,
                                               uint64_t seed, double step, double floor) {
  ParamSet<double> params = MakeParams<double>(config);
  InitParams(&params, DeriveSeed(seed, 0));
  Rng rng(DeriveSeed(seed, 1));
  // Scale weights up a little so activations are not all tiny.
  for (size_t i = 0; i < params.size(); ++i) params.At(i) *= 1.5;
  Mat<double> x_emg(frames, config.emg_dim), x_audio(frames, config.audio_dim);
  for (Eigen::Index k = 0; k < x_emg.size(); ++k) x_emg(k) = rng.Uniform();
  for (Eigen::Index k = 0; k < x_audio.size(); ++k) x_audio(k) = rng.Uniform();
  const DropoutMasks<double> masks = SampleDropoutMasks<double>(config, frames, &rng);

  auto run = [&](const ParamSet<double> &p, ForwardCache<double> *cache) {
    return Forward(config, p, x_emg, x_audio, Mode::kTrain, &rng, &masks, cache).z;
  };
  ForwardCache<double> cache;
  const Mat<double> z0 = run(params, &cache);
  Mat<double> target(z0.rows(), z0.cols());
  for (Eigen::Index k = 0; k < target.size(); ++k)
    target(k) = z0(k) + (rng.Uniform() < 0.5 ? -1.0 : 1.0) * rng.Uniform(0.5, 1.0);

  ParamSet<double> grads = params.ZerosLike();
  Backward(config, params, cache, L1LossGrad(z0, target), &grads);

  std::vector<GradientCheckEntry> report;
  for (size_t i = 0; i < params.size(); ++i) {
    GradientCheckEntry e;
    e.name = params.Name(i);
    for (Eigen::Index k = 0; k < params.At(i).size(); ++k) {
      const double saved = params.At(i)(k);
      params.At(i)(k) = saved + step;
      const double up = L1Loss(run(params, nullptr), target);
      params.At(i)(k) = saved - step;
      const double down = L1Loss(run(params, nullptr), target);
      params.At(i)(k) = saved;
      const double numeric = (up - down) / (2 * step);
      const double analytic = grads.At(i)(k);
      const double denom = std::max({std::abs(numeric), std::abs(analytic), floor});
      e.max_rel_error = std::max(e.max_rel_error, std::abs(numeric - analytic) / denom);
      ++e.checked;
    }
    report.push_back(e);
  }
  return report;
}

}  // namespace emgse

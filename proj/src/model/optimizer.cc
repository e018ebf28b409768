// model/optimizer.cc

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

#include "model/optimizer.h"

#include <cmath>

namespace emgse {

template <typename R>
void Adam<R>::Step(const ParamSet<R> &grads, ParamSet<R> *params) {
  if (!grads.SameLayout(*params) || !m_.SameLayout(*params))
    throw ShapeMismatch("Adam: gradient and parameter layouts differ");
  ++t_;
  double scale = 1.0;
  if (config_.clip_norm > 0.0) {
    const double norm = GlobalNorm(grads);
    if (norm > config_.clip_norm) scale = config_.clip_norm / norm;
  }
  const R b1 = static_cast<R>(config_.beta1), b2 = static_cast<R>(config_.beta2);
  const R c1 = static_cast<R>(1.0 - std::pow(config_.beta1, static_cast<double>(t_)));
  const R c2 = static_cast<R>(1.0 - std::pow(config_.beta2, static_cast<double>(t_)));
  const R lr = static_cast<R>(config_.learning_rate), eps = static_cast<R>(config_.epsilon);
  const R s = static_cast<R>(scale);
  for (size_t i = 0; i < params->size(); ++i) {
    auto g = (grads.At(i).array() * s);
    auto m = m_.At(i).array();
    auto v = v_.At(i).array();
    m = b1 * m + (R(1) - b1) * g;
    v = b2 * v + (R(1) - b2) * g * g;
    params->At(i).array() -= lr * (m / c1) / ((v / c2).sqrt() + eps);
  }
}

template <typename R>
double GlobalNorm(const ParamSet<R> &grads) {
  double s = 0.0;
  for (size_t i = 0; i < grads.size(); ++i)
    s += grads.At(i).template cast<double>().squaredNorm();
  return std::sqrt(s);
}

EarlyStopping::EarlyStopping(int patience) : patience_(patience) {
  if (patience < 1) throw InvalidParameter("patience must be at least 1");
}

bool EarlyStopping::Update(double loss) {
  ++epoch_;
  if (loss < best_) {
    best_ = loss;
    best_epoch_ = epoch_;
    bad_epochs_ = 0;
    return true;
  }
  ++bad_epochs_;
  return false;
}

template class Adam<float>;
template class Adam<double>;
template double GlobalNorm(const ParamSet<float> &);
template double GlobalNorm(const ParamSet<double> &);

}  // namespace emgse

// feat/normalizer.cc

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

#include "feat/normalizer.h"

#include <string>

#include "base/emgse-common.h"

namespace emgse {

void Normalizer::Apply(Eigen::MatrixXd *m) const {
  if (m->cols() != min.size())
    throw ShapeMismatch("normalizer has " + std::to_string(min.size()) +
                        " dims, features have " + std::to_string(m->cols()));
  for (Eigen::Index d = 0; d < m->cols(); ++d) {
    const double range = max[d] - min[d];
    if (range <= epsilon) {
      m->col(d).setZero();
      continue;
    }
    m->col(d) = ((m->col(d).array() - min[d]) / range).cwiseMax(0.0).cwiseMin(1.0);
  }
}

void Normalizer::Invert(Eigen::MatrixXd *m) const {
  if (m->cols() != min.size())
    throw ShapeMismatch("normalizer has " + std::to_string(min.size()) +
                        " dims, features have " + std::to_string(m->cols()));
  for (Eigen::Index d = 0; d < m->cols(); ++d) {
    const double range = max[d] - min[d];
    if (range <= epsilon)
      m->col(d).setConstant(min[d]);
    else
      m->col(d) = m->col(d).array() * range + min[d];
  }
}

void NormalizerAccumulator::Add(const Eigen::MatrixXd &m) {
  if (m.rows() == 0) return;
  Eigen::VectorXd lo = m.colwise().minCoeff().transpose();
  Eigen::VectorXd hi = m.colwise().maxCoeff().transpose();
  if (frames_ == 0) {
    min_ = lo;
    max_ = hi;
  } else {
    if (m.cols() != min_.size())
      throw ShapeMismatch("feature dimension changed while fitting normalizer");
    min_ = min_.cwiseMin(lo);
    max_ = max_.cwiseMax(hi);
  }
  frames_ += m.rows();
}

void NormalizerAccumulator::Merge(const NormalizerAccumulator &other) {
  if (other.frames_ == 0) return;
  if (frames_ == 0) {
    *this = other;
    return;
  }
  if (other.min_.size() != min_.size())
    throw ShapeMismatch("cannot merge normalizers of different dimension");
  min_ = min_.cwiseMin(other.min_);
  max_ = max_.cwiseMax(other.max_);
  frames_ += other.frames_;
}

Normalizer NormalizerAccumulator::Finish() const {
  if (frames_ == 0) throw InvalidParameter("cannot fit a normalizer on no frames");
  Normalizer n;
  n.min = min_;
  n.max = max_;
  return n;
}

Normalizer FitNormalizer(std::span<const FeatureMatrix> train) {
  if (train.empty()) throw InvalidParameter("cannot fit a normalizer on no matrices");
  NormalizerAccumulator acc;
  for (const FeatureMatrix &m : train) acc.Add(m.data);
  return acc.Finish();
}

}  // namespace emgse

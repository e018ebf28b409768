// feat/normalizer.h

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

#ifndef EMGSE_FEAT_NORMALIZER_H_
#define EMGSE_FEAT_NORMALIZER_H_

#include <span>

#include <Eigen/Dense>

namespace emgse {

/// frames x dims real matrix.
struct FeatureMatrix {
  Eigen::MatrixXd data;

  int NumFrames() const { return static_cast<int>(data.rows()); }
  int Dim() const { return static_cast<int>(data.cols()); }
};

/// Per-dimension min-max scaling to [0, 1], fitted on training data only.
/// A dimension whose max equals its min always maps to 0; values outside the
/// fitted range are clamped.
struct Normalizer {
  Eigen::VectorXd min;
  Eigen::VectorXd max;
  double epsilon = 0.0;

  int Dim() const { return static_cast<int>(min.size()); }
  bool Empty() const { return min.size() == 0; }

  void Apply(Eigen::MatrixXd *m) const;
  void Invert(Eigen::MatrixXd *m) const;
};

// Running min/max over any number of matrices; the result does not depend on
// the order in which they are added.
class NormalizerAccumulator {
 public:
  void Add(const Eigen::MatrixXd &m);
  void Merge(const NormalizerAccumulator &other);
  bool Empty() const { return frames_ == 0; }
  Normalizer Finish() const;

 private:
  Eigen::VectorXd min_, max_;
  long frames_ = 0;
};

/// Pools every frame of every matrix.  Throws InvalidParameter on empty input.
Normalizer FitNormalizer(std::span<const FeatureMatrix> train);

}  // namespace emgse

#endif  // EMGSE_FEAT_NORMALIZER_H_

// model/gradient-check.h

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

#ifndef EMGSE_MODEL_GRADIENT_CHECK_H_
#define EMGSE_MODEL_GRADIENT_CHECK_H_

#include <string>
#include <vector>

#include "model/network.h"

namespace emgse {

struct GradientCheckEntry {
  std::string name;
  double max_rel_error = 0.0;
  size_t checked = 0;
};

/// Compares the analytic gradient of the L1 loss against central finite
/// differences for every scalar of a small random network (train mode, fixed
/// dropout masks).  The target is placed away from the output so the loss is
/// differentiable at the probe point.  Relative error per scalar is
/// |a - n| / max(|a|, |n|, floor).
std::vector<GradientCheckEntry> CheckGradients(const NetConfig &config, int frames,
                                               uint64_t seed, double step = 1e-5,
                                               double floor = 1e-6);

}  // namespace emgse

#endif  // EMGSE_MODEL_GRADIENT_CHECK_H_

// io/feature-file.h

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

#ifndef EMGSE_IO_FEATURE_FILE_H_
#define EMGSE_IO_FEATURE_FILE_H_

#include <string>

#include <Eigen/Dense>

namespace emgse {

// Columnar text matrix: one frame per line, whitespace-separated columns,
// values printed with 17 significant digits so they read back exactly.
// Lines starting with '#' are comments.
void WriteFeatureText(const std::string &path, const Eigen::MatrixXd &m,
                      const std::string &comment = "");
Eigen::MatrixXd ReadFeatureText(const std::string &path);

}  // namespace emgse

#endif  // EMGSE_IO_FEATURE_FILE_H_

// base/logging.h

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

#ifndef EMGSE_BASE_LOGGING_H_
#define EMGSE_BASE_LOGGING_H_

#include <spdlog/spdlog.h>

namespace emgse {

// All diagnostics go to standard error; standard output is reserved for
// machine-readable results.
spdlog::logger &Log();

void SetLogLevel(spdlog::level::level_enum level);

}  // namespace emgse

#endif  // EMGSE_BASE_LOGGING_H_

// base/emgse-common.h

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

#ifndef EMGSE_BASE_EMGSE_COMMON_H_
#define EMGSE_BASE_EMGSE_COMMON_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace emgse {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &what) : std::runtime_error(what) {}
};

/// A parameter outside its documented domain (cutoff above Nyquist, n < 2, ...).
class InvalidParameter : public Error {
 public:
  explicit InvalidParameter(const std::string &what) : Error(what) {}
};

/// Operand shapes (rows, columns, lengths, rates) disagree.
class ShapeMismatch : public Error {
 public:
  explicit ShapeMismatch(const std::string &what) : Error(what) {}
};

/// Malformed, truncated or unsupported file content.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string &what) : Error(what) {}
};

/// A required input modality (EMG for an EMGSE model) was not supplied.
class MissingModality : public Error {
 public:
  explicit MissingModality(const std::string &what) : Error(what) {}
};

}  // namespace emgse

#endif  // EMGSE_BASE_EMGSE_COMMON_H_

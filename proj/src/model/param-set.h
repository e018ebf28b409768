// model/param-set.h

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

#ifndef EMGSE_MODEL_PARAM_SET_H_
#define EMGSE_MODEL_PARAM_SET_H_

#include <map>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "base/emgse-common.h"

namespace emgse {

template <typename R>
using Mat = Eigen::Matrix<R, Eigen::Dynamic, Eigen::Dynamic>;
template <typename R>
using Vec = Eigen::Matrix<R, Eigen::Dynamic, 1>;

// Keeps an argument out of template deduction, so the scalar type of a call
// is fixed by its parameter set alone.
template <typename T>
using Same = std::type_identity_t<T>;

/// Ordered collection of named parameter matrices.  Iteration order is the
/// insertion order, which is also the serialization order.
template <typename R>
class ParamSet {
 public:
  Mat<R> &Add(const std::string &name, Eigen::Index rows, Eigen::Index cols) {
    if (index_.count(name)) throw InvalidParameter("duplicate parameter '" + name + "'");
    index_[name] = values_.size();
    names_.push_back(name);
    values_.push_back(Mat<R>::Zero(rows, cols));
    return values_.back();
  }

  bool Has(const std::string &name) const { return index_.count(name) > 0; }
  Mat<R> &operator[](const std::string &name) { return values_[Find(name)]; }
  const Mat<R> &operator[](const std::string &name) const { return values_[Find(name)]; }

  size_t size() const { return values_.size(); }
  const std::string &Name(size_t i) const { return names_[i]; }
  Mat<R> &At(size_t i) { return values_[i]; }
  const Mat<R> &At(size_t i) const { return values_[i]; }

  size_t NumScalars() const {
    size_t n = 0;
    for (const Mat<R> &m : values_) n += static_cast<size_t>(m.size());
    return n;
  }

  ParamSet ZerosLike() const {
    ParamSet z = *this;
    z.SetZero();
    return z;
  }
  void SetZero() {
    for (Mat<R> &m : values_) m.setZero();
  }

  template <typename R2>
  ParamSet<R2> Cast() const {
    ParamSet<R2> out;
    for (size_t i = 0; i < size(); ++i)
      out.Add(names_[i], values_[i].rows(), values_[i].cols()) = values_[i].template cast<R2>();
    return out;
  }

  // Same names, order and shapes.
  bool SameLayout(const ParamSet &other) const {
    if (names_ != other.names_) return false;
    for (size_t i = 0; i < size(); ++i)
      if (values_[i].rows() != other.values_[i].rows() ||
          values_[i].cols() != other.values_[i].cols())
        return false;
    return true;
  }

 private:
  size_t Find(const std::string &name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw InvalidParameter("no parameter named '" + name + "'");
    return it->second;
  }

  std::vector<std::string> names_;
  std::vector<Mat<R>> values_;
  std::map<std::string, size_t> index_;
};

}  // namespace emgse

#endif  // EMGSE_MODEL_PARAM_SET_H_

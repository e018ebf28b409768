// model/lstm.cc

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

#include "model/lstm.h"

#include <string>

namespace emgse {

namespace {

template <typename R>
void CheckWeights(const LstmWeights<R> &w) {
  const Eigen::Index h = w.w_hh.cols();
  if (w.w_hh.rows() != 4 * h || w.w_ih.rows() != 4 * h || w.b_ih.rows() != 4 * h ||
      w.b_hh.rows() != 4 * h || w.b_ih.cols() != 1 || w.b_hh.cols() != 1)
    throw ShapeMismatch("LSTM weights inconsistent with hidden size " + std::to_string(h));
}

template <typename R>
R Sigmoid(R a) {
  return R(1) / (R(1) + std::exp(-a));
}

// Applies the gate nonlinearities in place on a 4H pre-activation column.
template <typename Col>
void ActivateGates(Col &&a, Eigen::Index h) {
  using R = typename std::decay_t<Col>::Scalar;
  for (Eigen::Index k = 0; k < 2 * h; ++k) a(k) = Sigmoid<R>(a(k));
  for (Eigen::Index k = 2 * h; k < 3 * h; ++k) a(k) = std::tanh(a(k));
  for (Eigen::Index k = 3 * h; k < 4 * h; ++k) a(k) = Sigmoid<R>(a(k));
}

}  // namespace

template <typename R>
std::pair<Vec<R>, Vec<R>> LstmCellForward(const LstmWeights<R> &w, const Vec<R> &x,
                                          const Vec<R> &h_prev, const Vec<R> &c_prev) {
  CheckWeights(w);
  const Eigen::Index h = w.Hidden();
  if (x.size() != w.Input() || h_prev.size() != h || c_prev.size() != h)
    throw ShapeMismatch("LSTM cell input sizes do not match the weights");
  Vec<R> a = w.w_ih * x + w.b_ih + w.w_hh * h_prev + w.b_hh;
  ActivateGates(a, h);
  Vec<R> c = a.segment(h, h).cwiseProduct(c_prev) + a.head(h).cwiseProduct(a.segment(2 * h, h));
  Vec<R> hn = a.segment(3 * h, h).cwiseProduct(c.array().tanh().matrix());
  return {hn, c};
}

template <typename R>
Mat<R> LstmForward(const LstmWeights<R> &w, const Mat<R> &x, bool reverse,
                   LstmCache<R> *cache) {
  CheckWeights(w);
  if (x.rows() != w.Input())
    throw ShapeMismatch("LSTM input has " + std::to_string(x.rows()) + " features, expected " +
                        std::to_string(w.Input()));
  const Eigen::Index h = w.Hidden(), steps = x.cols();
  cache->reverse = reverse;
  cache->x = x;
  cache->gates.noalias() = w.w_ih * x;
  cache->gates.colwise() += (w.b_ih + w.b_hh).col(0);
  cache->c.resize(h, steps);
  cache->tanh_c.resize(h, steps);
  cache->h.resize(h, steps);
  Vec<R> h_prev = Vec<R>::Zero(h), c_prev = Vec<R>::Zero(h);
  for (Eigen::Index s = 0; s < steps; ++s) {
    const Eigen::Index t = reverse ? steps - 1 - s : s;
    auto a = cache->gates.col(t);
    a.noalias() += w.w_hh * h_prev;
    ActivateGates(a, h);
    cache->c.col(t) = a.segment(h, h).cwiseProduct(c_prev) +
                      a.head(h).cwiseProduct(a.segment(2 * h, h));
    cache->tanh_c.col(t) = cache->c.col(t).array().tanh().matrix();
    cache->h.col(t) = a.segment(3 * h, h).cwiseProduct(cache->tanh_c.col(t));
    h_prev = cache->h.col(t);
    c_prev = cache->c.col(t);
  }
  return cache->h;
}

template <typename R>
Mat<R> LstmBackward(const LstmWeights<R> &w, const LstmCache<R> &cache, const Mat<R> &dh,
                    LstmGrads<R> grads) {
  const Eigen::Index h = w.Hidden(), steps = cache.h.cols();
  if (dh.rows() != h || dh.cols() != steps)
    throw ShapeMismatch("LSTM output gradient shape mismatch");
  Mat<R> da(4 * h, steps);
  Vec<R> dh_next = Vec<R>::Zero(h), dc_next = Vec<R>::Zero(h);
  // h_prev for each step, in time order of the recurrence.
  Mat<R> h_prev = Mat<R>::Zero(h, steps);
  for (Eigen::Index s = 0; s < steps; ++s) {
    const Eigen::Index t = cache.reverse ? steps - 1 - s : s;
    const Eigen::Index p = cache.reverse ? t + 1 : t - 1;
    if (s > 0) h_prev.col(t) = cache.h.col(p);
  }
  for (Eigen::Index s = steps - 1; s >= 0; --s) {
    const Eigen::Index t = cache.reverse ? steps - 1 - s : s;
    const Eigen::Index p = cache.reverse ? t + 1 : t - 1;
    const auto gi = cache.gates.col(t).segment(0, h).array();
    const auto gf = cache.gates.col(t).segment(h, h).array();
    const auto gg = cache.gates.col(t).segment(2 * h, h).array();
    const auto go = cache.gates.col(t).segment(3 * h, h).array();
    const auto tc = cache.tanh_c.col(t).array();
    Eigen::Array<R, Eigen::Dynamic, 1> dht = dh.col(t).array() + dh_next.array();
    Eigen::Array<R, Eigen::Dynamic, 1> dc = dht * go * (R(1) - tc * tc) + dc_next.array();
    Eigen::Array<R, Eigen::Dynamic, 1> c_prev =
        s > 0 ? Eigen::Array<R, Eigen::Dynamic, 1>(cache.c.col(p).array())
              : Eigen::Array<R, Eigen::Dynamic, 1>::Zero(h);
    da.col(t).segment(0, h) = (dc * gg * gi * (R(1) - gi)).matrix();
    da.col(t).segment(h, h) = (dc * c_prev * gf * (R(1) - gf)).matrix();
    da.col(t).segment(2 * h, h) = (dc * gi * (R(1) - gg * gg)).matrix();
    da.col(t).segment(3 * h, h) = (dht * tc * go * (R(1) - go)).matrix();
    dc_next = (dc * gf).matrix();
    dh_next.noalias() = w.w_hh.transpose() * da.col(t);
  }
  grads.w_ih.noalias() += da * cache.x.transpose();
  grads.w_hh.noalias() += da * h_prev.transpose();
  Vec<R> db = da.rowwise().sum();
  grads.b_ih += db;
  grads.b_hh += db;
  return w.w_ih.transpose() * da;
}

#define EMGSE_INSTANTIATE_LSTM(R)                                                          \
  template std::pair<Vec<R>, Vec<R>> LstmCellForward(const LstmWeights<R> &, const Vec<R> &, \
                                                     const Vec<R> &, const Vec<R> &);       \
  template Mat<R> LstmForward(const LstmWeights<R> &, const Mat<R> &, bool, LstmCache<R> *); \
  template Mat<R> LstmBackward(const LstmWeights<R> &, const LstmCache<R> &, const Mat<R> &, \
                               LstmGrads<R>);
EMGSE_INSTANTIATE_LSTM(float)
EMGSE_INSTANTIATE_LSTM(double)

}  // namespace emgse

// model/lstm.h

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

#ifndef EMGSE_MODEL_LSTM_H_
#define EMGSE_MODEL_LSTM_H_

#include <utility>

#include "model/param-set.h"

namespace emgse {

// Sequences are stored one column per time step (features x T).

/// Weights of one LSTM direction.  Gate blocks are stacked in the order
/// input, forget, cell, output: w_ih is 4H x D, w_hh is 4H x H, and both bias
/// vectors are 4H x 1.
template <typename R>
struct LstmWeights {
  const Mat<R> &w_ih;
  const Mat<R> &w_hh;
  const Mat<R> &b_ih;
  const Mat<R> &b_hh;

  Eigen::Index Hidden() const { return w_hh.cols(); }
  Eigen::Index Input() const { return w_ih.cols(); }
};

template <typename R>
struct LstmGrads {
  Mat<R> &w_ih;
  Mat<R> &w_hh;
  Mat<R> &b_ih;
  Mat<R> &b_hh;
};

/// One step:
///   i = sigmoid(W_ii x + b_ii + W_hi h + b_hi)
///   f = sigmoid(W_if x + b_if + W_hf h + b_hf)
///   g = tanh(W_ig x + b_ig + W_hg h + b_hg)
///   o = sigmoid(W_io x + b_io + W_ho h + b_ho)
///   c' = f * c + i * g,  h' = o * tanh(c')
/// Returns (h', c').  Throws ShapeMismatch on inconsistent sizes.
template <typename R>
std::pair<Vec<R>, Vec<R>> LstmCellForward(const LstmWeights<R> &w, const Vec<R> &x,
                                          const Vec<R> &h_prev, const Vec<R> &c_prev);

/// Activations of one direction over a sequence, kept for the backward pass.
template <typename R>
struct LstmCache {
  bool reverse = false;
  Mat<R> x;       // D x T
  Mat<R> gates;   // 4H x T, after the nonlinearities
  Mat<R> c;       // H x T
  Mat<R> tanh_c;  // H x T
  Mat<R> h;       // H x T
};

/// Runs one direction over x (D x T) from zero state.  With `reverse` the
/// recurrence runs from the last step to the first; output column t is still
/// the state at step t.
template <typename R>
Mat<R> LstmForward(const LstmWeights<R> &w, const Mat<R> &x, bool reverse,
                   LstmCache<R> *cache);

/// Backpropagation through time.  Accumulates into `grads` and returns the
/// gradient with respect to x.
template <typename R>
Mat<R> LstmBackward(const LstmWeights<R> &w, const LstmCache<R> &cache, const Mat<R> &dh,
                    LstmGrads<R> grads);

}  // namespace emgse

#endif  // EMGSE_MODEL_LSTM_H_

// model/network.h

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

#ifndef EMGSE_MODEL_NETWORK_H_
#define EMGSE_MODEL_NETWORK_H_

#include <string>
#include <vector>

#include "base/rng.h"
#include "model/lstm.h"
#include "model/param-set.h"

namespace emgse {

enum class Variant {
  kEmgse,  // EMG encoder + audio encoder
  kSeA,    // audio only: a second audio encoder takes the EMG encoder's slot
};

const char *VariantName(Variant v);
Variant ParseVariant(const std::string &name);

struct NetConfig {
  Variant variant = Variant::kEmgse;
  int emg_dim = 5425;
  int audio_dim = 257;
  int encoder_hidden = 200;
  int encoder_out = 100;
  int fusion_dim = 200;
  int lstm_hidden = 250;
  int lstm_layers = 2;
  int out_dim = 257;
  double dropout = 0.5;

  void Validate() const;
  int LatentDim() const { return fusion_dim; }
};

enum class Mode { kTrain, kEval };

/// Zero parameters with the layout of `config`.  Names:
///   emg_enc.{l1,l2}.{weight,bias}   (EMGSE only)
///   aux_enc.{l1,l2}.{weight,bias}   (SE(A) only)
///   audio_enc.{l1,l2}.{weight,bias}
///   fusion.{weight,bias}
///   blstm.l<k>.{fwd,bwd}.{w_ih,w_hh,b_ih,b_hh}
///   output.{weight,bias}
template <typename R>
ParamSet<R> MakeParams(const NetConfig &config);

/// Uniform in +-1/sqrt(fan_in) for every weight and bias, drawn in parameter
/// order from one stream seeded with `seed`.
void InitParams(ParamSet<double> *params, uint64_t seed);

/// Inverted-dropout masks of the two EMG encoder layers (values 0 or
/// 1/(1-p)), encoder_hidden x T and encoder_out x T.
template <typename R>
struct DropoutMasks {
  Mat<R> l1;
  Mat<R> l2;
};

template <typename R>
DropoutMasks<R> SampleDropoutMasks(const NetConfig &config, Eigen::Index frames, Rng *rng);

template <typename R>
struct ForwardCache {
  Mode mode = Mode::kEval;
  Mat<R> emg_in, audio_in;         // D x T
  Mat<R> e1, e2, a1, a2;           // post-ReLU (and post-dropout) encoder outputs
  DropoutMasks<R> masks;
  Mat<R> latent;                   // fusion_dim x T
  std::vector<LstmCache<R>> fwd, bwd;
  std::vector<Mat<R>> layer_out;   // 2H x T per BLSTM layer
  Mat<R> z;                        // out_dim x T
};

template <typename R>
struct NetOutput {
  Mat<R> z;       // T x out_dim
  Mat<R> latent;  // T x fusion_dim
};

/// Forward pass.  Inputs are time-major (T x D).  For SE(A) `x_emg` is not
/// read and may be empty.  In train mode the EMG encoder's dropout masks come
/// from `masks` when given, otherwise they are sampled from `rng`.  `cache`
/// may be null when no backward pass follows.
template <typename R>
NetOutput<R> Forward(const NetConfig &config, const ParamSet<R> &params, const Same<Mat<R>> &x_emg,
                     const Same<Mat<R>> &x_audio, Mode mode, Rng *rng,
                     const Same<DropoutMasks<R>> *masks, Same<ForwardCache<R>> *cache);

/// Accumulates parameter gradients for dL/dz (T x out_dim) into `grads`.
template <typename R>
void Backward(const NetConfig &config, const ParamSet<R> &params, const ForwardCache<R> &cache,
              const Same<Mat<R>> &dz, ParamSet<R> *grads);

/// Mean absolute error over all elements.  Throws ShapeMismatch.
template <typename R>
double L1Loss(const Mat<R> &pred, const Same<Mat<R>> &target);

/// Subgradient of L1Loss with sign(0) = 0.
template <typename R>
Mat<R> L1LossGrad(const Mat<R> &pred, const Same<Mat<R>> &target);

}  // namespace emgse

#endif  // EMGSE_MODEL_NETWORK_H_

// model/network.cc

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

#include "model/network.h"

#include <cmath>

namespace emgse {

const char *VariantName(Variant v) { return v == Variant::kEmgse ? "EMGSE" : "SE_A"; }

Variant ParseVariant(const std::string &name) {
  if (name == "EMGSE" || name == "emgse") return Variant::kEmgse;
  if (name == "SE_A" || name == "se_a" || name == "SE(A)") return Variant::kSeA;
  throw InvalidParameter("unknown model variant '" + name + "' (EMGSE or SE_A)");
}

void NetConfig::Validate() const {
  if ((variant == Variant::kEmgse && emg_dim < 1) || audio_dim < 1 || encoder_hidden < 1 ||
      encoder_out < 1 || fusion_dim < 1 || lstm_hidden < 1 || lstm_layers < 1 || out_dim < 1)
    throw InvalidParameter("network dimensions must be positive");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw InvalidParameter("dropout must be in [0, 1)");
}

namespace {

template <typename R>
void AddAffine(ParamSet<R> *p, const std::string &name, int in, int out) {
  p->Add(name + ".weight", out, in);
  p->Add(name + ".bias", out, 1);
}

template <typename R>
Mat<R> Affine(const ParamSet<R> &p, const std::string &name, const Mat<R> &x) {
  Mat<R> y = p[name + ".weight"] * x;
  y.colwise() += p[name + ".bias"].col(0);
  return y;
}

// Given dy for y = W x + b, accumulates dW, db and returns dx.
template <typename R>
Mat<R> AffineBackward(const ParamSet<R> &p, const std::string &name, const Mat<R> &x,
                      const Mat<R> &dy, ParamSet<R> *g, bool need_dx = true) {
  (*g)[name + ".weight"].noalias() += dy * x.transpose();
  (*g)[name + ".bias"] += dy.rowwise().sum();
  if (!need_dx) return Mat<R>();
  return p[name + ".weight"].transpose() * dy;
}

template <typename R>
Mat<R> Relu(const Mat<R> &x) {
  return x.cwiseMax(R(0));
}

// dy masked where the ReLU output was zero.
template <typename R>
Mat<R> ReluBackward(const Mat<R> &y, const Mat<R> &dy) {
  return (y.array() > R(0)).select(dy, R(0));
}

std::string LstmName(int layer, bool backward) {
  return "blstm.l" + std::to_string(layer) + (backward ? ".bwd" : ".fwd");
}

template <typename R>
LstmWeights<R> Weights(const ParamSet<R> &p, const std::string &n) {
  return {p[n + ".w_ih"], p[n + ".w_hh"], p[n + ".b_ih"], p[n + ".b_hh"]};
}

template <typename R>
LstmGrads<R> Grads(ParamSet<R> *g, const std::string &n) {
  return {(*g)[n + ".w_ih"], (*g)[n + ".w_hh"], (*g)[n + ".b_ih"], (*g)[n + ".b_hh"]};
}

const char *SideEncoder(Variant v) { return v == Variant::kEmgse ? "emg_enc" : "aux_enc"; }

}  // namespace

template <typename R>
ParamSet<R> MakeParams(const NetConfig &c) {
  c.Validate();
  ParamSet<R> p;
  const std::string side = SideEncoder(c.variant);
  AddAffine(&p, side + ".l1", c.variant == Variant::kEmgse ? c.emg_dim : c.audio_dim,
            c.encoder_hidden);
  AddAffine(&p, side + ".l2", c.encoder_hidden, c.encoder_out);
  AddAffine(&p, "audio_enc.l1", c.audio_dim, c.encoder_hidden);
  AddAffine(&p, "audio_enc.l2", c.encoder_hidden, c.encoder_out);
  AddAffine(&p, "fusion", 2 * c.encoder_out, c.fusion_dim);
  for (int l = 0; l < c.lstm_layers; ++l) {
    const int in = l == 0 ? c.fusion_dim : 2 * c.lstm_hidden;
    for (bool bwd : {false, true}) {
      const std::string n = LstmName(l, bwd);
      p.Add(n + ".w_ih", 4 * c.lstm_hidden, in);
      p.Add(n + ".w_hh", 4 * c.lstm_hidden, c.lstm_hidden);
      p.Add(n + ".b_ih", 4 * c.lstm_hidden, 1);
      p.Add(n + ".b_hh", 4 * c.lstm_hidden, 1);
    }
  }
  AddAffine(&p, "output", 2 * c.lstm_hidden, c.out_dim);
  return p;
}

void InitParams(ParamSet<double> *params, uint64_t seed) {
  Rng rng(seed);
  for (size_t i = 0; i < params->size(); ++i) {
    const std::string &name = params->Name(i);
    // Fan-in of a bias is that of its weight; LSTM biases use the hidden size
    // like their recurrent weight.
    Eigen::Index fan_in;
    const std::string stem = name.substr(0, name.rfind('.'));
    if (name.ends_with(".bias")) fan_in = (*params)[stem + ".weight"].cols();
    else if (name.ends_with(".b_ih") || name.ends_with(".b_hh") || name.ends_with(".w_hh"))
      fan_in = (*params)[stem + ".w_hh"].cols();
    else fan_in = params->At(i).cols();
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    Mat<double> &m = params->At(i);
    for (Eigen::Index k = 0; k < m.size(); ++k) m(k) = rng.Uniform(-bound, bound);
  }
}

template <typename R>
DropoutMasks<R> SampleDropoutMasks(const NetConfig &c, Eigen::Index frames, Rng *rng) {
  const double keep = 1.0 - c.dropout;
  const R scale = static_cast<R>(1.0 / keep);
  auto draw = [&](Eigen::Index rows) {
    Mat<R> m(rows, frames);
    for (Eigen::Index k = 0; k < m.size(); ++k) m(k) = rng->Uniform() < keep ? scale : R(0);
    return m;
  };
  DropoutMasks<R> masks;
  masks.l1 = draw(c.encoder_hidden);
  masks.l2 = draw(c.encoder_out);
  return masks;
}

template <typename R>
NetOutput<R> Forward(const NetConfig &c, const ParamSet<R> &p, const Same<Mat<R>> &x_emg,
                     const Same<Mat<R>> &x_audio, Mode mode, Rng *rng,
                     const Same<DropoutMasks<R>> *masks, Same<ForwardCache<R>> *cache) {
  ForwardCache<R> local;
  ForwardCache<R> &k = cache ? *cache : local;
  const Eigen::Index frames = x_audio.rows();
  if (frames < 1) throw InvalidParameter("empty input sequence");
  if (x_audio.cols() != c.audio_dim)
    throw ShapeMismatch("audio input has " + std::to_string(x_audio.cols()) +
                        " features, expected " + std::to_string(c.audio_dim));
  k.mode = mode;
  k.audio_in = x_audio.transpose();

  if (c.variant == Variant::kEmgse) {
    if (x_emg.rows() != frames)
      throw ShapeMismatch("EMG input has " + std::to_string(x_emg.rows()) +
                          " frames but audio has " + std::to_string(frames));
    if (x_emg.cols() != c.emg_dim)
      throw ShapeMismatch("EMG input has " + std::to_string(x_emg.cols()) +
                          " features, expected " + std::to_string(c.emg_dim));
    k.emg_in = x_emg.transpose();
    k.e1 = Relu<R>(Affine(p, "emg_enc.l1", k.emg_in));
    const bool drop = mode == Mode::kTrain && c.dropout > 0.0;
    if (drop) {
      if (masks) {
        if (masks->l1.rows() != c.encoder_hidden || masks->l1.cols() != frames ||
            masks->l2.rows() != c.encoder_out || masks->l2.cols() != frames)
          throw ShapeMismatch("dropout mask shape mismatch");
        k.masks = *masks;
      } else {
        k.masks = SampleDropoutMasks<R>(c, frames, rng);
      }
      k.e1.array() *= k.masks.l1.array();
    }
    k.e2 = Relu<R>(Affine(p, "emg_enc.l2", k.e1));
    if (drop) k.e2.array() *= k.masks.l2.array();
  } else {
    k.emg_in.resize(0, 0);
    k.e1 = Relu<R>(Affine(p, "aux_enc.l1", k.audio_in));
    k.e2 = Relu<R>(Affine(p, "aux_enc.l2", k.e1));
  }
  k.a1 = Relu<R>(Affine(p, "audio_enc.l1", k.audio_in));
  k.a2 = Relu<R>(Affine(p, "audio_enc.l2", k.a1));

  Mat<R> fused(2 * c.encoder_out, frames);
  fused << k.e2, k.a2;
  k.latent = Relu<R>(Affine(p, "fusion", fused));

  k.fwd.resize(c.lstm_layers);
  k.bwd.resize(c.lstm_layers);
  k.layer_out.resize(c.lstm_layers);
  const Mat<R> *in = &k.latent;
  for (int l = 0; l < c.lstm_layers; ++l) {
    Mat<R> hf = LstmForward(Weights(p, LstmName(l, false)), *in, false, &k.fwd[l]);
    Mat<R> hb = LstmForward(Weights(p, LstmName(l, true)), *in, true, &k.bwd[l]);
    k.layer_out[l].resize(2 * c.lstm_hidden, frames);
    k.layer_out[l] << hf, hb;
    in = &k.layer_out[l];
  }
  k.z = Relu<R>(Affine(p, "output", *in));
  return {k.z.transpose(), k.latent.transpose()};
}

template <typename R>
void Backward(const NetConfig &c, const ParamSet<R> &p, const ForwardCache<R> &k,
              const Same<Mat<R>> &dz, ParamSet<R> *g) {
  const Eigen::Index frames = k.z.cols();
  if (dz.rows() != frames || dz.cols() != c.out_dim)
    throw ShapeMismatch("output gradient shape mismatch");
  Mat<R> d = ReluBackward<R>(k.z, dz.transpose());
  d = AffineBackward(p, "output", k.layer_out.back(), d, g);
  for (int l = c.lstm_layers - 1; l >= 0; --l) {
    const Mat<R> dh_f = d.topRows(c.lstm_hidden);
    const Mat<R> dh_b = d.bottomRows(c.lstm_hidden);
    d = LstmBackward(Weights(p, LstmName(l, false)), k.fwd[l], dh_f, Grads(g, LstmName(l, false)));
    d += LstmBackward(Weights(p, LstmName(l, true)), k.bwd[l], dh_b, Grads(g, LstmName(l, true)));
  }
  d = ReluBackward<R>(k.latent, d);
  Mat<R> fused(2 * c.encoder_out, frames);
  fused << k.e2, k.a2;
  d = AffineBackward(p, "fusion", fused, d, g);

  Mat<R> da = ReluBackward<R>(k.a2, d.bottomRows(c.encoder_out));
  da = AffineBackward(p, "audio_enc.l2", k.a1, da, g);
  da = ReluBackward<R>(k.a1, da);
  AffineBackward(p, "audio_enc.l1", k.audio_in, da, g, false);

  const std::string side = SideEncoder(c.variant);
  const bool drop = c.variant == Variant::kEmgse && k.mode == Mode::kTrain && c.dropout > 0.0;
  // With inverted dropout e = relu(a) * m, so de/da = m where the ReLU is
  // active; a zero mask entry also zeroes e, which ReluBackward already covers.
  Mat<R> de = d.topRows(c.encoder_out);
  if (drop) de.array() *= k.masks.l2.array();
  de = ReluBackward<R>(k.e2, de);
  de = AffineBackward(p, side + ".l2", k.e1, de, g);
  if (drop) de.array() *= k.masks.l1.array();
  de = ReluBackward<R>(k.e1, de);
  AffineBackward(p, side + ".l1", c.variant == Variant::kEmgse ? k.emg_in : k.audio_in, de, g,
                 false);
}

template <typename R>
double L1Loss(const Mat<R> &pred, const Same<Mat<R>> &target) {
  if (pred.rows() != target.rows() || pred.cols() != target.cols())
    throw ShapeMismatch("L1 loss operands differ in shape");
  if (pred.size() == 0) throw InvalidParameter("L1 loss of empty matrices");
  return (pred - target).template cast<double>().cwiseAbs().sum() /
         static_cast<double>(pred.size());
}

template <typename R>
Mat<R> L1LossGrad(const Mat<R> &pred, const Same<Mat<R>> &target) {
  if (pred.rows() != target.rows() || pred.cols() != target.cols())
    throw ShapeMismatch("L1 loss operands differ in shape");
  const R scale = static_cast<R>(1.0 / static_cast<double>(pred.size()));
  return (pred - target).unaryExpr([scale](R v) {
    return v > R(0) ? scale : (v < R(0) ? -scale : R(0));
  });
}

#define EMGSE_INSTANTIATE_NETWORK(R)                                                        \
  template ParamSet<R> MakeParams<R>(const NetConfig &);                                    \
  template DropoutMasks<R> SampleDropoutMasks<R>(const NetConfig &, Eigen::Index, Rng *);   \
  template NetOutput<R> Forward(const NetConfig &, const ParamSet<R> &, const Mat<R> &,     \
                                const Mat<R> &, Mode, Rng *, const DropoutMasks<R> *,      \
                                ForwardCache<R> *);                                         \
  template void Backward(const NetConfig &, const ParamSet<R> &, const ForwardCache<R> &,   \
                         const Mat<R> &, ParamSet<R> *);                                    \
  template double L1Loss(const Mat<R> &, const Mat<R> &);                                   \
  template Mat<R> L1LossGrad(const Mat<R> &, const Mat<R> &);
EMGSE_INSTANTIATE_NETWORK(float)
EMGSE_INSTANTIATE_NETWORK(double)

}  // namespace emgse

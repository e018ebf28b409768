// model/inference.cc

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

#include "model/inference.h"

#include "feat/audio-features.h"

namespace emgse {

namespace {

Eigen::MatrixXd EmgInput(const Checkpoint &ckpt, const EmgRecording &emg, int frames) {
  Eigen::MatrixXd x = ExtractEmgFeatures(emg, ckpt.channels, &ckpt.emg_norm, ckpt.features).data;
  if (x.cols() != ckpt.net.emg_dim)
    throw ShapeMismatch("EMG recording gives " + std::to_string(x.cols()) +
                        " feature dimensions, model expects " + std::to_string(ckpt.net.emg_dim));
  if (x.rows() != frames)
    throw ShapeMismatch("EMG recording spans " + std::to_string(x.rows()) +
                        " frames but the audio spans " + std::to_string(frames));
  return x;
}

}  // namespace

ModelRun RunModel(const Checkpoint &ckpt, const Eigen::MatrixXd &emg,
                  const Eigen::MatrixXd &audio) {
  Eigen::MatrixXd emg_in = emg;
  if (ckpt.net.variant == Variant::kEmgse && emg_in.size() == 0)
    emg_in = Eigen::MatrixXd::Zero(audio.rows(), ckpt.net.emg_dim);
  NetOutput<double> out =
      Forward(ckpt.net, ckpt.params, emg_in, audio, Mode::kEval, nullptr, nullptr, nullptr);
  return {out.z, out.latent};
}

Waveform Enhance(const Checkpoint &ckpt, const Waveform &noisy, const EmgRecording *emg) {
  SpectralFeatures f = ExtractAudioFeatures(noisy, &ckpt.audio_norm, ckpt.features);
  Eigen::MatrixXd emg_in;
  if (ckpt.net.variant == Variant::kEmgse) {
    if (emg == nullptr)
      throw MissingModality("EMGSE model needs an EMG recording for enhancement");
    emg_in = EmgInput(ckpt, *emg, f.frame_clock.num_frames);
  }
  ModelRun run = RunModel(ckpt, emg_in, f.log_mag);
  return ReconstructWaveform(run.z, f.phase, ckpt.audio_norm, f.frame_clock, ckpt.features);
}

LatentExport ExportLatents(const Checkpoint &ckpt, const Waveform &clean, const Waveform &noisy,
                           const EmgRecording &emg) {
  if (ckpt.net.variant != Variant::kEmgse)
    throw InvalidParameter("latent export needs an EMGSE checkpoint");
  if (clean.size() != noisy.size())
    throw ShapeMismatch("clean and noisy waveforms differ in length");
  const Eigen::MatrixXd a_clean = ExtractAudioFeatures(clean, &ckpt.audio_norm, ckpt.features).log_mag;
  const Eigen::MatrixXd a_noisy = ExtractAudioFeatures(noisy, &ckpt.audio_norm, ckpt.features).log_mag;
  const Eigen::MatrixXd e = EmgInput(ckpt, emg, static_cast<int>(a_noisy.rows()));
  LatentExport out;
  out.clean_only = RunModel(ckpt, Eigen::MatrixXd(), a_clean).latent;
  out.noisy_only = RunModel(ckpt, Eigen::MatrixXd(), a_noisy).latent;
  out.noisy_plus_emg = RunModel(ckpt, e, a_noisy).latent;
  out.diff_noisy_clean = (out.noisy_only - out.clean_only).cwiseAbs();
  out.diff_emg_clean = (out.noisy_plus_emg - out.clean_only).cwiseAbs();
  out.diff_emg_noisy = (out.noisy_plus_emg - out.noisy_only).cwiseAbs();
  return out;
}

}  // namespace emgse

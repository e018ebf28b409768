// model/inference.h

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

#ifndef EMGSE_MODEL_INFERENCE_H_
#define EMGSE_MODEL_INFERENCE_H_

#include "dsp/signal-dsp.h"
#include "feat/emg-features.h"
#include "model/checkpoint.h"

namespace emgse {

/// Feature extraction with the stored normalizers, an eval-mode forward pass
/// and noisy-phase reconstruction.  `emg` is required for EMGSE checkpoints
/// (MissingModality otherwise) and ignored for SE(A).  The output has the
/// length of `noisy`.
Waveform Enhance(const Checkpoint &ckpt, const Waveform &noisy, const EmgRecording *emg);

/// Normalized network output (frames x bins) and fusion latent of one input.
struct ModelRun {
  Eigen::MatrixXd z;
  Eigen::MatrixXd latent;
};

/// Eval-mode run on already normalized features.  For EMGSE an empty `emg`
/// matrix means the zero EMG input.
ModelRun RunModel(const Checkpoint &ckpt, const Eigen::MatrixXd &emg,
                  const Eigen::MatrixXd &audio);

/// Fusion-layer latents of one utterance under three input conditions and
/// their pairwise absolute differences.  clean_only and noisy_only feed a
/// zero EMG vector to an EMGSE model.
struct LatentExport {
  Eigen::MatrixXd clean_only;
  Eigen::MatrixXd noisy_only;
  Eigen::MatrixXd noisy_plus_emg;
  Eigen::MatrixXd diff_noisy_clean;      // |noisy_only - clean_only|
  Eigen::MatrixXd diff_emg_clean;        // |noisy_plus_emg - clean_only|
  Eigen::MatrixXd diff_emg_noisy;        // |noisy_plus_emg - noisy_only|
};

LatentExport ExportLatents(const Checkpoint &ckpt, const Waveform &clean, const Waveform &noisy,
                           const EmgRecording &emg);

}  // namespace emgse

#endif  // EMGSE_MODEL_INFERENCE_H_

// data/synth-corpus.h

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

#ifndef EMGSE_DATA_SYNTH_CORPUS_H_
#define EMGSE_DATA_SYNTH_CORPUS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "base/rng.h"
#include "dsp/signal-dsp.h"
#include "feat/emg-features.h"
#include "io/manifest.h"

namespace emgse {

// Desk-scale stand-in for a recorded audio + facial EMG corpus.
struct SynthConfig {
  int num_speakers = 4;
  int utterances_per_speaker = 40;
  double min_duration_sec = 1.25;
  double max_duration_sec = 2.0;
  // Per speaker, in utterance order.
  int split_train = 30;
  int split_val = 4;
  int split_test = 6;
  int emg_channels = 35;
  int cheek_channels = 28;
  int num_train_noises = 16;
  double noise_duration_sec = 6.0;
};

struct SpeakerProfile {
  double f0_hz = 120.0;
  double formant_scale = 1.0;
  double breathiness = 0.05;
  // Per EMG channel.
  std::vector<double> emg_gain;
  std::vector<double> emg_lead_sec;
  std::vector<double> envelope_weight;
  std::vector<double> derivative_weight;
  std::vector<double> slow_weight;
  std::vector<double> sensor_noise;
  std::vector<std::string> channel_ids;
};

SpeakerProfile MakeSpeaker(Rng *rng, int emg_channels = 35, int cheek_channels = 28);

struct SynthUtterance {
  Waveform audio;     // 16 kHz
  EmgRecording emg;   // 2048 Hz, same duration
};

/// Harmonic voiced source with a pitch contour and vowel-dependent formants,
/// gated by a syllabic envelope, plus fricative noise bursts.  The EMG
/// channels are band-limited noise whose envelope mixes the (slightly
/// leading) articulation envelope and its derivative, a slow low-band
/// potential following the same envelope, and sensor noise.
SynthUtterance SynthesizeUtterance(const SpeakerProfile &speaker, double duration_sec,
                                   Rng *rng);

/// Noise type names of the training bank (nonspeech families) and the test
/// bank (white, pink, car, engine, street, babble).  The two never overlap.
std::vector<std::string> TrainNoiseTypes(int count);
std::vector<std::string> TestNoiseTypes();

Waveform SynthesizeNoise(const std::string &type, double duration_sec, Rng *rng);

/// Writes audio/<id>.wav, emg/<id>.emgc, noise/train/*.wav, noise/test/*.wav
/// and manifest.tsv under `out_dir`.  Output bytes depend only on the config
/// and seed, not on `jobs`.
std::vector<ManifestRow> SynthCorpus(const SynthConfig &config, uint64_t seed,
                                     const std::string &out_dir, int jobs = 1);

}  // namespace emgse

#endif  // EMGSE_DATA_SYNTH_CORPUS_H_

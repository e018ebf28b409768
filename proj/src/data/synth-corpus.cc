// data/synth-corpus.cc

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

#include "data/synth-corpus.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include <unsupported/Eigen/FFT>

#include "base/emgse-common.h"
#include "base/parallel.h"
#include "data/mixing.h"
#include "io/emg-container.h"
#include "io/wav-io.h"

namespace emgse {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kAudioRate = 16000;
constexpr int kEmgRate = 2048;
// Durations are snapped to this grid so both rates hold whole samples.
constexpr int kDurationGrid = 64;

// F1..F3 (Hz) of five vowels.
constexpr double kVowels[5][3] = {
    {730, 1090, 2440}, {270, 2290, 3010}, {300, 870, 2240},
    {530, 1840, 2480}, {570, 840, 2410}};
constexpr double kFormantGain[3] = {1.0, 0.5, 0.25};
constexpr double kFormantWidth[3] = {90, 110, 160};

struct Syllable {
  double start = 0, dur = 0, amp = 0;
  int vowel = 0;
  double f0_offset = 0;
  bool fricative = false;
  double fric_start = 0, fric_dur = 0, fric_amp = 0;
};

double Bump(double t, double start, double dur) {
  if (t <= start || t >= start + dur) return 0.0;
  double s = std::sin(kPi * (t - start) / dur);
  return s * s;
}

struct Articulation {
  std::vector<Syllable> syllables;

  double Voiced(double t) const {
    for (const Syllable &s : syllables)
      if (t > s.start && t < s.start + s.dur) return s.amp * Bump(t, s.start, s.dur);
    return 0.0;
  }
  double Fricative(double t) const {
    double v = 0.0;
    for (const Syllable &s : syllables)
      if (s.fricative) v += s.fric_amp * Bump(t, s.fric_start, s.fric_dur);
    return v;
  }
  double Envelope(double t) const { return Voiced(t) + Fricative(t); }
  const Syllable *At(double t) const {
    for (const Syllable &s : syllables)
      if (t >= s.start && t < s.start + s.dur) return &s;
    return nullptr;
  }
};

Articulation PlanArticulation(double duration, Rng *rng) {
  Articulation a;
  double t = rng->Uniform(0.08, 0.2);
  while (true) {
    Syllable s;
    s.dur = rng->Uniform(0.12, 0.30);
    if (t + s.dur > duration - 0.1) break;
    s.start = t;
    s.amp = rng->Uniform(0.5, 1.0);
    s.vowel = static_cast<int>(rng->Below(5));
    s.f0_offset = rng->Uniform(-0.05, 0.05);
    s.fricative = rng->Uniform() < 0.35;
    if (s.fricative) {
      s.fric_dur = rng->Uniform(0.04, 0.09);
      s.fric_start = std::max(0.0, s.start - 0.6 * s.fric_dur);
      s.fric_amp = rng->Uniform(0.3, 0.6);
    }
    a.syllables.push_back(s);
    t += s.dur + (rng->Uniform() < 0.2 ? rng->Uniform(0.15, 0.35) : rng->Uniform(0.0, 0.08));
  }
  return a;
}

std::vector<double> WhiteNoise(size_t n, Rng *rng) {
  std::vector<double> x(n);
  for (double &v : x) v = rng->Normal();
  return x;
}

void ScaleToRms(std::vector<double> *x, double target) {
  double r = Rms(*x);
  if (r > 0) for (double &v : *x) v *= target / r;
}

// Multiplies the spectrum of `x` by gain(frequency_hz).
template <typename Gain>
std::vector<double> ShapeSpectrum(const std::vector<double> &x, int fs, Gain gain) {
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spec;
  fft.fwd(spec, x);
  const size_t n = x.size();
  for (size_t k = 0; k < n; ++k) {
    size_t kk = k <= n / 2 ? k : n - k;
    spec[k] *= gain(static_cast<double>(kk) * fs / static_cast<double>(n));
  }
  std::vector<std::complex<double>> time;
  fft.inv(time, spec);
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i) out[i] = time[i].real();
  return out;
}

std::vector<double> ColoredNoise(size_t n, double slope_db_per_octave, Rng *rng) {
  const double exponent = slope_db_per_octave / (20.0 * std::log10(2.0));
  return ShapeSpectrum(WhiteNoise(n, rng), kAudioRate, [&](double f) {
    return std::pow(std::max(f, 20.0) / 1000.0, exponent);
  });
}

std::vector<double> Filtered(const std::vector<double> &x, int order, double fc, int fs,
                             FilterKind kind) {
  return FilterApply(DesignButterworth(order, fc, fs, kind), x);
}

int DurationUnits(double duration_sec) {
  return std::max(1, static_cast<int>(std::lround(duration_sec * kDurationGrid)));
}

}  // namespace

SpeakerProfile MakeSpeaker(Rng *rng, int emg_channels, int cheek_channels) {
  SpeakerProfile p;
  p.f0_hz = rng->Uniform(95.0, 220.0);
  p.formant_scale = rng->Uniform(0.88, 1.12);
  p.breathiness = rng->Uniform(0.02, 0.08);
  for (int c = 0; c < emg_channels; ++c) {
    const bool cheek = c < cheek_channels;
    char label[32];
    std::snprintf(label, sizeof(label), "%s_%02d", cheek ? "cheek" : "chin",
                  cheek ? c + 1 : c - cheek_channels + 1);
    p.channel_ids.push_back(label);
    p.emg_gain.push_back(rng->Uniform(15.0, 60.0));
    p.emg_lead_sec.push_back(rng->Uniform(0.0, 0.040));
    p.envelope_weight.push_back(cheek ? rng->Uniform(0.6, 1.0) : rng->Uniform(0.4, 0.8));
    p.derivative_weight.push_back(rng->Uniform(0.0, 0.3));
    p.slow_weight.push_back(rng->Uniform(0.2, 0.6));
    p.sensor_noise.push_back(rng->Uniform(1.0, 3.0));
  }
  return p;
}

SynthUtterance SynthesizeUtterance(const SpeakerProfile &speaker, double duration_sec,
                                   Rng *rng) {
  const int units = DurationUnits(duration_sec);
  const double duration = static_cast<double>(units) / kDurationGrid;
  const size_t n_audio = static_cast<size_t>(units) * (kAudioRate / kDurationGrid);
  const size_t n_emg = static_cast<size_t>(units) * (kEmgRate / kDurationGrid);
  const Articulation art = PlanArticulation(duration, rng);

  // Audio.
  SynthUtterance u;
  u.audio.sample_rate_hz = kAudioRate;
  u.audio.samples.assign(n_audio, 0.0);
  const double vibrato_phase = rng->Uniform(0.0, 2 * kPi);
  std::vector<double> breath = WhiteNoise(n_audio, rng);
  std::vector<double> fric = Filtered(WhiteNoise(n_audio, rng), 4, 3000.0, kAudioRate,
                                      FilterKind::kHighpass);
  std::vector<double> harmonic_amp;
  double phase = 0.0;
  const int block = 32;
  for (size_t i0 = 0; i0 < n_audio; i0 += block) {
    const double t0 = static_cast<double>(i0) / kAudioRate;
    const Syllable *syl = art.At(t0);
    const double f0_block =
        speaker.f0_hz * (1.0 + 0.08 * std::sin(2 * kPi * 0.6 * t0 + vibrato_phase) -
                         0.12 * t0 / duration + (syl ? syl->f0_offset : 0.0));
    const int num_harmonics = static_cast<int>(7500.0 / f0_block);
    harmonic_amp.assign(num_harmonics, 0.0);
    const int vowel = syl ? syl->vowel : 0;
    for (int k = 1; k <= num_harmonics; ++k) {
      double f = k * f0_block, a = 0.0;
      for (int j = 0; j < 3; ++j) {
        double d = (f - kVowels[vowel][j] * speaker.formant_scale) / kFormantWidth[j];
        a += kFormantGain[j] / (1.0 + d * d);
      }
      harmonic_amp[k - 1] = (a + 0.01) / std::sqrt(static_cast<double>(k));
    }
    for (size_t i = i0; i < std::min(n_audio, i0 + block); ++i) {
      const double t = static_cast<double>(i) / kAudioRate;
      phase += 2 * kPi * f0_block / kAudioRate;
      if (phase > 2 * kPi) phase -= 2 * kPi;
      const double v = art.Voiced(t);
      double s = 0.0;
      if (v > 0.0) {
        for (int k = 1; k <= num_harmonics; ++k) s += harmonic_amp[k - 1] * std::sin(k * phase);
        s = v * (s + speaker.breathiness * breath[i]);
      }
      u.audio.samples[i] = s + 0.5 * art.Fricative(t) * fric[i];
    }
  }
  ScaleToRms(&u.audio.samples, rng->Uniform(0.05, 0.12));

  // EMG.
  const int channels = static_cast<int>(speaker.emg_gain.size());
  u.emg.sample_rate_hz = kEmgRate;
  u.emg.channel_ids = speaker.channel_ids;
  u.emg.channels.resize(channels, static_cast<Eigen::Index>(n_emg));
  const IirFilter carrier_hp = DesignButterworth(2, 20.0, kEmgRate, FilterKind::kHighpass);
  const IirFilter carrier_lp = DesignButterworth(4, 450.0, kEmgRate, FilterKind::kLowpass);
  const double h = 0.004;
  for (int c = 0; c < channels; ++c) {
    std::vector<double> carrier = FilterApply(carrier_lp, FilterApply(carrier_hp, WhiteNoise(n_emg, rng)));
    ScaleToRms(&carrier, 1.0);
    const double lead = speaker.emg_lead_sec[c];
    for (size_t i = 0; i < n_emg; ++i) {
      const double t = static_cast<double>(i) / kEmgRate + lead;
      const double env = art.Envelope(t);
      const double deriv =
          std::min(1.5, 0.05 * std::abs(art.Envelope(t + h) - art.Envelope(t - h)) / (2 * h));
      const double drive = speaker.envelope_weight[c] * env + speaker.derivative_weight[c] * deriv;
      u.emg.channels(c, static_cast<Eigen::Index>(i)) =
          speaker.emg_gain[c] * ((0.05 + drive) * carrier[i] + speaker.slow_weight[c] * env) +
          speaker.sensor_noise[c] * rng->Normal();
    }
  }
  return u;
}

std::vector<std::string> TrainNoiseTypes(int count) {
  static const char *kFamilies[] = {"colored", "bandpass", "modulated", "tonal",
                                    "clicks",  "hum",      "sweep",     "crackle"};
  std::vector<std::string> names;
  for (int i = 0; i < count; ++i) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "tr%02d_%s", i, kFamilies[i % 8]);
    names.push_back(buf);
  }
  return names;
}

std::vector<std::string> TestNoiseTypes() {
  return {"te_babble", "te_car", "te_engine", "te_pink", "te_street", "te_white"};
}

Waveform SynthesizeNoise(const std::string &type, double duration_sec, Rng *rng) {
  const size_t n = static_cast<size_t>(DurationUnits(duration_sec)) * (kAudioRate / kDurationGrid);
  const std::string family = type.substr(type.find('_') + 1);
  auto time = [](size_t i) { return static_cast<double>(i) / kAudioRate; };
  std::vector<double> x(n, 0.0);

  if (family == "white") {
    x = WhiteNoise(n, rng);
  } else if (family == "pink") {
    x = ColoredNoise(n, -3.0, rng);
  } else if (family == "car") {
    x = ColoredNoise(n, -6.0, rng);
    x = Filtered(x, 2, 300.0, kAudioRate, FilterKind::kLowpass);
    const double rate = rng->Uniform(0.2, 0.5);
    for (size_t i = 0; i < n; ++i) x[i] *= 1.0 + 0.3 * std::sin(2 * kPi * rate * time(i));
  } else if (family == "engine") {
    const double f0 = rng->Uniform(25.0, 40.0);
    double phase = 0.0;
    std::vector<double> floor_noise = ColoredNoise(n, -3.0, rng);
    for (size_t i = 0; i < n; ++i) {
      const double f = f0 * (1.0 + 0.2 * std::sin(2 * kPi * 0.15 * time(i)));
      phase += 2 * kPi * f / kAudioRate;
      double s = 0.0;
      for (int k = 1; k <= 30; ++k) s += std::sin(k * phase + 0.3 * k) / std::pow(k, 0.7);
      x[i] = s + 0.5 * floor_noise[i];
    }
  } else if (family == "street") {
    x = ColoredNoise(n, -3.0, rng);
    const int horns = 1 + static_cast<int>(rng->Below(3));
    for (int hn = 0; hn < horns; ++hn) {
      const double start = rng->Uniform(0.0, time(n) - 0.6), len = rng->Uniform(0.2, 0.6);
      for (size_t i = 0; i < n; ++i) {
        double e = Bump(time(i), start, len);
        if (e > 0) x[i] += 3.0 * e * (std::sin(2 * kPi * 400 * time(i)) + std::sin(2 * kPi * 500 * time(i)));
      }
    }
    const double pass = rng->Uniform(0.0, time(n));
    for (size_t i = 0; i < n; ++i) x[i] *= 1.0 + 1.5 * std::exp(-std::pow((time(i) - pass) / 0.8, 2));
  } else if (family == "babble") {
    for (int talker = 0; talker < 5; ++talker) {
      SpeakerProfile sp = MakeSpeaker(rng, 0, 0);
      SynthUtterance w = SynthesizeUtterance(sp, duration_sec, rng);
      for (size_t i = 0; i < n; ++i) x[i] += w.audio.samples[i];
    }
  } else if (family == "colored") {
    double slope;
    switch (rng->Below(3)) {
      case 0: slope = rng->Uniform(-9.0, -4.5); break;
      case 1: slope = rng->Uniform(-2.0, -0.8); break;
      default: slope = rng->Uniform(0.8, 3.0); break;
    }
    x = ColoredNoise(n, slope, rng);
  } else if (family == "bandpass") {
    const double center = std::log2(rng->Uniform(300.0, 5000.0));
    const double width = rng->Uniform(0.3, 1.5);
    x = ShapeSpectrum(WhiteNoise(n, rng), kAudioRate, [&](double f) {
      double d = (std::log2(std::max(f, 1.0)) - center) / width;
      return std::exp(-0.5 * d * d);
    });
  } else if (family == "modulated") {
    x = ColoredNoise(n, rng->Uniform(-6.0, 0.0), rng);
    const double rate = rng->Uniform(0.5, 8.0), depth = rng->Uniform(0.4, 0.9);
    for (size_t i = 0; i < n; ++i) x[i] *= 1.0 + depth * std::sin(2 * kPi * rate * time(i));
  } else if (family == "tonal") {
    const int tones = 3 + static_cast<int>(rng->Below(6));
    std::vector<double> floor_noise = WhiteNoise(n, rng);
    for (int k = 0; k < tones; ++k) {
      const double f = rng->Uniform(150.0, 4000.0), ph = rng->Uniform(0.0, 2 * kPi);
      const double vib = rng->Uniform(0.0, 0.01);
      for (size_t i = 0; i < n; ++i)
        x[i] += std::sin(2 * kPi * f * time(i) + ph + vib * f / 5.0 * std::sin(2 * kPi * 5.0 * time(i)));
    }
    for (size_t i = 0; i < n; ++i) x[i] += 0.05 * floor_noise[i];
  } else if (family == "clicks") {
    const double rate = rng->Uniform(3.0, 20.0);
    x = WhiteNoise(n, rng);
    for (double &v : x) v *= 0.1;
    double t = 0.0;
    while (true) {
      t += -std::log(1.0 - rng->Uniform()) / rate;
      if (t >= time(n)) break;
      const double f = rng->Uniform(500.0, 4000.0), decay = rng->Uniform(0.005, 0.02);
      const double amp = rng->Uniform(0.5, 2.0);
      const size_t i0 = static_cast<size_t>(t * kAudioRate);
      for (size_t i = i0; i < std::min(n, i0 + static_cast<size_t>(6 * decay * kAudioRate)); ++i) {
        double dt = time(i - i0);
        x[i] += amp * std::exp(-dt / decay) * std::sin(2 * kPi * f * dt);
      }
    }
  } else if (family == "hum") {
    const double f0 = rng->Uniform(48.0, 62.0);
    std::vector<double> floor_noise = WhiteNoise(n, rng);
    for (size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (int k = 1; k <= 15; ++k) s += std::sin(2 * kPi * k * f0 * time(i) + k) / k;
      x[i] = s + 0.05 * floor_noise[i];
    }
  } else if (family == "sweep") {
    const double period = rng->Uniform(0.3, 1.5);
    const double f1 = rng->Uniform(200.0, 800.0), f2 = rng->Uniform(1500.0, 6000.0);
    std::vector<double> floor_noise = WhiteNoise(n, rng);
    double phase = 0.0;
    for (size_t i = 0; i < n; ++i) {
      double frac = std::fmod(time(i), period) / period;
      phase += 2 * kPi * (f1 + (f2 - f1) * frac) / kAudioRate;
      x[i] = std::sin(phase) + 0.05 * floor_noise[i];
    }
  } else if (family == "crackle") {
    x = Filtered(WhiteNoise(n, rng), 4, 2000.0, kAudioRate, FilterKind::kHighpass);
    const double rate = rng->Uniform(5.0, 30.0);
    std::vector<double> gate(n, 0.3);
    double t = 0.0;
    while (true) {
      t += -std::log(1.0 - rng->Uniform()) / rate;
      if (t >= time(n)) break;
      const double len = rng->Uniform(0.005, 0.03);
      for (size_t i = static_cast<size_t>(t * kAudioRate);
           i < std::min(n, static_cast<size_t>((t + len) * kAudioRate)); ++i)
        gate[i] += 2.0;
    }
    for (size_t i = 0; i < n; ++i) x[i] *= gate[i];
  } else {
    throw InvalidParameter("unknown synthetic noise type '" + type + "'");
  }
  ScaleToRms(&x, 0.1);
  Waveform w;
  w.sample_rate_hz = kAudioRate;
  w.samples = std::move(x);
  return w;
}

std::vector<ManifestRow> SynthCorpus(const SynthConfig &config, uint64_t seed,
                                     const std::string &out_dir, int jobs) {
  namespace fs = std::filesystem;
  if (config.split_train + config.split_val + config.split_test != config.utterances_per_speaker)
    throw InvalidParameter("synthetic split sizes must add up to utterances_per_speaker");
  if (config.min_duration_sec < 0.5 || config.max_duration_sec < config.min_duration_sec)
    throw InvalidParameter("synthetic durations must satisfy 0.5 <= min <= max");
  if (config.cheek_channels > config.emg_channels)
    throw InvalidParameter("more cheek channels than EMG channels");
  fs::create_directories(fs::path(out_dir) / "audio");
  fs::create_directories(fs::path(out_dir) / "emg");
  fs::create_directories(fs::path(out_dir) / "noise" / "train");
  fs::create_directories(fs::path(out_dir) / "noise" / "test");

  std::vector<SpeakerProfile> speakers;
  for (int s = 0; s < config.num_speakers; ++s) {
    Rng rng(DeriveSeed(seed, 1000000 + s));
    speakers.push_back(MakeSpeaker(&rng, config.emg_channels, config.cheek_channels));
  }

  std::vector<ManifestRow> rows;
  for (int s = 0; s < config.num_speakers; ++s)
    for (int u = 0; u < config.utterances_per_speaker; ++u) {
      char id[32];
      std::snprintf(id, sizeof(id), "spk%02d_u%03d", s + 1, u + 1);
      ManifestRow row;
      row.id = id;
      row.split = u < config.split_train ? Split::kTrain
                  : u < config.split_train + config.split_val ? Split::kVal
                                                              : Split::kTest;
      row.audio_path = "audio/" + row.id + ".wav";
      row.emg_path = "emg/" + row.id + ".emgc";
      rows.push_back(row);
    }

  ParallelFor(rows.size(), jobs, [&](size_t i) {
    Rng rng(DeriveSeed(seed, i));
    const int speaker = static_cast<int>(i) / config.utterances_per_speaker;
    const double duration = rng.Uniform(config.min_duration_sec, config.max_duration_sec);
    SynthUtterance u = SynthesizeUtterance(speakers[speaker], duration, &rng);
    WavWrite((fs::path(out_dir) / rows[i].audio_path).string(), u.audio);
    EmgWrite((fs::path(out_dir) / rows[i].emg_path).string(), u.emg);
  });

  std::vector<std::pair<std::string, std::string>> noises;
  for (const std::string &t : TrainNoiseTypes(config.num_train_noises))
    noises.emplace_back("train", t);
  for (const std::string &t : TestNoiseTypes()) noises.emplace_back("test", t);
  ParallelFor(noises.size(), jobs, [&](size_t i) {
    Rng rng(DeriveSeed(seed, 2000000 + i));
    Waveform w = SynthesizeNoise(noises[i].second, config.noise_duration_sec, &rng);
    WavWrite((fs::path(out_dir) / "noise" / noises[i].first / (noises[i].second + ".wav")).string(), w);
  });

  WriteManifest((fs::path(out_dir) / "manifest.tsv").string(), rows);
  return ReadManifest((fs::path(out_dir) / "manifest.tsv").string());
}

}  // namespace emgse

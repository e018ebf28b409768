// dsp/signal-dsp.h

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

#ifndef EMGSE_DSP_SIGNAL_DSP_H_
#define EMGSE_DSP_SIGNAL_DSP_H_

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace emgse {

/// Mono sampled signal.  Samples are dimensionless, nominally in [-1, 1].
struct Waveform {
  std::vector<double> samples;
  int sample_rate_hz = 16000;

  size_t size() const { return samples.size(); }
  double DurationSec() const {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }
};

// Throws InvalidParameter on a non-positive rate or non-finite samples.
void ValidateWaveform(const Waveform &x);

enum class FilterKind { kLowpass, kHighpass };

/// Digital IIR filter in transfer-function form, a[0] == 1.
struct IirFilter {
  std::vector<double> b;
  std::vector<double> a;
  FilterKind kind = FilterKind::kLowpass;
  double cutoff_hz = 0.0;
  double design_fs_hz = 0.0;

  /// Complex frequency response at `freq_hz`.
  std::complex<double> Response(double freq_hz) const;
};

/// Butterworth filter of the given order, obtained from the analog prototype
/// by the bilinear transform with the cutoff pre-warped, so the magnitude at
/// `cutoff_hz` is exactly 1/sqrt(2).  Throws InvalidParameter unless
/// 0 < cutoff_hz < fs_hz / 2 and order >= 1.
IirFilter DesignButterworth(int order, double cutoff_hz, double fs_hz,
                            FilterKind kind);

/// Causal direct-form application with zero initial conditions.
std::vector<double> FilterApply(const IirFilter &filter,
                                std::span<const double> x);

/// Symmetric Blackman window, n >= 2.
std::vector<double> BlackmanWindow(int n);

/// Frame timing shared by the EMG and audio front ends.  Everything is defined
/// in the time domain so two clocks over the same duration agree on
/// num_frames even when the window is not an integer number of samples.
struct FrameClock {
  double window_sec = 0.032;
  double hop_sec = 0.008;
  int sample_rate_hz = 16000;
  int num_frames = 0;
  // Length of the signal the clock was made for.
  int64_t num_samples = 0;

  /// round(n * hop_sec * fs)
  int64_t FrameStart(int n) const;
  /// round(window_sec * fs)
  int WindowLength() const;
};

/// Throws InvalidParameter when the signal is shorter than one window.
FrameClock MakeFrameClock(int64_t duration_samples, int fs_hz,
                          double window_sec = 0.032, double hop_sec = 0.008);

/// frames x (fft_size / 2 + 1) complex spectrogram.
struct ComplexSpectrogram {
  Eigen::MatrixXcd data;
  FrameClock frame_clock;
  int fft_size = 512;

  int NumFrames() const { return static_cast<int>(data.rows()); }
  int NumBins() const { return static_cast<int>(data.cols()); }
  Eigen::MatrixXd Magnitude() const { return data.cwiseAbs(); }
  Eigen::MatrixXd Phase() const;
};

/// Blackman-windowed STFT of a waveform whose rate matches `fs_hz`.  The
/// window spans `fft_size` samples and must equal the clock's window length.
ComplexSpectrogram Stft(const Waveform &x, int fs_hz = 16000,
                        double window_sec = 0.032, double hop_sec = 0.008,
                        int fft_size = 512);

/// Weighted overlap-add with the same Blackman window and window-squared
/// normalization.  Samples whose window-squared sum falls below 1e-10 are set
/// to zero.  Output length is the clock's num_samples.
Waveform Istft(const ComplexSpectrogram &spec);

/// Full complex FFT of a real sequence (size must be the sequence length).
std::vector<std::complex<double>> RealFft(std::span<const double> x);

/// Band-limited (Kaiser-windowed sinc) rate conversion.
Waveform Resample(const Waveform &x, int to_hz);

}  // namespace emgse

#endif  // EMGSE_DSP_SIGNAL_DSP_H_

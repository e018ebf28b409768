// dsp/signal-dsp.cc

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

#include "dsp/signal-dsp.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <unsupported/Eigen/FFT>

#include "base/emgse-common.h"

namespace emgse {

namespace {

using Complex = std::complex<double>;

// Coefficients of prod_k (1 - r_k z^-1), lowest power first.
std::vector<Complex> PolyFromRoots(const std::vector<Complex> &roots) {
  std::vector<Complex> p(1, Complex(1.0, 0.0));
  for (const Complex &r : roots) {
    std::vector<Complex> next(p.size() + 1, Complex(0.0, 0.0));
    for (size_t i = 0; i < p.size(); ++i) {
      next[i] += p[i];
      next[i + 1] -= r * p[i];
    }
    p.swap(next);
  }
  return p;
}

std::vector<double> RealPart(const std::vector<Complex> &p) {
  std::vector<double> out(p.size());
  for (size_t i = 0; i < p.size(); ++i) out[i] = p[i].real();
  return out;
}

// Evaluates sum_k c[k] z^-k at z^-1 = zinv.
Complex EvalInverse(const std::vector<double> &c, Complex zinv) {
  Complex acc(0.0, 0.0), zk(1.0, 0.0);
  for (double ck : c) {
    acc += ck * zk;
    zk *= zinv;
  }
  return acc;
}

constexpr int64_t kMicrosPerSecond = 1000000;

int64_t ToMicros(double sec) { return std::llround(sec * kMicrosPerSecond); }

// round-half-up of num / den for nonnegative operands.
int64_t RoundDiv(int64_t num, int64_t den) { return (2 * num + den) / (2 * den); }

Eigen::FFT<double> &ThreadFft() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

}  // namespace

void ValidateWaveform(const Waveform &x) {
  if (x.sample_rate_hz <= 0)
    throw InvalidParameter("waveform sample rate must be positive, got " +
                           std::to_string(x.sample_rate_hz));
  for (double s : x.samples)
    if (!std::isfinite(s))
      throw InvalidParameter("waveform contains non-finite samples");
}

std::complex<double> IirFilter::Response(double freq_hz) const {
  Complex zinv = std::polar(1.0, -2.0 * std::numbers::pi * freq_hz / design_fs_hz);
  return EvalInverse(b, zinv) / EvalInverse(a, zinv);
}

IirFilter DesignButterworth(int order, double cutoff_hz, double fs_hz,
                            FilterKind kind) {
  if (order < 1)
    throw InvalidParameter("Butterworth order must be >= 1");
  if (!(fs_hz > 0.0) || !(cutoff_hz > 0.0) || !(cutoff_hz < fs_hz / 2.0))
    throw InvalidParameter("Butterworth cutoff " + std::to_string(cutoff_hz) +
                           " Hz must lie strictly inside (0, fs/2) for fs = " +
                           std::to_string(fs_hz));

  // Pre-warped analog cutoff in rad/s.
  const double warped = 2.0 * fs_hz * std::tan(std::numbers::pi * cutoff_hz / fs_hz);
  const double two_fs = 2.0 * fs_hz;

  std::vector<Complex> poles, zeros;
  for (int k = 1; k <= order; ++k) {
    Complex proto = std::polar(1.0, std::numbers::pi * (2.0 * k + order - 1) /
                                        (2.0 * order));
    Complex s = kind == FilterKind::kLowpass ? warped * proto : warped / proto;
    poles.push_back((1.0 + s / two_fs) / (1.0 - s / two_fs));
    zeros.push_back(kind == FilterKind::kLowpass ? Complex(-1.0, 0.0)
                                                  : Complex(1.0, 0.0));
  }

  IirFilter f;
  f.kind = kind;
  f.cutoff_hz = cutoff_hz;
  f.design_fs_hz = fs_hz;
  f.a = RealPart(PolyFromRoots(poles));
  f.b = RealPart(PolyFromRoots(zeros));
  // Unity gain at DC (lowpass) or Nyquist (highpass).
  Complex ref = kind == FilterKind::kLowpass ? Complex(1.0, 0.0) : Complex(-1.0, 0.0);
  double gain = std::abs(EvalInverse(f.a, ref) / EvalInverse(f.b, ref));
  for (double &bk : f.b) bk *= gain;
  const double a0 = f.a[0];
  for (double &ak : f.a) ak /= a0;
  for (double &bk : f.b) bk /= a0;
  return f;
}

std::vector<double> FilterApply(const IirFilter &filter,
                                std::span<const double> x) {
  const auto &b = filter.b;
  const auto &a = filter.a;
  std::vector<double> y(x.size(), 0.0);
  for (size_t n = 0; n < x.size(); ++n) {
    if (!std::isfinite(x[n]))
      throw InvalidParameter("filter input contains non-finite samples");
    double acc = 0.0;
    for (size_t k = 0; k < b.size() && k <= n; ++k) acc += b[k] * x[n - k];
    for (size_t k = 1; k < a.size() && k <= n; ++k) acc -= a[k] * y[n - k];
    y[n] = acc;
  }
  return y;
}

std::vector<double> BlackmanWindow(int n) {
  if (n < 2) throw InvalidParameter("Blackman window length must be >= 2");
  std::vector<double> w(n);
  const double denom = static_cast<double>(n - 1);
  for (int k = 0; k < n; ++k) {
    double phase = 2.0 * std::numbers::pi * k / denom;
    w[k] = 0.42 - 0.5 * std::cos(phase) + 0.08 * std::cos(2.0 * phase);
  }
  return w;
}

int64_t FrameClock::FrameStart(int n) const {
  return RoundDiv(static_cast<int64_t>(n) * ToMicros(hop_sec) * sample_rate_hz,
                  kMicrosPerSecond);
}

int FrameClock::WindowLength() const {
  return static_cast<int>(
      RoundDiv(ToMicros(window_sec) * sample_rate_hz, kMicrosPerSecond));
}

FrameClock MakeFrameClock(int64_t duration_samples, int fs_hz,
                          double window_sec, double hop_sec) {
  if (fs_hz <= 0) throw InvalidParameter("frame clock sample rate must be positive");
  const int64_t win_us = ToMicros(window_sec), hop_us = ToMicros(hop_sec);
  if (win_us <= 0 || hop_us <= 0)
    throw InvalidParameter("frame clock window and hop must be positive");
  FrameClock clock;
  clock.window_sec = window_sec;
  clock.hop_sec = hop_sec;
  clock.sample_rate_hz = fs_hz;
  clock.num_samples = duration_samples;
  // Compare durations in units of 1 / (1e6 * fs) seconds, exactly.
  const int64_t duration = duration_samples * kMicrosPerSecond;
  const int64_t window = win_us * fs_hz;
  if (duration_samples <= 0 || duration < window ||
      clock.WindowLength() > duration_samples)
    throw InvalidParameter("signal of " + std::to_string(duration_samples) +
                           " samples is shorter than one analysis window");
  int num_frames = static_cast<int>(1 + (duration - window) / (hop_us * fs_hz));
  // Rounding of both start and window length can, for unusual rates, push
  // the last window one sample past the end.
  while (num_frames > 0 &&
         clock.FrameStart(num_frames - 1) + clock.WindowLength() > duration_samples)
    --num_frames;
  clock.num_frames = num_frames;
  return clock;
}

Eigen::MatrixXd ComplexSpectrogram::Phase() const {
  Eigen::MatrixXd ph(data.rows(), data.cols());
  for (Eigen::Index r = 0; r < data.rows(); ++r)
    for (Eigen::Index c = 0; c < data.cols(); ++c) {
      double p = std::arg(data(r, c));
      ph(r, c) = p <= -std::numbers::pi ? std::numbers::pi : p;
    }
  return ph;
}

std::vector<std::complex<double>> RealFft(std::span<const double> x) {
  std::vector<double> in(x.begin(), x.end());
  std::vector<Complex> out;
  ThreadFft().fwd(out, in);
  return out;
}

ComplexSpectrogram Stft(const Waveform &x, int fs_hz, double window_sec,
                        double hop_sec, int fft_size) {
  if (x.sample_rate_hz != fs_hz)
    throw InvalidParameter("STFT expects " + std::to_string(fs_hz) +
                           " Hz input, got " + std::to_string(x.sample_rate_hz) +
                           " Hz; resample first");
  ComplexSpectrogram spec;
  spec.fft_size = fft_size;
  spec.frame_clock = MakeFrameClock(static_cast<int64_t>(x.size()), fs_hz,
                                    window_sec, hop_sec);
  const FrameClock &clock = spec.frame_clock;
  if (clock.WindowLength() != fft_size)
    throw InvalidParameter("analysis window of " +
                           std::to_string(clock.WindowLength()) +
                           " samples does not match fft size " +
                           std::to_string(fft_size));
  const std::vector<double> window = BlackmanWindow(fft_size);
  const int num_bins = fft_size / 2 + 1;
  spec.data.resize(clock.num_frames, num_bins);
  std::vector<double> frame(fft_size);
  std::vector<Complex> bins;
  for (int t = 0; t < clock.num_frames; ++t) {
    const int64_t start = clock.FrameStart(t);
    for (int k = 0; k < fft_size; ++k) frame[k] = window[k] * x.samples[start + k];
    ThreadFft().fwd(bins, frame);
    for (int k = 0; k < num_bins; ++k) spec.data(t, k) = bins[k];
  }
  return spec;
}

Waveform Istft(const ComplexSpectrogram &spec) {
  const FrameClock &clock = spec.frame_clock;
  const int n = spec.fft_size;
  const int num_bins = n / 2 + 1;
  if (spec.NumBins() != num_bins || spec.NumFrames() != clock.num_frames)
    throw ShapeMismatch("spectrogram shape does not match its frame clock");
  Waveform out;
  out.sample_rate_hz = clock.sample_rate_hz;
  out.samples.assign(static_cast<size_t>(clock.num_samples), 0.0);
  std::vector<double> norm(out.samples.size(), 0.0);
  const std::vector<double> window = BlackmanWindow(n);

  std::vector<Complex> full(n);
  std::vector<Complex> frame;
  for (int t = 0; t < clock.num_frames; ++t) {
    for (int k = 0; k < num_bins; ++k) full[k] = spec.data(t, k);
    for (int k = num_bins; k < n; ++k) full[k] = std::conj(full[n - k]);
    ThreadFft().inv(frame, full);
    const int64_t start = clock.FrameStart(t);
    for (int k = 0; k < n; ++k) {
      out.samples[start + k] += window[k] * frame[k].real();
      norm[start + k] += window[k] * window[k];
    }
  }
  for (size_t i = 0; i < out.samples.size(); ++i)
    out.samples[i] = norm[i] < 1e-10 ? 0.0 : out.samples[i] / norm[i];
  return out;
}

namespace {

constexpr double kKaiserBeta = 8.6;
// Kernel half-width in samples of the lower of the two rates.
constexpr int kHalfWidthLowRate = 32;
// Cutoff as a fraction of the lower rate.
constexpr double kCutoffFraction = 0.45;

double KaiserSinc(double tau, double cutoff, double half_width) {
  double x = tau / half_width;
  if (std::abs(x) >= 1.0) return 0.0;
  double arg = 2.0 * cutoff * tau;
  double sinc = arg == 0.0 ? 1.0
                           : std::sin(std::numbers::pi * arg) / (std::numbers::pi * arg);
  double win = std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(1.0 - x * x)) /
               std::cyl_bessel_i(0.0, kKaiserBeta);
  return sinc * win;
}

}  // namespace

Waveform Resample(const Waveform &x, int to_hz) {
  if (to_hz <= 0) throw InvalidParameter("target sample rate must be positive");
  if (x.sample_rate_hz <= 0) throw InvalidParameter("source sample rate must be positive");
  if (to_hz == x.sample_rate_hz) return x;

  const int64_t fs = x.sample_rate_hz;
  const int64_t g = std::gcd(fs, static_cast<int64_t>(to_hz));
  const int64_t up = to_hz / g, down = fs / g;
  const double low_rate = static_cast<double>(std::min<int64_t>(fs, to_hz));
  // Cutoff in cycles per input sample and half-width in input samples.
  const double cutoff = kCutoffFraction * low_rate / static_cast<double>(fs);
  const double half_width = kHalfWidthLowRate * static_cast<double>(fs) / low_rate;
  const int64_t reach = static_cast<int64_t>(std::ceil(half_width));

  const int64_t in_len = static_cast<int64_t>(x.size());
  const int64_t out_len = (in_len * up + down - 1) / down;
  Waveform y;
  y.sample_rate_hz = to_hz;
  y.samples.assign(static_cast<size_t>(out_len), 0.0);

  // Input position of output m is m * down / up = base + phase / up; the
  // kernel only depends on the phase, so tabulate it when there are few.
  const bool tabulate = up <= 4096;
  const int64_t taps = 2 * reach + 1;
  std::vector<double> table;
  if (tabulate) {
    table.resize(static_cast<size_t>(up * taps));
    for (int64_t p = 0; p < up; ++p) {
      double frac = static_cast<double>(p) / static_cast<double>(up);
      for (int64_t j = -reach; j <= reach; ++j)
        table[p * taps + (j + reach)] =
            KaiserSinc(static_cast<double>(j) - frac, cutoff, half_width);
    }
  }
  for (int64_t m = 0; m < out_len; ++m) {
    const int64_t pos = m * down;
    const int64_t base = pos / up, phase = pos % up;
    const double frac = static_cast<double>(phase) / static_cast<double>(up);
    double acc = 0.0, wsum = 0.0;
    for (int64_t j = -reach; j <= reach; ++j) {
      const int64_t idx = base + j;
      if (idx < 0 || idx >= in_len) continue;
      double w = tabulate ? table[phase * taps + (j + reach)]
                          : KaiserSinc(static_cast<double>(j) - frac, cutoff, half_width);
      acc += w * x.samples[idx];
      wsum += w;
    }
    y.samples[m] = wsum != 0.0 ? acc / wsum : 0.0;
  }
  return y;
}

}  // namespace emgse

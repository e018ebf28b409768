// tests/signal-dsp-test.cc

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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>
#include <unsupported/Eigen/Polynomials>

#include "base/emgse-common.h"
#include "base/rng.h"

namespace emgse {
namespace {

constexpr double kPi = std::numbers::pi;

Waveform RandomWave(Rng *rng, size_t n, int fs = 16000) {
  Waveform w;
  w.sample_rate_hz = fs;
  w.samples.resize(n);
  for (double &s : w.samples) s = 0.3 * rng->Normal();
  return w;
}

// A voiced, amplitude-modulated test signal.
Waveform SpeechShaped(size_t n) {
  Waveform w;
  w.samples.resize(n);
  for (size_t i = 0; i < n; ++i) {
    double t = i / 16000.0;
    double env = 0.5 * (1.0 - std::cos(2 * kPi * 4.0 * t));
    double f0 = 120.0 * (1.0 + 0.1 * std::sin(2 * kPi * 0.7 * t));
    double v = 0.0;
    for (int k = 1; k <= 20; ++k) v += std::sin(2 * kPi * k * f0 * t) / k;
    w.samples[i] = 0.1 * env * v;
  }
  return w;
}

TEST(Butterworth, DcGains) {
  IirFilter lp = DesignButterworth(3, 134, 2048, FilterKind::kLowpass);
  IirFilter hp = DesignButterworth(3, 134, 2048, FilterKind::kHighpass);
  auto sum = [](const std::vector<double> &v) {
    double s = 0;
    for (double x : v) s += x;
    return s;
  };
  EXPECT_NEAR(sum(lp.b) / sum(lp.a), 1.0, 1e-9);
  EXPECT_NEAR(sum(hp.b) / sum(hp.a), 0.0, 1e-9);
  EXPECT_DOUBLE_EQ(lp.a[0], 1.0);
  EXPECT_DOUBLE_EQ(hp.a[0], 1.0);
  ASSERT_EQ(lp.b.size(), 4u);
  ASSERT_EQ(lp.a.size(), 4u);
}

TEST(Butterworth, HalfPowerAtCutoff) {
  for (FilterKind kind : {FilterKind::kLowpass, FilterKind::kHighpass}) {
    IirFilter f = DesignButterworth(3, 134, 2048, kind);
    EXPECT_NEAR(std::abs(f.Response(134.0)), 1.0 / std::sqrt(2.0), 1e-6);
  }
}

TEST(Butterworth, MagnitudeAtTwiceCutoff) {
  // 1 / sqrt(1 + (tan(pi f / fs) / tan(pi fc / fs))^6), the bilinear-mapped
  // Butterworth magnitude, evaluated independently.
  IirFilter lp = DesignButterworth(3, 134, 2048, FilterKind::kLowpass);
  EXPECT_NEAR(std::abs(lp.Response(268.0)), 0.10874778784698134, 1e-9);
}

TEST(Butterworth, PolesInsideUnitCircle) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    int order = 1 + static_cast<int>(rng.Below(6));
    double fs = rng.Uniform(500.0, 48000.0);
    double fc = rng.Uniform(0.01, 0.49) * fs;
    FilterKind kind = trial % 2 ? FilterKind::kHighpass : FilterKind::kLowpass;
    IirFilter f = DesignButterworth(order, fc, fs, kind);
    // a(z^-1) = 0  <=>  z^N a(z^-1) = 0, a polynomial in z with leading a[0].
    Eigen::VectorXd coeffs(f.a.size());
    for (size_t k = 0; k < f.a.size(); ++k) coeffs[k] = f.a[f.a.size() - 1 - k];
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(coeffs);
    for (const auto &root : solver.roots()) EXPECT_LT(std::abs(root), 1.0);
  }
}

TEST(Butterworth, RejectsCutoffAtNyquist) {
  EXPECT_THROW(DesignButterworth(3, 1024, 2048, FilterKind::kLowpass), InvalidParameter);
  EXPECT_THROW(DesignButterworth(3, 1500, 2048, FilterKind::kLowpass), InvalidParameter);
  EXPECT_THROW(DesignButterworth(0, 134, 2048, FilterKind::kLowpass), InvalidParameter);
  EXPECT_THROW(DesignButterworth(3, 0, 2048, FilterKind::kHighpass), InvalidParameter);
}

TEST(FilterApply, ConstantInputSettles) {
  std::vector<double> x(4096, 0.5);
  auto lo = FilterApply(DesignButterworth(3, 134, 2048, FilterKind::kLowpass), x);
  auto hi = FilterApply(DesignButterworth(3, 134, 2048, FilterKind::kHighpass), x);
  ASSERT_EQ(lo.size(), x.size());
  EXPECT_NEAR(lo.back(), 0.5, 1e-6);
  EXPECT_NEAR(hi.back(), 0.0, 1e-6);
}

TEST(FilterApply, ImpulseMatchesUnrolledRecursion) {
  IirFilter f = DesignButterworth(3, 134, 2048, FilterKind::kLowpass);
  std::vector<double> x(8, 0.0);
  x[0] = 1.0;
  std::vector<double> y = FilterApply(f, x);
  const auto &b = f.b;
  const auto &a = f.a;
  double h[8];
  h[0] = b[0];
  h[1] = b[1] - a[1] * h[0];
  h[2] = b[2] - a[1] * h[1] - a[2] * h[0];
  h[3] = b[3] - a[1] * h[2] - a[2] * h[1] - a[3] * h[0];
  for (int n = 4; n < 8; ++n) h[n] = -a[1] * h[n - 1] - a[2] * h[n - 2] - a[3] * h[n - 3];
  for (int n = 0; n < 8; ++n) EXPECT_NEAR(y[n], h[n], 1e-15) << n;
  // Cross-check the start of the response against a reference design.
  EXPECT_NEAR(y[0], 0.00599056, 1e-8);
  EXPECT_NEAR(y[7], 0.13569397, 1e-8);
}

TEST(FilterApply, RejectsNonFinite) {
  IirFilter f = DesignButterworth(3, 134, 2048, FilterKind::kLowpass);
  std::vector<double> x = {0.0, NAN, 1.0};
  EXPECT_THROW(FilterApply(f, x), InvalidParameter);
}

TEST(Blackman, Values) {
  auto w = BlackmanWindow(512);
  EXPECT_NEAR(w[0], 0.0, 1e-12);
  EXPECT_NEAR(w[511], 0.0, 1e-12);
  EXPECT_NEAR(w[255], w[256], 1e-15);
  EXPECT_GT(w[255], 0.99);
  auto w3 = BlackmanWindow(3);
  EXPECT_NEAR(w3[0], 0.0, 1e-12);
  EXPECT_NEAR(w3[1], 1.0, 1e-12);
  EXPECT_NEAR(w3[2], 0.0, 1e-12);
  EXPECT_THROW(BlackmanWindow(1), InvalidParameter);
}

TEST(Blackman, SumMatchesDirectSummation) {
  // 0.42 n - 0.5 + 0.08: both cosine sums over the symmetric grid equal 1.
  auto w = BlackmanWindow(512);
  double s = 0.0;
  for (double v : w) s += v;
  EXPECT_NEAR(s, 214.62, 1e-9);
}

TEST(FrameClock, OneSecond) {
  FrameClock audio = MakeFrameClock(16000, 16000);
  FrameClock emg = MakeFrameClock(2048, 2048);
  EXPECT_EQ(audio.num_frames, 122);
  EXPECT_EQ(emg.num_frames, 122);
  EXPECT_EQ(audio.WindowLength(), 512);
  EXPECT_EQ(emg.WindowLength(), 66);
  EXPECT_EQ(audio.FrameStart(3), 384);
  EXPECT_EQ(emg.FrameStart(1), 16);   // 16.384
  EXPECT_EQ(emg.FrameStart(2), 33);   // 32.768
  EXPECT_EQ(MakeFrameClock(512, 16000).num_frames, 1);
  EXPECT_THROW(MakeFrameClock(511, 16000), InvalidParameter);
}

TEST(FrameClock, RateInvariantForEqualDurations) {
  // Durations on a 1/64 s grid are exact at both rates.
  for (int units = 3; units < 400; ++units) {
    FrameClock a = MakeFrameClock(units * 250, 16000);
    FrameClock e = MakeFrameClock(units * 32, 2048);
    ASSERT_EQ(a.num_frames, e.num_frames) << units;
    for (const FrameClock &c : {a, e})
      EXPECT_LE(c.FrameStart(c.num_frames - 1) + c.WindowLength(), c.num_samples);
  }
}

TEST(Stft, ZeroAndLinearity) {
  Waveform zero;
  zero.samples.assign(4000, 0.0);
  ComplexSpectrogram z = Stft(zero);
  EXPECT_EQ(z.NumBins(), 257);
  EXPECT_EQ(z.data.cwiseAbs().maxCoeff(), 0.0);

  Rng rng(3);
  Waveform x = RandomWave(&rng, 8000), y = RandomWave(&rng, 8000);
  Waveform mix = x, twice = x;
  const double alpha = 0.7, beta = -1.3;
  for (size_t i = 0; i < x.size(); ++i) {
    mix.samples[i] = alpha * x.samples[i] + beta * y.samples[i];
    twice.samples[i] = 2.0 * x.samples[i];
  }
  ComplexSpectrogram sx = Stft(x), sy = Stft(y), sm = Stft(mix), s2 = Stft(twice);
  Eigen::MatrixXcd expect = alpha * sx.data + beta * sy.data;
  EXPECT_LE((sm.data - expect).cwiseAbs().maxCoeff(),
            1e-9 * expect.cwiseAbs().maxCoeff());
  EXPECT_EQ((s2.data - 2.0 * sx.data).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Stft, BinCenteredSine) {
  const int k = 40;
  Waveform x;
  x.samples.resize(16000);
  for (size_t i = 0; i < x.size(); ++i)
    x.samples[i] = std::cos(2 * kPi * k * 16000.0 / 512.0 * i / 16000.0);
  ComplexSpectrogram s = Stft(x);
  double wsum = 214.62;
  for (int t = 0; t < s.NumFrames(); ++t) {
    EXPECT_NEAR(std::abs(s.data(t, k)), wsum / 2.0, 0.01 * wsum / 2.0);
    Eigen::Index arg;
    s.data.row(t).cwiseAbs().maxCoeff(&arg);
    EXPECT_EQ(arg, k);
  }
}

TEST(Stft, RejectsWrongRate) {
  Waveform x;
  x.sample_rate_hz = 8000;
  x.samples.assign(4000, 0.0);
  EXPECT_THROW(Stft(x), InvalidParameter);
}

TEST(Stft, ParsevalPerFrame) {
  Rng rng(5);
  Waveform x = RandomWave(&rng, 3000);
  auto w = BlackmanWindow(512);
  FrameClock clock = MakeFrameClock(3000, 16000);
  for (int t = 0; t < clock.num_frames; ++t) {
    std::vector<double> frame(512);
    double time_energy = 0.0;
    for (int i = 0; i < 512; ++i) {
      frame[i] = w[i] * x.samples[clock.FrameStart(t) + i];
      time_energy += frame[i] * frame[i];
    }
    auto full = RealFft(frame);
    ASSERT_EQ(full.size(), 512u);
    double freq_energy = 0.0;
    for (auto c : full) freq_energy += std::norm(c);
    EXPECT_NEAR(time_energy, freq_energy / 512.0, 1e-6 * time_energy);
  }
}

double InteriorRelativeRms(const Waveform &a, const Waveform &b, size_t margin) {
  double err = 0.0, ref = 0.0;
  for (size_t i = margin; i + margin < a.size(); ++i) {
    double d = a.samples[i] - b.samples[i];
    err += d * d;
    ref += a.samples[i] * a.samples[i];
  }
  return std::sqrt(err / ref);
}

TEST(Istft, RoundTripRandomSignals) {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    size_t n = 512 * 4 + rng.Below(20000);
    Waveform x = RandomWave(&rng, n);
    Waveform y = Istft(Stft(x));
    ASSERT_EQ(y.size(), x.size());
    EXPECT_LT(InteriorRelativeRms(x, y, 256 + 128), 1e-6);
  }
}

TEST(Istft, WhiteNoiseMaxAbsError) {
  Rng rng(1);
  Waveform x = RandomWave(&rng, 16000);
  Waveform y = Istft(Stft(x));
  double worst = 0.0;
  for (size_t i = 256; i + 256 + 128 < x.size(); ++i)
    worst = std::max(worst, std::abs(x.samples[i] - y.samples[i]));
  EXPECT_LT(worst, 1e-6);
}

TEST(Istft, SpeechShapedSnr) {
  Waveform x = SpeechShaped(24000);
  Waveform y = Istft(Stft(x));
  double rel = InteriorRelativeRms(x, y, 256 + 128);
  EXPECT_GT(-20.0 * std::log10(rel), 100.0);
}

TEST(Istft, ZeroSpectrogram) {
  Waveform zero;
  zero.samples.assign(5000, 0.0);
  Waveform y = Istft(Stft(zero));
  for (double s : y.samples) EXPECT_EQ(s, 0.0);
}

TEST(Resample, Identity) {
  Rng rng(2);
  Waveform x = RandomWave(&rng, 1000);
  Waveform y = Resample(x, 16000);
  EXPECT_EQ(y.samples, x.samples);
}

TEST(Resample, PreservesDc) {
  Waveform x;
  x.samples.assign(16000, 0.25);
  for (int to : {10000, 8000, 22050, 44100}) {
    Waveform y = Resample(x, to);
    EXPECT_EQ(y.sample_rate_hz, to);
    for (double s : y.samples) EXPECT_NEAR(s, 0.25, 1e-6);
  }
}

TEST(Resample, SineDownTo10k) {
  Waveform x;
  x.samples.resize(16000);
  for (size_t i = 0; i < x.size(); ++i)
    x.samples[i] = 0.8 * std::sin(2 * kPi * 1000.0 * i / 16000.0);
  Waveform y = Resample(x, 10000);
  ASSERT_EQ(y.size(), 10000u);
  // Least-squares fit of a 1 kHz sine/cosine pair on the interior.
  double ss = 0, cc = 0, sc = 0, ys = 0, yc = 0, resid = 0;
  for (size_t i = 200; i < 9800; ++i) {
    double s = std::sin(2 * kPi * 1000.0 * i / 10000.0);
    double c = std::cos(2 * kPi * 1000.0 * i / 10000.0);
    ss += s * s; cc += c * c; sc += s * c;
    ys += y.samples[i] * s; yc += y.samples[i] * c;
  }
  double det = ss * cc - sc * sc;
  double as = (ys * cc - yc * sc) / det, ac = (yc * ss - ys * sc) / det;
  EXPECT_NEAR(std::hypot(as, ac), 0.8, 0.008);
  for (size_t i = 200; i < 9800; ++i) {
    double fit = as * std::sin(2 * kPi * 1000.0 * i / 10000.0) +
                 ac * std::cos(2 * kPi * 1000.0 * i / 10000.0);
    resid = std::max(resid, std::abs(fit - y.samples[i]));
  }
  EXPECT_LT(resid, 1e-3);
}

TEST(Resample, PassbandRipple) {
  // Below 0.4 x min(fs, to) the gain stays within 0.1 dB.
  for (int to : {10000, 24000}) {
    double edge = 0.4 * std::min(16000, to);
    for (double f = 100.0; f <= edge; f += 350.0) {
      Waveform x;
      x.samples.resize(16000);
      for (size_t i = 0; i < x.size(); ++i)
        x.samples[i] = std::sin(2 * kPi * f * i / 16000.0);
      Waveform y = Resample(x, to);
      double ref = 0.0, got = 0.0;
      for (size_t i = to / 10; i < y.size() - to / 10; ++i) {
        double s = std::sin(2 * kPi * f * i / to);
        ref += s * s;
        got += y.samples[i] * y.samples[i];
      }
      double db = 10.0 * std::log10(got / ref);
      EXPECT_LT(std::abs(db), 0.1) << "f=" << f << " to=" << to;
    }
  }
}

}  // namespace
}  // namespace emgse

// metrics/stoi.cc

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

#include "metrics/stoi.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "base/emgse-common.h"

namespace emgse {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Hann window of length n + 2 with both zero end points removed.
std::vector<double> TrimmedHann(int n) {
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * (i + 1) / (n + 1));
  return w;
}

// frames x (fft/2+1) magnitudes of Hann-windowed frames starting every
// frame_length/2 samples, for starts strictly below len - frame_length.
Eigen::MatrixXd FrameSpectra(const std::vector<double> &x, const StoiConfig &c) {
  const int hop = c.frame_length / 2;
  const std::vector<double> w = TrimmedHann(c.frame_length);
  std::vector<int64_t> starts;
  for (int64_t i = 0; i < static_cast<int64_t>(x.size()) - c.frame_length; i += hop)
    starts.push_back(i);
  const int bins = c.fft_size / 2 + 1;
  Eigen::MatrixXd mag2(static_cast<Eigen::Index>(starts.size()), bins);
  std::vector<double> buf(c.fft_size);
  for (size_t f = 0; f < starts.size(); ++f) {
    std::fill(buf.begin(), buf.end(), 0.0);
    for (int i = 0; i < c.frame_length; ++i) buf[i] = w[i] * x[starts[f] + i];
    std::vector<std::complex<double>> spec = RealFft(buf);
    for (int k = 0; k < bins; ++k) mag2(static_cast<Eigen::Index>(f), k) = std::norm(spec[k]);
  }
  return mag2;
}

}  // namespace

Eigen::MatrixXd ThirdOctaveBands(const StoiConfig &c) {
  const int bins = c.fft_size / 2 + 1;
  Eigen::MatrixXd obm = Eigen::MatrixXd::Zero(c.num_bands, bins);
  auto nearest_bin = [&](double hz) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int k = 0; k < bins; ++k) {
      const double f = static_cast<double>(k) * c.sample_rate_hz / c.fft_size;
      const double d = (f - hz) * (f - hz);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    return best;
  };
  for (int b = 0; b < c.num_bands; ++b) {
    const int lo = nearest_bin(c.min_freq_hz * std::pow(2.0, (2.0 * b - 1) / 6.0));
    const int hi = nearest_bin(c.min_freq_hz * std::pow(2.0, (2.0 * b + 1) / 6.0));
    for (int k = lo; k < hi; ++k) obm(b, k) = 1.0;
  }
  return obm;
}

std::pair<std::vector<double>, std::vector<double>> RemoveSilentFrames(
    std::span<const double> clean, std::span<const double> processed, const StoiConfig &c) {
  const int n = c.frame_length, hop = c.frame_length / 2;
  const std::vector<double> w = TrimmedHann(n);
  std::vector<int64_t> starts;
  for (int64_t i = 0; i + n <= static_cast<int64_t>(clean.size()); i += hop) starts.push_back(i);
  std::vector<double> energy(starts.size());
  double max_energy = -std::numeric_limits<double>::infinity();
  for (size_t f = 0; f < starts.size(); ++f) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      const double v = w[i] * clean[starts[f] + i];
      s += v * v;
    }
    energy[f] = 20.0 * std::log10(std::sqrt(s) + kEps);
    max_energy = std::max(max_energy, energy[f]);
  }
  std::vector<int64_t> kept;
  for (size_t f = 0; f < starts.size(); ++f)
    if (max_energy - c.dynamic_range_db - energy[f] < 0) kept.push_back(starts[f]);
  std::vector<double> x, y;
  if (kept.empty()) return {x, y};
  const size_t len = (kept.size() - 1) * hop + n;
  x.assign(len, 0.0);
  y.assign(len, 0.0);
  for (size_t k = 0; k < kept.size(); ++k)
    for (int i = 0; i < n; ++i) {
      x[k * hop + i] += w[i] * clean[kept[k] + i];
      y[k * hop + i] += w[i] * processed[kept[k] + i];
    }
  return {x, y};
}

double Stoi(const Waveform &clean, const Waveform &processed, const StoiConfig &c) {
  if (clean.size() != processed.size())
    throw ShapeMismatch("STOI inputs differ in length (" + std::to_string(clean.size()) + " vs " +
                        std::to_string(processed.size()) + ")");
  if (clean.sample_rate_hz != processed.sample_rate_hz)
    throw ShapeMismatch("STOI inputs differ in sample rate");
  const Waveform x10 = Resample(clean, c.sample_rate_hz);
  const Waveform y10 = Resample(processed, c.sample_rate_hz);
  bool silent = true;
  for (double v : x10.samples)
    if (v != 0.0) silent = false;
  if (silent) throw InvalidParameter("STOI is undefined for an all-silent clean signal");

  auto [x, y] = RemoveSilentFrames(x10.samples, y10.samples, c);
  const Eigen::MatrixXd obm = ThirdOctaveBands(c);
  // bands x frames
  const Eigen::MatrixXd xb = (obm * FrameSpectra(x, c).transpose()).cwiseSqrt();
  const Eigen::MatrixXd yb = (obm * FrameSpectra(y, c).transpose()).cwiseSqrt();
  const int n = c.segment_frames;
  if (xb.cols() < n)
    throw InvalidParameter("STOI needs at least " + std::to_string(n) +
                           " non-silent frames, got " + std::to_string(xb.cols()));
  const double clip = std::pow(10.0, -c.beta_db / 20.0);
  double total = 0.0;
  const Eigen::Index segments = xb.cols() - n + 1;
  for (Eigen::Index m = 0; m < segments; ++m) {
    for (Eigen::Index j = 0; j < xb.rows(); ++j) {
      Eigen::ArrayXd xs = xb.row(j).segment(m, n).transpose().array();
      Eigen::ArrayXd ys = yb.row(j).segment(m, n).transpose().array();
      const double alpha = xs.matrix().norm() / (ys.matrix().norm() + kEps);
      ys = (ys * alpha).min(xs * (1.0 + clip));
      ys -= ys.mean();
      xs -= xs.mean();
      ys /= ys.matrix().norm() + kEps;
      xs /= xs.matrix().norm() + kEps;
      total += (xs * ys).sum();
    }
  }
  return total / static_cast<double>(xb.rows() * segments);
}

double SiSdr(const Waveform &reference, const Waveform &estimate) {
  if (reference.size() != estimate.size())
    throw ShapeMismatch("SI-SDR inputs differ in length");
  double rr = 0.0, er = 0.0;
  for (size_t i = 0; i < reference.size(); ++i) {
    rr += reference.samples[i] * reference.samples[i];
    er += estimate.samples[i] * reference.samples[i];
  }
  if (rr == 0.0) throw InvalidParameter("SI-SDR reference is all zero");
  const double alpha = er / rr;
  double tt = 0.0, ee = 0.0;
  for (size_t i = 0; i < reference.size(); ++i) {
    const double t = alpha * reference.samples[i];
    const double e = estimate.samples[i] - t;
    tt += t * t;
    ee += e * e;
  }
  if (tt == 0.0) return -100.0;
  if (ee == 0.0) return 100.0;
  return std::clamp(10.0 * std::log10(tt / ee), -100.0, 100.0);
}

}  // namespace emgse

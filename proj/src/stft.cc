// Copyright 2026 The sifbank Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "sifbank/stft.h"

#include <algorithm>
#include <cmath>

#include "sifbank/errors.h"
#include "sifbank/fft.h"
#include "sifbank/simd/kernels.h"

namespace sifbank {
namespace {

// Filter weights restricted to their nonzero bins.
struct BandWeights {
  int first = 0;
  std::vector<double> w;
};

std::vector<BandWeights> BuildWeights(const FilterBank& bank, int dft_size) {
  std::vector<BandWeights> out;
  out.reserve(bank.specs.size());
  for (const FilterSpec& spec : bank.specs) {
    std::vector<double> w = PowerWeights(spec, dft_size, bank.sample_rate);
    int lo = 0;
    int hi = static_cast<int>(w.size());
    while (lo < hi && w[lo] == 0.0) ++lo;
    while (hi > lo && w[hi - 1] == 0.0) --hi;
    out.push_back({lo, std::vector<double>(w.begin() + lo, w.begin() + hi)});
  }
  return out;
}

void CheckInputs(const AudioBuffer& audio, const FilterBank& bank,
                 const FrameConfig& cfg) {
  cfg.Validate();
  if (bank.specs.empty()) throw DomainError("filter bank is empty");
  if (audio.sample_rate != bank.sample_rate) {
    throw DomainError("sample rate mismatch: audio " +
                      std::to_string(audio.sample_rate) + " Hz, bank " +
                      std::to_string(bank.sample_rate) + " Hz");
  }
}

FeatureMatrix EmptyMatrix(std::size_t rows, const FilterBank& bank,
                          bool energy) {
  FeatureMatrix m;
  m.rows = rows;
  m.cols = bank.specs.size() + (energy ? 1 : 0);
  m.has_energy = energy;
  m.values.assign(m.rows * m.cols, 0.0);
  return m;
}

}  // namespace

FeatureMatrix StftFeatures(const AudioBuffer& audio, const FilterBank& bank,
                           const FrameConfig& cfg) {
  CheckInputs(audio, bank, cfg);
  const std::size_t rows = FrameCount(audio.size(), cfg);
  const int n = cfg.ResolvedDftSize();
  const int len = cfg.frame_length;
  const simd::KernelTable& k = simd::ActiveKernels();
  const std::vector<double> window = WindowSamples(cfg.window, len);
  const std::vector<BandWeights> weights = BuildWeights(bank, n);

  FeatureMatrix m = EmptyMatrix(rows, bank, cfg.include_energy);
  RealFft fft(n);
  std::vector<double> frame(n, 0.0);
  std::vector<Complex> spectrum(n / 2 + 1);
  std::vector<double> power(n / 2 + 1);
  const double log_floor = cfg.log_floor;

  for (std::size_t i = 0; i < rows; ++i) {
    const double* x = audio.samples.data() + i * cfg.shift;
    std::size_t col = 0;
    if (cfg.include_energy) {
      m.at(i, col++) = std::log(std::max(log_floor, k.sum_squares(x, len)));
    }
    k.real_multiply(x, window.data(), frame.data(), len);
    fft.Forward(frame, spectrum);
    k.norm_squared(spectrum.data(), power.data(), power.size());
    for (const BandWeights& bw : weights) {
      const double e = k.dot(bw.w.data(), power.data() + bw.first, bw.w.size());
      m.at(i, col++) = std::log(std::max(log_floor, e));
    }
  }
  return m;
}

FeatureMatrix StftFeaturesTimeForm(const AudioBuffer& audio,
                                   const FilterBank& bank,
                                   const FrameConfig& cfg) {
  CheckInputs(audio, bank, cfg);
  const std::size_t rows = FrameCount(audio.size(), cfg);
  const int n = cfg.ResolvedDftSize();
  const int len = cfg.frame_length;
  const std::vector<double> window = WindowSamples(cfg.window, len);

  // One-sided root responses: G[b] = sqrt(w[b]) for b <= n / 2, else 0.
  std::vector<std::vector<double>> roots;
  for (const FilterSpec& spec : bank.specs) {
    std::vector<double> g = PowerWeights(spec, n, bank.sample_rate);
    for (double& v : g) v = std::sqrt(v);
    roots.push_back(std::move(g));
  }

  FeatureMatrix m = EmptyMatrix(rows, bank, cfg.include_energy);
  RealFft forward(n);
  ComplexFft backward(n);
  std::vector<double> frame(n, 0.0);
  std::vector<Complex> spectrum(n / 2 + 1);
  std::vector<Complex> filtered(n);
  std::vector<Complex> y(n);

  for (std::size_t i = 0; i < rows; ++i) {
    const double* x = audio.samples.data() + i * cfg.shift;
    std::size_t col = 0;
    if (cfg.include_energy) {
      double e = 0.0;
      for (int t = 0; t < len; ++t) e += x[t] * x[t];
      m.at(i, col++) = std::log(std::max(cfg.log_floor, e));
    }
    for (int t = 0; t < len; ++t) frame[t] = x[t] * window[t];
    forward.Forward(frame, spectrum);
    for (const std::vector<double>& g : roots) {
      std::fill(filtered.begin(), filtered.end(), Complex(0.0, 0.0));
      for (int b = 0; b <= n / 2; ++b) filtered[b] = g[b] * spectrum[b];
      backward.Backward(filtered, y);
      // y is n times the circular convolution c, and by Parseval
      // sum_b |G X|^2 = n sum_t |c|^2 = sum_t |y|^2 / n.
      double e = 0.0;
      for (const Complex& v : y) e += std::norm(v);
      e /= n;
      m.at(i, col++) = std::log(std::max(cfg.log_floor, e));
    }
  }
  return m;
}

}  // namespace sifbank

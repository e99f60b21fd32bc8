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


#include "sifbank/filters.h"

#include <cmath>
#include <numbers>
#include <string>

#include "sifbank/errors.h"
#include "sifbank/fft.h"
#include "sifbank/scales.h"

namespace sifbank {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// The constant C that puts the peak of |H| at 1. FreqResponse divides by
// this rather than trusting `norm` to be exact, so the peak is 1 to the ulp.
double UnitPeakNorm(const FilterSpec& spec) {
  switch (spec.kind) {
    case FilterKind::kTriangular:
      return 1.0;
    case FilterKind::kGabor:
      return 1.0 / (spec.sigma_or_alpha * std::sqrt(kTwoPi));
    case FilterKind::kGammatone:
      return std::exp(spec.order * std::log(spec.sigma_or_alpha) -
                      std::lgamma(static_cast<double>(spec.order)));
  }
  return 1.0;
}

double TriangleWeight(const FilterSpec& spec, double hz) {
  const double c = spec.center_hz();
  if (hz <= spec.left_hz || hz >= spec.right_hz) return 0.0;
  if (hz == c) return 1.0;
  if (hz < c) return (hz - spec.left_hz) / (c - spec.left_hz);
  return (spec.right_hz - hz) / (spec.right_hz - c);
}

void CheckFrequency(double hz) {
  if (!std::isfinite(hz)) throw DomainError("frequency must be finite");
}

void CheckThreshold(double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw DomainError("trunc_threshold must be in (0, 1], got " +
                      std::to_string(threshold));
  }
}

int RoundToInt(double v) { return static_cast<int>(std::lround(v)); }

ImpulseResponse GaborImpulse(const FilterSpec& spec, double fs,
                             double threshold) {
  const double sigma = spec.sigma_or_alpha;
  const int half =
      RoundToInt(sigma * std::sqrt(2.0 * std::log(1.0 / threshold)) * fs);
  const double gain = spec.norm / fs;
  ImpulseResponse ir;
  ir.origin = -half;
  ir.peak_delay = half;
  ir.taps.resize(2 * half + 1);
  for (int j = 0; j <= 2 * half; ++j) {
    const double t = (j - half) / fs;
    ir.taps[j] = gain * std::exp(-t * t / (2.0 * sigma * sigma)) *
                 std::polar(1.0, spec.xi * t);
  }
  return ir;
}

ImpulseResponse GammatoneImpulse(const FilterSpec& spec, double fs,
                                 double threshold) {
  const double alpha = spec.sigma_or_alpha;
  const int n = spec.order;
  const double t_peak = (n - 1) / alpha;
  const int m_peak = RoundToInt(t_peak * fs);
  const double log_threshold = std::log(threshold);
  // log of the envelope relative to its analytic maximum.
  auto rel_log_env = [&](int m) {
    const double t = m / fs;
    if (n == 1) return -alpha * t;
    if (m == 0) return -HUGE_VAL;
    return (n - 1) * std::log(t / t_peak) - alpha * (t - t_peak);
  };
  int first = m_peak;
  while (first > 0 && rel_log_env(first - 1) >= log_threshold) --first;
  int last = m_peak;
  while (rel_log_env(last + 1) >= log_threshold) ++last;

  const double log_c = std::log(spec.norm);
  ImpulseResponse ir;
  ir.origin = first;
  ir.peak_delay = m_peak - first;
  ir.taps.resize(last - first + 1);
  for (int m = first; m <= last; ++m) {
    const double t = m / fs;
    double env = 0.0;
    if (n == 1) {
      env = std::exp(log_c - alpha * t);
    } else if (m > 0) {
      env = std::exp(log_c + (n - 1) * std::log(t) - alpha * t);
    }
    ir.taps[m - first] = (env / fs) * std::polar(1.0, spec.xi * t);
  }
  // For order 1 the response jumps at t = 0; taking half of that sample
  // (trapezoidal rule) keeps the DFT close to the analytic response.
  if (n == 1 && first == 0) ir.taps[0] *= 0.5;
  return ir;
}

// The root triangle has corners, so its ideal kernel decays slowly. Sample
// it densely in frequency, then apply a Gaussian taper whose spectral width
// is a quarter of the narrower triangle side. The frequency grid is fine
// enough (64 fs / side) that time aliases of the t^-1.5 tail stay below
// about 2e-4 of the peak inside the taper.
ImpulseResponse TriangleImpulse(const FilterSpec& spec, double fs,
                                double threshold) {
  const double c = spec.center_hz();
  const double min_side = std::min(c - spec.left_hz, spec.right_hz - c);
  const double sigma_f = min_side / 4.0;
  const double sigma_t = 1.0 / (kTwoPi * sigma_f);
  const int half =
      RoundToInt(sigma_t * std::sqrt(2.0 * std::log(1.0 / threshold)) * fs);
  const int length = 2 * half + 1;
  const std::size_t grid = std::max(
      NextPowerOfTwo(4 * static_cast<std::size_t>(length)),
      NextPowerOfTwo(static_cast<std::size_t>(std::ceil(64.0 * fs / min_side))));

  std::vector<Complex> spectrum(grid, Complex(0.0, 0.0));
  for (std::size_t b = 0; b <= grid / 2; ++b) {
    spectrum[b] = std::sqrt(TriangleWeight(spec, b * fs / grid));
  }
  std::vector<Complex> kernel(grid);
  ComplexFft fft(grid);
  fft.Backward(spectrum, kernel);

  ImpulseResponse ir;
  ir.origin = -half;
  ir.peak_delay = half;
  ir.taps.resize(length);
  for (int j = 0; j < length; ++j) {
    const int m = j - half;
    const double t = m / fs;
    const std::size_t idx = m >= 0 ? m : grid + m;
    const double taper = std::exp(-t * t / (2.0 * sigma_t * sigma_t));
    ir.taps[j] = kernel[idx] * (taper / static_cast<double>(grid));
  }
  return ir;
}

}  // namespace

double FilterSpec::center_hz() const { return xi / kTwoPi; }

FilterBank DesignBank(FilterKind kind, int num_filters, double f_low,
                      double f_high, double sample_rate, int order) {
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
    throw DomainError("sample rate must be positive");
  }
  if (order < 1) {
    throw DomainError("order must be >= 1, got " + std::to_string(order));
  }
  const double nyquist = sample_rate / 2.0;
  if (f_high > nyquist) {
    throw DomainError("f_high " + std::to_string(f_high) +
                      " Hz exceeds the Nyquist limit of " +
                      std::to_string(nyquist) + " Hz");
  }
  FilterBank bank;
  bank.sample_rate = sample_rate;
  bank.f_low = f_low;
  bank.f_high = f_high;

  if (kind == FilterKind::kTriangular) {
    for (const CenterSample& s : SampleCenters(num_filters, f_low, f_high)) {
      FilterSpec spec;
      spec.kind = kind;
      spec.xi = kTwoPi * s.center_hz;
      spec.left_hz = s.left_hz;
      spec.right_hz = s.right_hz;
      bank.specs.push_back(spec);
    }
    return bank;
  }

  const std::vector<double> edges = SampleEdges(num_filters, f_low, f_high);
  for (int k = 0; k < num_filters; ++k) {
    FilterSpec spec;
    spec.kind = kind;
    spec.left_hz = edges[k];
    spec.right_hz = edges[k + 1];
    spec.xi = kTwoPi * 0.5 * (spec.left_hz + spec.right_hz);
    const double delta = std::numbers::pi * (spec.right_hz - spec.left_hz);
    if (kind == FilterKind::kGabor) {
      spec.sigma_or_alpha = std::sqrt(std::numbers::ln2) / delta;
    } else {
      spec.order = order;
      spec.sigma_or_alpha = delta / std::sqrt(std::exp2(1.0 / order) - 1.0);
    }
    spec.norm = UnitPeakNorm(spec);
    bank.specs.push_back(spec);
  }
  return bank;
}

Complex FreqResponse(const FilterSpec& spec, double hz) {
  CheckFrequency(hz);
  if (spec.kind == FilterKind::kTriangular) return TriangleWeight(spec, hz);
  const double gain = spec.norm / UnitPeakNorm(spec);
  const double delta = kTwoPi * hz - spec.xi;
  if (spec.kind == FilterKind::kGabor) {
    const double s = spec.sigma_or_alpha;
    return gain * std::exp(-0.5 * s * s * delta * delta);
  }
  // (alpha / (alpha + i delta))^n in polar form.
  const double a = spec.sigma_or_alpha;
  const int n = spec.order;
  const double mag = std::pow(a * a / (a * a + delta * delta), 0.5 * n);
  return gain * std::polar(mag, -n * std::atan2(delta, a));
}

std::vector<Complex> FreqResponse(const FilterSpec& spec,
                                  std::span<const double> hz) {
  std::vector<Complex> out;
  out.reserve(hz.size());
  for (double f : hz) out.push_back(FreqResponse(spec, f));
  return out;
}

double PowerResponse(const FilterSpec& spec, double hz) {
  CheckFrequency(hz);
  if (spec.kind == FilterKind::kTriangular) return TriangleWeight(spec, hz);
  const double gain = spec.norm / UnitPeakNorm(spec);
  const double delta = kTwoPi * hz - spec.xi;
  if (spec.kind == FilterKind::kGabor) {
    const double s = spec.sigma_or_alpha;
    return gain * gain * std::exp(-s * s * delta * delta);
  }
  const double a = spec.sigma_or_alpha;
  return gain * gain * std::pow(a * a / (a * a + delta * delta), spec.order);
}

std::vector<double> PowerWeights(const FilterSpec& spec, int dft_size,
                                 double sample_rate) {
  if (dft_size < 1) throw DomainError("dft_size must be >= 1");
  std::vector<double> w(dft_size / 2 + 1);
  for (int b = 0; b <= dft_size / 2; ++b) {
    w[b] = PowerResponse(spec, b * sample_rate / dft_size);
  }
  return w;
}

std::vector<double> SqrtResponse(const FilterSpec& spec,
                                 std::span<const double> hz) {
  if (spec.kind != FilterKind::kTriangular) {
    throw DomainError("sqrt_response is defined for triangular filters only");
  }
  std::vector<double> out;
  out.reserve(hz.size());
  for (double f : hz) {
    CheckFrequency(f);
    out.push_back(std::sqrt(TriangleWeight(spec, f)));
  }
  return out;
}

double HalfPowerOffset(const FilterSpec& spec) {
  switch (spec.kind) {
    case FilterKind::kGabor:
      return std::sqrt(std::numbers::ln2) / spec.sigma_or_alpha;
    case FilterKind::kGammatone:
      return spec.sigma_or_alpha *
             std::sqrt(std::exp2(1.0 / spec.order) - 1.0);
    case FilterKind::kTriangular:
      break;
  }
  throw DomainError("triangular filters have no symmetric half-power offset");
}

ImpulseResponse ComputeImpulseResponse(const FilterSpec& spec,
                                       double sample_rate,
                                       double trunc_threshold) {
  CheckThreshold(trunc_threshold);
  if (!(sample_rate > 0.0)) throw DomainError("sample rate must be positive");
  switch (spec.kind) {
    case FilterKind::kGabor:
      return GaborImpulse(spec, sample_rate, trunc_threshold);
    case FilterKind::kGammatone:
      return GammatoneImpulse(spec, sample_rate, trunc_threshold);
    case FilterKind::kTriangular:
      break;
  }
  return TriangleImpulse(spec, sample_rate, trunc_threshold);
}

FilterKind ParseFilterKind(std::string_view name) {
  if (name == "tri" || name == "triangular") return FilterKind::kTriangular;
  if (name == "gabor") return FilterKind::kGabor;
  if (name == "gammatone") return FilterKind::kGammatone;
  throw DomainError("unknown filter kind '" + std::string(name) +
                    "' (expected tri, gabor or gammatone)");
}

std::string_view FilterKindName(FilterKind kind) {
  switch (kind) {
    case FilterKind::kTriangular:
      return "tri";
    case FilterKind::kGabor:
      return "gabor";
    case FilterKind::kGammatone:
      return "gammatone";
  }
  return "?";
}

}  // namespace sifbank

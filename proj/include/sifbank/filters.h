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


#ifndef SIFBANK_FILTERS_H_
#define SIFBANK_FILTERS_H_

#include <complex>
#include <span>
#include <string_view>
#include <vector>

namespace sifbank {

using Complex = std::complex<double>;

enum class FilterKind { kTriangular, kGabor, kGammatone };

// One band-pass filter. Frequencies in `xi` and `sigma_or_alpha` are angular
// (rad/s); `left_hz`/`right_hz` are the triangle vertices for triangular
// filters and the two half-power intersection points otherwise.
//
//   Gabor:      h(t) = C exp(-t^2 / (2 sigma^2)) exp(i xi t)
//   Gammatone:  h(t) = C t^(n-1) exp(-alpha t) exp(i xi t) u(t)
//
// `norm` holds C, chosen so that max |H| = 1 (1 for triangles).
struct FilterSpec {
  FilterKind kind = FilterKind::kTriangular;
  double xi = 0.0;
  double sigma_or_alpha = 0.0;
  int order = 1;
  double left_hz = 0.0;
  double right_hz = 0.0;
  double norm = 1.0;

  double center_hz() const;
};

struct FilterBank {
  std::vector<FilterSpec> specs;
  double sample_rate = 0.0;
  double f_low = 0.0;
  double f_high = 0.0;

  int size() const { return static_cast<int>(specs.size()); }
  FilterKind kind() const { return specs.front().kind; }
};

constexpr int kDefaultGammatoneOrder = 4;
constexpr double kDefaultTruncThreshold = 1e-5;

// Mel-spaced bank on [f_low, f_high]. Triangles use the num + 2 point layout
// of SampleCenters; Gabor and Gammatone filters sit between num + 1
// Mel-uniform edges so that neighbours cross at half power on the shared edge.
FilterBank DesignBank(FilterKind kind, int num_filters, double f_low,
                      double f_high, double sample_rate,
                      int order = kDefaultGammatoneOrder);

// Analytic response. Triangles return their (real) power-domain weight.
Complex FreqResponse(const FilterSpec& spec, double hz);
std::vector<Complex> FreqResponse(const FilterSpec& spec,
                                  std::span<const double> hz);

// The weight applied to |X|^2: triangle weight, or |H|^2.
double PowerResponse(const FilterSpec& spec, double hz);

// PowerResponse at the bins 0 .. dft_size / 2 of a dft_size-point DFT.
std::vector<double> PowerWeights(const FilterSpec& spec, int dft_size,
                                 double sample_rate);

// Point-wise root of the triangle weights. Triangular filters only.
std::vector<double> SqrtResponse(const FilterSpec& spec,
                                 std::span<const double> hz);

// Angular offset from the center at which |H|^2 = 1/2 (Gabor, Gammatone).
double HalfPowerOffset(const FilterSpec& spec);

// Sampled, truncated time response. taps[j] is the filter at time
// (origin + j) / sample_rate, scaled by 1 / sample_rate so that the DFT of
// the taps approximates FreqResponse. taps[peak_delay] is the envelope peak.
struct ImpulseResponse {
  std::vector<Complex> taps;
  int origin = 0;
  int peak_delay = 0;

  int length() const { return static_cast<int>(taps.size()); }
};

// Keeps the samples whose analytic envelope is at least trunc_threshold of
// its peak. Triangular filters are realized as the tapered ideal root-triangle
// kernel; their envelope is the taper.
ImpulseResponse ComputeImpulseResponse(
    const FilterSpec& spec, double sample_rate,
    double trunc_threshold = kDefaultTruncThreshold);

FilterKind ParseFilterKind(std::string_view name);
std::string_view FilterKindName(FilterKind kind);

}  // namespace sifbank

#endif  // SIFBANK_FILTERS_H_

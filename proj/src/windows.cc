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

#include "sifbank/windows.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sifbank/errors.h"

namespace sifbank {

std::vector<double> WindowSamples(WindowKind kind, int length) {
  if (length < 1) {
    throw DomainError("window length must be >= 1, got " +
                      std::to_string(length));
  }
  std::vector<double> w(length, 1.0);
  if (kind == WindowKind::kRectangular || length == 1) return w;

  const double denom = length - 1;
  // Fill the first half and mirror, so w[i] == w[L-1-i] holds bit for bit.
  for (int i = 0; i <= (length - 1) / 2; ++i) {
    const double phase = 2.0 * std::numbers::pi * i / denom;
    double v = 1.0;
    switch (kind) {
      case WindowKind::kHann:
        v = 0.5 - 0.5 * std::cos(phase);
        break;
      case WindowKind::kHamming:
        v = 0.54 - 0.46 * std::cos(phase);
        break;
      case WindowKind::kTriangular:
        v = 1.0 - std::abs(2.0 * i / denom - 1.0);
        break;
      case WindowKind::kRectangular:
        break;
    }
    w[i] = v;
    w[length - 1 - i] = v;
  }
  const double peak = *std::max_element(w.begin(), w.end());
  // Length 2 holds only endpoints, which vanish for Hann and triangular.
  if (peak == 0.0) return std::vector<double>(length, 1.0);
  if (peak != 1.0) {
    for (double& v : w) v /= peak;
  }
  return w;
}

double MainLobeConstant(WindowKind kind, BandwidthCriterion criterion) {
  if (criterion == BandwidthCriterion::kZeroCrossing) {
    return kind == WindowKind::kRectangular ? 1.0 : 2.0;
  }
  switch (kind) {
    case WindowKind::kRectangular:
      return 0.886;
    case WindowKind::kHann:
      return 1.44;
    case WindowKind::kHamming:
      return 1.30;
    case WindowKind::kTriangular:
      return 1.28;
  }
  throw DomainError("unknown window kind");
}

int AutoSiWindowLength(WindowKind kind, int shift, BandwidthCriterion criterion,
                       double sample_rate) {
  if (shift < 1) {
    throw DomainError("shift must be >= 1, got " + std::to_string(shift));
  }
  if (!(sample_rate > 0.0)) throw DomainError("sample_rate must be positive");
  // c / (T / fs) <= fs / (2 * shift)  <=>  T >= 2 c shift. The sample rate
  // cancels; it is kept in the signature so callers state their units.
  const double min_length = 2.0 * MainLobeConstant(kind, criterion) * shift;
  const double rounded = std::round(min_length);
  if (std::abs(min_length - rounded) < 1e-9 * min_length) {
    return static_cast<int>(rounded);
  }
  return static_cast<int>(std::ceil(min_length));
}

WindowKind ParseWindowKind(std::string_view name) {
  if (name == "rectangular" || name == "rect") return WindowKind::kRectangular;
  if (name == "hann" || name == "hanning") return WindowKind::kHann;
  if (name == "hamming") return WindowKind::kHamming;
  if (name == "triangular" || name == "bartlett") {
    return WindowKind::kTriangular;
  }
  throw DomainError("unknown window kind '" + std::string(name) + "'");
}

std::string_view WindowKindName(WindowKind kind) {
  switch (kind) {
    case WindowKind::kRectangular:
      return "rectangular";
    case WindowKind::kHann:
      return "hann";
    case WindowKind::kHamming:
      return "hamming";
    case WindowKind::kTriangular:
      return "triangular";
  }
  return "?";
}

BandwidthCriterion ParseBandwidthCriterion(std::string_view name) {
  if (name == "zero-crossing" || name == "zc") {
    return BandwidthCriterion::kZeroCrossing;
  }
  if (name == "-3db" || name == "3db" || name == "half-power") {
    return BandwidthCriterion::kHalfPower;
  }
  throw DomainError("unsupported bandwidth criterion '" + std::string(name) +
                    "' (expected zero-crossing or -3db)");
}

}  // namespace sifbank

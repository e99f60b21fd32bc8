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

#include "sifbank/scales.h"

#include <cmath>
#include <string>

#include "sifbank/errors.h"

namespace sifbank {
namespace {

constexpr double kMelScale = 1127.0;
constexpr double kMelBreak = 700.0;

void CheckRange(int num_filters, double f_low, double f_high) {
  if (num_filters < 1) {
    throw DomainError("num_filters must be >= 1, got " +
                      std::to_string(num_filters));
  }
  if (!std::isfinite(f_low) || !std::isfinite(f_high) || f_low < 0.0 ||
      f_low >= f_high) {
    throw DomainError("need 0 <= f_low < f_high, got f_low=" +
                      std::to_string(f_low) +
                      " f_high=" + std::to_string(f_high));
  }
}

// n + 1 uniformly spaced Mel values from mel(f_low) to mel(f_high), in Hz.
// The end points are returned exactly rather than through the round trip.
std::vector<double> MelGrid(int intervals, double f_low, double f_high) {
  const double mel_low = HzToMel(f_low);
  const double mel_high = HzToMel(f_high);
  const double step = (mel_high - mel_low) / intervals;
  std::vector<double> hz(intervals + 1);
  hz.front() = f_low;
  hz.back() = f_high;
  for (int i = 1; i < intervals; ++i) hz[i] = MelToHz(mel_low + i * step);
  return hz;
}

}  // namespace

double HzToMel(double hz) {
  if (!std::isfinite(hz) || hz < 0.0) {
    throw DomainError("frequency must be finite and >= 0, got " +
                      std::to_string(hz));
  }
  return kMelScale * std::log1p(hz / kMelBreak);
}

double MelToHz(double mel) {
  if (!std::isfinite(mel) || mel < 0.0) {
    throw DomainError("mel value must be finite and >= 0, got " +
                      std::to_string(mel));
  }
  return kMelBreak * std::expm1(mel / kMelScale);
}

std::vector<CenterSample> SampleCenters(int num_filters, double f_low,
                                        double f_high) {
  CheckRange(num_filters, f_low, f_high);
  const std::vector<double> pts = MelGrid(num_filters + 1, f_low, f_high);
  std::vector<CenterSample> out;
  out.reserve(num_filters);
  for (int k = 0; k < num_filters; ++k) {
    out.push_back({pts[k + 1], pts[k], pts[k + 2]});
  }
  return out;
}

std::vector<double> SampleEdges(int num_filters, double f_low, double f_high) {
  CheckRange(num_filters, f_low, f_high);
  return MelGrid(num_filters, f_low, f_high);
}

}  // namespace sifbank

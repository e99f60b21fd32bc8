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

#ifndef SIFBANK_SCALES_H_
#define SIFBANK_SCALES_H_

#include <vector>

namespace sifbank {

// mel(f) = 1127 ln(1 + f / 700). Throws DomainError for negative or
// non-finite input.
double HzToMel(double hz);
double MelToHz(double mel);

struct MelPoint {
  double hz = 0.0;
  double mel = 0.0;

  static MelPoint FromHz(double hz) { return {hz, HzToMel(hz)}; }
  static MelPoint FromMel(double mel) { return {MelToHz(mel), mel}; }
};

// One sampled filter position. `left_hz` and `right_hz` are the adjacent
// Mel sample points (triangle vertices).
struct CenterSample {
  double center_hz;
  double left_hz;
  double right_hz;
};

// Places num_filters + 2 Mel-uniform points on [mel(f_low), mel(f_high)] and
// returns the inner points with their neighbours.
std::vector<CenterSample> SampleCenters(int num_filters, double f_low,
                                        double f_high);

// num_filters + 1 Mel-uniform points on [mel(f_low), mel(f_high)], in Hz.
// Adjacent Gabor/Gammatone filters intersect at these points.
std::vector<double> SampleEdges(int num_filters, double f_low, double f_high);

}  // namespace sifbank

#endif  // SIFBANK_SCALES_H_

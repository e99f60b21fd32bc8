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

#ifndef SIFBANK_WINDOWS_H_
#define SIFBANK_WINDOWS_H_

#include <string_view>
#include <vector>

namespace sifbank {

enum class WindowKind { kRectangular, kHann, kHamming, kTriangular };

enum class BandwidthCriterion { kZeroCrossing, kHalfPower };

// Symmetric window of `length` samples with maximum exactly 1.
// Throws DomainError for length < 1.
std::vector<double> WindowSamples(WindowKind kind, int length);

// Smallest integration length T (samples) whose main-lobe bandwidth is at
// most 1 / (2 * shift / sample_rate) Hz, using closed-form main-lobe widths.
int AutoSiWindowLength(WindowKind kind, int shift, BandwidthCriterion criterion,
                       double sample_rate);

// Main-lobe width constant c such that bandwidth = c / duration.
double MainLobeConstant(WindowKind kind, BandwidthCriterion criterion);

WindowKind ParseWindowKind(std::string_view name);
std::string_view WindowKindName(WindowKind kind);
BandwidthCriterion ParseBandwidthCriterion(std::string_view name);

}  // namespace sifbank

#endif  // SIFBANK_WINDOWS_H_

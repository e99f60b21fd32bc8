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


#ifndef SIFBANK_FEATURES_H_
#define SIFBANK_FEATURES_H_

#include <cstddef>
#include <vector>

#include "sifbank/windows.h"

namespace sifbank {

// Mono audio in integer-sample units (16-bit range), not normalized.
struct AudioBuffer {
  std::vector<double> samples;
  double sample_rate = 0.0;

  std::size_t size() const { return samples.size(); }
};

// Row-major frames x coefficients.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  // Column layout: [energy?] filters, then `delta_orders` appended copies.
  bool has_energy = false;
  int delta_orders = 0;

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
};

constexpr double kDefaultLogFloor = 1e-10;

struct FrameConfig {
  int shift = 160;
  int frame_length = 400;
  WindowKind window = WindowKind::kHamming;
  int dft_size = 0;  // 0 selects the next power of two >= frame_length.
  bool include_energy = true;
  double log_floor = kDefaultLogFloor;

  int ResolvedDftSize() const;
  // Throws DomainError on an inconsistent configuration.
  void Validate() const;
};

// 1 + (num_samples - frame_length) / shift. Frame i starts at i * shift and
// is centered at i * shift + frame_length / 2.
std::size_t FrameCount(std::size_t num_samples, const FrameConfig& cfg);

}  // namespace sifbank

#endif  // SIFBANK_FEATURES_H_

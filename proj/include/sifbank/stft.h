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


#ifndef SIFBANK_STFT_H_
#define SIFBANK_STFT_H_

#include "sifbank/features.h"
#include "sifbank/filters.h"

namespace sifbank {

// Frame, window, transform, then weight the power spectrum:
//   log(max(floor, sum_b w_k[b] |X[b]|^2)),  b = 0 .. dft_size / 2.
// With include_energy the first column is the log energy of the raw frame.
FeatureMatrix StftFeatures(const AudioBuffer& audio, const FilterBank& bank,
                           const FrameConfig& cfg);

// The same coefficients computed in the time domain: each windowed frame is
// circularly filtered by the root of the filter weights and |y|^2 summed.
// Agrees with StftFeatures by Parseval; kept as a cross-check.
FeatureMatrix StftFeaturesTimeForm(const AudioBuffer& audio,
                                   const FilterBank& bank,
                                   const FrameConfig& cfg);

}  // namespace sifbank

#endif  // SIFBANK_STFT_H_

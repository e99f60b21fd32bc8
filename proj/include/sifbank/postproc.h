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


#ifndef SIFBANK_POSTPROC_H_
#define SIFBANK_POSTPROC_H_

#include "sifbank/features.h"

namespace sifbank {

// Regression deltas over `context` frames per side; frames past either end
// are replaced by the nearest edge frame.
struct DeltaConfig {
  int context = 2;
};

// d_t = sum_{tau=1..K} tau (x_{t+tau} - x_{t-tau}) / (2 sum tau^2).
FeatureMatrix Deltas(const FeatureMatrix& features, const DeltaConfig& cfg = {});

// [static | deltas | double deltas] per frame.
FeatureMatrix Assemble(const FeatureMatrix& features,
                       const DeltaConfig& cfg = {});

}  // namespace sifbank

#endif  // SIFBANK_POSTPROC_H_

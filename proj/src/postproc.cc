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


#include "sifbank/postproc.h"

#include <algorithm>
#include <string>

#include "sifbank/errors.h"

namespace sifbank {
namespace {

void CheckInput(const FeatureMatrix& m, const DeltaConfig& cfg) {
  if (m.rows == 0 || m.cols == 0) throw DomainError("feature matrix is empty");
  if (cfg.context < 1) {
    throw DomainError("delta context must be >= 1, got " +
                      std::to_string(cfg.context));
  }
}

}  // namespace

FeatureMatrix Deltas(const FeatureMatrix& features, const DeltaConfig& cfg) {
  CheckInput(features, cfg);
  const auto rows = static_cast<long>(features.rows);
  const int k = cfg.context;
  double denom = 0.0;
  for (int tau = 1; tau <= k; ++tau) denom += tau * tau;
  denom *= 2.0;

  FeatureMatrix out = features;
  for (long t = 0; t < rows; ++t) {
    for (std::size_t c = 0; c < features.cols; ++c) {
      double acc = 0.0;
      for (int tau = 1; tau <= k; ++tau) {
        const long ahead = std::min(t + tau, rows - 1);
        const long behind = std::max(t - tau, 0L);
        acc += tau * (features.at(ahead, c) - features.at(behind, c));
      }
      out.at(t, c) = acc / denom;
    }
  }
  return out;
}

FeatureMatrix Assemble(const FeatureMatrix& features, const DeltaConfig& cfg) {
  const FeatureMatrix d1 = Deltas(features, cfg);
  const FeatureMatrix d2 = Deltas(d1, cfg);
  FeatureMatrix out;
  out.rows = features.rows;
  out.cols = 3 * features.cols;
  out.has_energy = features.has_energy;
  out.delta_orders = features.delta_orders + 2;
  out.values.resize(out.rows * out.cols);
  const std::size_t c = features.cols;
  for (std::size_t r = 0; r < out.rows; ++r) {
    double* row = out.values.data() + r * out.cols;
    std::copy_n(features.values.data() + r * c, c, row);
    std::copy_n(d1.values.data() + r * c, c, row + c);
    std::copy_n(d2.values.data() + r * c, c, row + 2 * c);
  }
  return out;
}

}  // namespace sifbank

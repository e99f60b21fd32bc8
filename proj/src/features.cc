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


#include "sifbank/features.h"

#include <string>

#include "sifbank/errors.h"
#include "sifbank/fft.h"

namespace sifbank {

int FrameConfig::ResolvedDftSize() const {
  if (dft_size != 0) return dft_size;
  return static_cast<int>(NextPowerOfTwo(static_cast<std::size_t>(frame_length)));
}

void FrameConfig::Validate() const {
  if (shift < 1) {
    throw DomainError("frame shift must be >= 1, got " + std::to_string(shift));
  }
  if (frame_length < shift) {
    throw DomainError("frame length " + std::to_string(frame_length) +
                      " must be >= shift " + std::to_string(shift));
  }
  if (dft_size != 0 &&
      (!IsPowerOfTwo(static_cast<std::size_t>(dft_size)) ||
       dft_size < frame_length)) {
    throw DomainError("dft_size must be a power of two >= frame length, got " +
                      std::to_string(dft_size));
  }
  if (!(log_floor > 0.0)) throw DomainError("log_floor must be positive");
}

std::size_t FrameCount(std::size_t num_samples, const FrameConfig& cfg) {
  cfg.Validate();
  const auto length = static_cast<std::size_t>(cfg.frame_length);
  if (num_samples < length) {
    throw DomainError("signal shorter than one frame (" +
                      std::to_string(num_samples) + " < " +
                      std::to_string(length) + " samples)");
  }
  return 1 + (num_samples - length) / static_cast<std::size_t>(cfg.shift);
}

}  // namespace sifbank

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


#ifndef SIFBANK_AUDIO_H_
#define SIFBANK_AUDIO_H_

#include <cstdint>
#include <filesystem>
#include <string_view>

#include "sifbank/features.h"

namespace sifbank {

// RIFF/WAVE, 16-bit PCM, one channel. Samples keep their integer values.
// Throws IoError when the file cannot be read and FormatError for malformed,
// multi-channel ("mono required") or non-PCM16 content.
AudioBuffer ReadWav(const std::filesystem::path& path);

// Writes 16-bit mono PCM; samples are rounded and clamped to the int16 range.
void WriteWav(const std::filesystem::path& path, const AudioBuffer& audio);

// Adds N(0, amount^2) noise from a generator seeded with `seed`.
// amount 0 returns the input unchanged.
AudioBuffer Dither(const AudioBuffer& audio, double amount = 1.0,
                   std::uint64_t seed = 0);

// y[0] = (1 - coeff) x[0], y[t] = x[t] - coeff x[t - 1]. coeff in [0, 1).
AudioBuffer PreEmphasize(const AudioBuffer& audio, double coeff = 0.97);

enum class FeatureFormat { kBinary, kCsv };

FeatureFormat ParseFeatureFormat(std::string_view name);

// Binary layout: "FBK1", rows and cols as little-endian uint32, then
// rows * cols little-endian float32 values, row-major. CSV: one frame per
// line, shortest decimal form that reads back to the same double.
void WriteFeatures(const FeatureMatrix& m, const std::filesystem::path& path,
                   FeatureFormat format);

FeatureMatrix ReadFeatures(const std::filesystem::path& path);
FeatureMatrix ReadFeaturesCsv(const std::filesystem::path& path);

}  // namespace sifbank

#endif  // SIFBANK_AUDIO_H_

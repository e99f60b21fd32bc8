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


#ifndef SIFBANK_CLI_H_
#define SIFBANK_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "sifbank/audio.h"
#include "sifbank/features.h"

namespace sifbank {

// Command-line settings. Defaults give 40 log filters plus energy every
// 10 ms over 25 ms frames, with deltas and double deltas (123 columns).
struct CliConfig {
  std::string filter = "tri";
  std::string method = "stft";
  int num_filters = 40;
  double low_hz = 20.0;
  double high_hz = 8000.0;
  double shift_ms = 10.0;
  double frame_ms = 25.0;
  double si_window_ms = 20.0;
  // Empty: derive the SI window from si_window_ms. Otherwise
  // "zero-crossing" or "-3db" picks the length from the frame shift.
  std::string si_window_criterion;
  // Empty: Hamming for stft, Hann for si.
  std::string window;
  int order = 4;
  bool deltas = true;
  bool energy = true;
  double dither = 1.0;
  std::uint64_t seed = 0;
  double preemph = 0.97;
  bool delay_compensation = true;
  int block_size = 0;
  std::string format = "binary";
  std::string output;
};

// Dither seed for one utterance of a batch: independent of list order.
std::uint64_t UtteranceSeed(std::uint64_t seed, std::string_view utterance_id);

// What `compute` does between reading and writing: dither, pre-emphasis,
// pipeline, deltas.
// Flag problems throw DomainError naming the flag.
FeatureMatrix ComputeFeatures(const AudioBuffer& audio, const CliConfig& cfg,
                              std::uint64_t seed);

// Entry point of the sifbank tool. Returns the process exit status (0 or 1);
// failures print one "error: ..." line to `err`.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace sifbank

#endif  // SIFBANK_CLI_H_

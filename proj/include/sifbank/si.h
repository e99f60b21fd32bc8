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


#ifndef SIFBANK_SI_H_
#define SIFBANK_SI_H_

#include <span>
#include <vector>

#include "sifbank/features.h"
#include "sifbank/filters.h"

namespace sifbank {

enum class SiEngine {
  kOverlapSave,  // block FFT convolution (production path)
  kDirect,       // time-domain convolution with the same taps (oracle)
};


struct SiConfig {
  int shift = 160;
  // Frame length of the paired STFT configuration. Frame count and centers
  // are taken from it so both pipelines produce the same rows.
  int frame_length = 400;
  int integ_length = 320;
  WindowKind window = WindowKind::kHann;
  int block_size = 0;  // 0 selects DefaultBlockSize.
  bool delay_compensation = true;
  bool include_energy = true;
  double log_floor = kDefaultLogFloor;
  double trunc_threshold = kDefaultTruncThreshold;
  // Block spectra keep only bins where |H| >= band_threshold * max |H|.
  // 0 keeps every bin; negative selects DefaultBandThreshold.
  double band_threshold = -1.0;
  SiEngine engine = SiEngine::kOverlapSave;

  void Validate() const;
};

// Band threshold used when SiConfig::band_threshold is negative. The
// tapered root-triangle kernels have broad low-level skirts and need a lower
// threshold than Gabor or Gammatone kernels for the same accuracy.
double DefaultBandThreshold(FilterKind kind);

// Shift, frame length, energy flag and floor copied from `frames`;
// integration length 2 * shift.
SiConfig PairedSiConfig(const FrameConfig& frames);

// How far the output is advanced: y(t) = sum_j taps[j] x[t + lead - j].
// With compensation the envelope peak lands on t; without it the filter is
// applied causally (non-causal kernels are delayed until causal).
int ConvolutionLead(const ImpulseResponse& ir, bool delay_compensation);

// Smallest power of two accepted as the block size for `filter_length`
// taps: 2 * filter_length, rounded up.
int MinBlockSize(int filter_length);

// Block size used when cfg.block_size is 0: at least
// next_pow2(max(4 L, 2 (L + integ_length))) for the longest span L of the
// bank's kernels, raised while an operation-count estimate for a signal of
// num_samples keeps falling.
int DefaultBlockSize(const FilterBank& bank, const SiConfig& cfg,
                     std::size_t num_samples);

// Linear convolution of the zero-extended signal with the truncated filter,
// by overlap-save with FFTs of block_size points. Output has the input's
// length; sample t is y(t) with the lead of ConvolutionLead.
std::vector<Complex> OverlapSaveConvolve(
    std::span<const double> signal, const FilterSpec& spec, double sample_rate,
    int block_size, bool delay_compensation = true,
    double trunc_threshold = kDefaultTruncThreshold);

// Same output as OverlapSaveConvolve, summed directly in time.
std::vector<Complex> DirectConvolve(std::span<const double> signal,
                                    const ImpulseResponse& ir, int lead);

// log(max(floor, sum_u w[u] |y_k(s_i + u)|^2)) with s_i = c_i - T / 2 and
// c_i the STFT frame centers. Convolution tails past the signal ends are
// included; energy is the raw sum of squares over the same window.
FeatureMatrix SiFeatures(const AudioBuffer& audio, const FilterBank& bank,
                         const SiConfig& cfg);

}  // namespace sifbank

#endif  // SIFBANK_SI_H_

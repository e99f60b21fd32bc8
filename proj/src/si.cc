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


#include "sifbank/si.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <numbers>
#include <string>

#include "sifbank/errors.h"
#include "sifbank/fft.h"
#include "sifbank/simd/kernels.h"

namespace sifbank {
namespace {

using Index = std::int64_t;

double SampleAt(std::span<const double> x, Index t) {
  return (t >= 0 && t < static_cast<Index>(x.size())) ? x[t] : 0.0;
}

double LogOf(double e, double floor) { return std::log(std::max(floor, e)); }

void CheckBlockSize(int block_size, int span) {
  const int minimum = MinBlockSize(span);
  if (block_size < minimum || !IsPowerOfTwo(block_size)) {
    throw DomainError("block_size " + std::to_string(block_size) +
                      " too small or not a power of two; minimum is " +
                      std::to_string(minimum));
  }
}

struct Kernel {
  ImpulseResponse ir;
  int lead = 0;
};

std::vector<Kernel> BuildKernels(const FilterBank& bank, const SiConfig& cfg) {
  std::vector<Kernel> kernels;
  kernels.reserve(bank.specs.size());
  for (const FilterSpec& spec : bank.specs) {
    Kernel k;
    k.ir = ComputeImpulseResponse(spec, bank.sample_rate, cfg.trunc_threshold);
    k.lead = ConvolutionLead(k.ir, cfg.delay_compensation);
    kernels.push_back(std::move(k));
  }
  return kernels;
}

// All kernels written against one input block: y(t0 + r) reads
// x[t0 + offset + q] for q in [r, r + length). Kernel taps land at
// q = j + offset + length - 1 - lead.
struct CommonSpan {
  Index offset = 0;
  int length = 1;
};

CommonSpan SpanOf(const std::vector<Kernel>& kernels) {
  Index lo = 0;
  Index hi = 0;
  bool first = true;
  for (const Kernel& k : kernels) {
    const Index a = k.lead - k.ir.length() + 1;
    const Index b = k.lead;
    lo = first ? a : std::min(lo, a);
    hi = first ? b : std::max(hi, b);
    first = false;
  }
  return {lo, static_cast<int>(hi - lo + 1)};
}

// The circular run of bins that survives band limiting, with the kernel
// spectrum on it.
struct Band {
  int first = 0;
  int width = 0;
  std::vector<Complex> k;
  bool spectral = false;
  int m = 0;  // spectral integration size
};

Band SelectBand(const std::vector<Complex>& spectrum, double threshold) {
  const int n = static_cast<int>(spectrum.size());
  Band band;
  band.width = n;
  double peak = 0.0;
  int peak_bin = 0;
  for (int d = 0; d < n; ++d) {
    const double a = std::abs(spectrum[d]);
    if (a > peak) {
      peak = a;
      peak_bin = d;
    }
  }
  if (threshold > 0.0 && peak > 0.0) {
    const double cut = threshold * peak;
    // Scan from an in-band bin so no run of dropped bins wraps the start.
    int best_start = 0;
    int best_len = 0;
    int run_start = 0;
    int run_len = 0;
    for (int i = 1; i <= n; ++i) {
      const int d = (peak_bin + i) % n;
      if (i < n && std::abs(spectrum[d]) < cut) {
        if (run_len == 0) run_start = d;
        ++run_len;
      } else {
        if (run_len > best_len) {
          best_len = run_len;
          best_start = run_start;
        }
        run_len = 0;
      }
    }
    if (best_len > 0) {
      band.first = (best_start + best_len) % n;
      band.width = n - best_len;
    }
  }
  band.k.resize(band.width);
  for (int e = 0; e < band.width; ++e) {
    band.k[e] = spectrum[(band.first + e) % n];
  }
  return band;
}

double BandThreshold(const FilterBank& bank, const SiConfig& cfg) {
  return cfg.band_threshold < 0.0 ? DefaultBandThreshold(bank.kind())
                                  : cfg.band_threshold;
}

int LowestSetBit(int v) { return v & -v; }

// Rough operation counts, used only to pick between code paths.
double FftCost(double n) { return 5.0 * n * std::log2(std::max(n, 2.0)); }

int FramesPerBlock(int block, int span, int integ, int shift) {
  const int room = block - span + 1 - integ;
  return room < 0 ? 0 : room / shift + 1;
}

// Integrating from the band spectrum is exact and costs O(M log M) for a
// band of W bins (M >= 2W, and B / M must divide the shift); the
// alternative is a full-rate inverse transform plus windowed sums.
void ChooseIntegration(Band& band, int block, int shift, int frames_per_block,
                       int integ_length, double* cost = nullptr) {
  const int m = static_cast<int>(std::max<std::size_t>(
      NextPowerOfTwo(2 * static_cast<std::size_t>(band.width)),
      static_cast<std::size_t>(block / std::min(block, LowestSetBit(shift)))));
  band.m = m;
  const double full_cost = FftCost(block) + 3.0 * block +
                           2.0 * frames_per_block * integ_length;
  const double spectral_cost = 2.0 * FftCost(m);
  band.spectral = m <= block / 2 && spectral_cost < full_cost;
  if (cost != nullptr) {
    *cost = (band.spectral ? spectral_cost : full_cost) + 6.0 * band.width;
  }
}

// Places every kernel in the common block frame and band-limits its block
// spectrum.
std::vector<Band> BlockBands(const std::vector<Kernel>& kernels,
                             const CommonSpan& span, int block,
                             double threshold) {
  ComplexFft fft(block);
  std::vector<Complex> placed(block);
  std::vector<Complex> spectrum(block);
  std::vector<Band> bands;
  bands.reserve(kernels.size());
  for (const Kernel& k : kernels) {
    std::fill(placed.begin(), placed.end(), Complex(0.0, 0.0));
    const Index q0 = span.offset + span.length - 1 - k.lead;
    for (int j = 0; j < k.ir.length(); ++j) placed[q0 + j] = k.ir.taps[j];
    fft.Forward(placed, spectrum);
    bands.push_back(SelectBand(spectrum, threshold));
  }
  return bands;
}

// The smallest block allowed by default: next_pow2(max(4 L, 2 (L + T))).
int RuleBlockSize(int span, int integ) {
  const std::size_t l = span;
  return static_cast<int>(NextPowerOfTwo(
      std::max(4 * l, 2 * (l + static_cast<std::size_t>(integ)))));
}

constexpr int kMaxAutoBlock = 1 << 16;

// Larger blocks waste less of each transform on the kernel overlap but make
// every transform more expensive. Band widths scale with the block, so the
// estimate extrapolates the widths measured at the rule size.
int ChooseBlockSize(const std::vector<Band>& rule_bands, int rule, int span,
                    const SiConfig& cfg, std::size_t rows) {
  int best = rule;
  double best_cost = HUGE_VAL;
  for (int block = rule; block <= std::max(rule, kMaxAutoBlock); block *= 2) {
    const int per_block =
        FramesPerBlock(block, span, cfg.integ_length, cfg.shift);
    if (per_block == 0) continue;
    const double blocks = std::ceil(static_cast<double>(rows) / per_block);
    double cost = 0.5 * FftCost(block);
    for (const Band& b : rule_bands) {
      Band scaled;
      scaled.width = static_cast<int>(
          std::min<double>(block, std::ceil(static_cast<double>(b.width) *
                                            (block / rule))));
      double c = 0.0;
      ChooseIntegration(scaled, block, cfg.shift, per_block, cfg.integ_length,
                        &c);
      cost += c;
    }
    cost *= blocks;
    if (cost < best_cost) {
      best_cost = cost;
      best = block;
    }
    if (static_cast<std::size_t>(per_block) >= rows) break;
  }
  return best;
}

struct SpectralPlans {
  explicit SpectralPlans(int m)
      : inverse(m), real(m), padded(m), zeta(m), power(m), half(m / 2 + 1),
        energy(m) {}
  ComplexFft inverse;
  RealFft real;
  std::vector<Complex> padded;
  std::vector<Complex> zeta;
  std::vector<double> power;
  std::vector<Complex> half;
  std::vector<double> energy;
};

void CheckInputs(const AudioBuffer& audio, const FilterBank& bank,
                 const SiConfig& cfg) {
  cfg.Validate();
  if (bank.specs.empty()) throw DomainError("filter bank is empty");
  if (audio.sample_rate != bank.sample_rate) {
    throw DomainError("sample rate mismatch: audio " +
                      std::to_string(audio.sample_rate) + " Hz, bank " +
                      std::to_string(bank.sample_rate) + " Hz");
  }
}

struct Frames {
  std::size_t rows = 0;
  Index first_start = 0;  // s_0; may be negative
};

Frames FramesOf(std::size_t num_samples, const SiConfig& cfg) {
  FrameConfig fc;
  fc.shift = cfg.shift;
  fc.frame_length = cfg.frame_length;
  Frames f;
  f.rows = FrameCount(num_samples, fc);
  f.first_start = cfg.frame_length / 2 - cfg.integ_length / 2;
  return f;
}

FeatureMatrix EmptyMatrix(const Frames& frames, const FilterBank& bank,
                          bool energy) {
  FeatureMatrix m;
  m.rows = frames.rows;
  m.cols = bank.specs.size() + (energy ? 1 : 0);
  m.has_energy = energy;
  m.values.assign(m.rows * m.cols, 0.0);
  return m;
}

void FillEnergy(std::span<const double> x, const Frames& frames,
                const SiConfig& cfg, FeatureMatrix& m) {
  const Index n = static_cast<Index>(x.size());
  for (std::size_t i = 0; i < frames.rows; ++i) {
    const Index s = frames.first_start + static_cast<Index>(i) * cfg.shift;
    const Index a = std::max<Index>(s, 0);
    const Index b = std::min<Index>(s + cfg.integ_length, n);
    double e = 0.0;
    for (Index t = a; t < b; ++t) e += x[t] * x[t];
    m.at(i, 0) = LogOf(e, cfg.log_floor);
  }
}

void OverlapSaveFeatures(std::span<const double> x, const FilterBank& bank,
                         const SiConfig& cfg, const Frames& frames,
                         FeatureMatrix& m) {
  const simd::KernelTable& kt = simd::ActiveKernels();
  const std::vector<Kernel> kernels = BuildKernels(bank, cfg);
  const CommonSpan span = SpanOf(kernels);
  const int integ = cfg.integ_length;
  int block = cfg.block_size;
  std::vector<Band> bands;
  if (block == 0) {
    const int rule = std::max(RuleBlockSize(span.length, integ),
                              MinBlockSize(span.length));
    bands = BlockBands(kernels, span, rule, BandThreshold(bank, cfg));
    block = ChooseBlockSize(bands, rule, span.length, cfg, frames.rows);
    if (block != rule) bands.clear();
  }
  CheckBlockSize(block, span.length);
  const int useful = block - span.length + 1;
  if (useful < integ) {
    throw DomainError(
        "block_size " + std::to_string(block) +
        " leaves no room for one integration window; minimum is " +
        std::to_string(NextPowerOfTwo(span.length - 1 + integ)));
  }
  const int per_block = (useful - integ) / cfg.shift + 1;
  const std::size_t col0 = cfg.include_energy ? 1 : 0;

  if (bands.empty()) {
    bands = BlockBands(kernels, span, block, BandThreshold(bank, cfg));
  }
  for (Band& band : bands) {
    ChooseIntegration(band, block, cfg.shift, per_block, integ);
  }
  ComplexFft full(block);

  const std::vector<double> window = WindowSamples(cfg.window, integ);
  const double inv_b2 = 1.0 / (static_cast<double>(block) * block);

  // Phi[d] = conj(W_d) e^{2 pi i d n0 / B} / B^2, with W the block DFT of the
  // window and n0 the position of the first frame of a block.
  std::vector<Complex> phi(block / 2 + 1);
  RealFft real_block(block);
  {
    std::vector<double> padded(block, 0.0);
    std::copy(window.begin(), window.end(), padded.begin());
    real_block.Forward(padded, phi);
    const double n0 = span.length - 1;
    for (int d = 0; d <= block / 2; ++d) {
      const double phase = 2.0 * std::numbers::pi * d * n0 / block;
      phi[d] = std::conj(phi[d]) * std::polar(inv_b2, phase);
    }
  }

  std::map<int, std::unique_ptr<SpectralPlans>> plans;
  for (const Band& b : bands) {
    if (b.spectral && plans.find(b.m) == plans.end()) {
      plans[b.m] = std::make_unique<SpectralPlans>(b.m);
    }
  }

  std::vector<double> input(block);
  std::vector<Complex> half(block / 2 + 1);
  std::vector<Complex> u(block);
  std::vector<Complex> z(block);
  std::vector<Complex> padded_full(block);
  std::vector<Complex> zt(block);

  for (std::size_t f0 = 0; f0 < frames.rows; f0 += per_block) {
    const std::size_t count =
        std::min<std::size_t>(per_block, frames.rows - f0);
    const Index t0 = frames.first_start + static_cast<Index>(f0) * cfg.shift;
    for (int q = 0; q < block; ++q) input[q] = SampleAt(x, t0 + span.offset + q);
    real_block.Forward(input, half);
    for (int d = 0; d <= block / 2; ++d) u[d] = half[d];
    for (int d = block / 2 + 1; d < block; ++d) u[d] = std::conj(half[block - d]);

    for (std::size_t k = 0; k < bands.size(); ++k) {
      const Band& b = bands[k];
      // Z on the band, possibly wrapping past bin B - 1.
      const int head = std::min(b.width, block - b.first);
      kt.complex_multiply(u.data() + b.first, b.k.data(), z.data(), head);
      kt.complex_multiply(u.data(), b.k.data() + head, z.data() + head,
                          b.width - head);
      if (b.spectral) {
        SpectralPlans& p = *plans[b.m];
        const int mm = b.m;
        std::fill(p.padded.begin(), p.padded.end(), Complex(0.0, 0.0));
        std::copy(z.begin(), z.begin() + b.width, p.padded.begin());
        p.inverse.Backward(p.padded, p.zeta);
        kt.norm_squared(p.zeta.data(), p.power.data(), mm);
        p.real.Forward(p.power, p.half);
        const double inv_m = 1.0 / mm;
        for (int d = 0; d < mm / 2; ++d) p.half[d] *= phi[d] * inv_m;
        p.half[mm / 2] = 0.0;
        p.real.Backward(p.half, p.energy);
        const int step = block / mm;
        for (std::size_t i = 0; i < count; ++i) {
          const double e = p.energy[(i * cfg.shift) / step];
          m.at(f0 + i, col0 + k) = LogOf(e, cfg.log_floor);
        }
      } else {
        std::fill(padded_full.begin(), padded_full.end(), Complex(0.0, 0.0));
        for (int e = 0; e < b.width; ++e) {
          padded_full[(b.first + e) % block] = z[e];
        }
        full.Backward(padded_full, zt);
        for (std::size_t i = 0; i < count; ++i) {
          const std::size_t p = span.length - 1 + i * cfg.shift;
          const double e =
              kt.weighted_norm(window.data(), zt.data() + p, integ) * inv_b2;
          m.at(f0 + i, col0 + k) = LogOf(e, cfg.log_floor);
        }
      }
    }
  }
}

// y(t) for t in [begin, begin + out.size()).
void DirectRange(std::span<const double> x, const ImpulseResponse& ir,
                 int lead, Index begin, std::span<Complex> out) {
  const Index n = static_cast<Index>(x.size());
  const int len = ir.length();
  for (std::size_t r = 0; r < out.size(); ++r) {
    const Index base = begin + static_cast<Index>(r) + lead;
    // x index base - j must be in [0, n).
    const Index j_lo = std::max<Index>(0, base - n + 1);
    const Index j_hi = std::min<Index>(len - 1, base);
    Complex acc(0.0, 0.0);
    for (Index j = j_lo; j <= j_hi; ++j) acc += ir.taps[j] * x[base - j];
    out[r] = acc;
  }
}

void DirectFeatures(std::span<const double> x, const FilterBank& bank,
                    const SiConfig& cfg, const Frames& frames,
                    FeatureMatrix& m) {
  const std::vector<Kernel> kernels = BuildKernels(bank, cfg);
  const std::vector<double> window = WindowSamples(cfg.window, cfg.integ_length);
  const std::size_t col0 = cfg.include_energy ? 1 : 0;
  const Index begin = frames.first_start;
  const std::size_t length =
      (frames.rows - 1) * cfg.shift + static_cast<std::size_t>(cfg.integ_length);
  std::vector<Complex> y(length);
  for (std::size_t k = 0; k < kernels.size(); ++k) {
    DirectRange(x, kernels[k].ir, kernels[k].lead, begin, y);
    for (std::size_t i = 0; i < frames.rows; ++i) {
      double e = 0.0;
      for (int u = 0; u < cfg.integ_length; ++u) {
        e += window[u] * std::norm(y[i * cfg.shift + u]);
      }
      m.at(i, col0 + k) = LogOf(e, cfg.log_floor);
    }
  }
}

}  // namespace

void SiConfig::Validate() const {
  if (shift < 1) {
    throw DomainError("frame shift must be >= 1, got " + std::to_string(shift));
  }
  if (frame_length < shift) {
    throw DomainError("frame length " + std::to_string(frame_length) +
                      " must be >= shift " + std::to_string(shift));
  }
  if (integ_length < 1) {
    throw DomainError("integration length must be >= 1, got " +
                      std::to_string(integ_length));
  }
  if (block_size < 0 ||
      (block_size != 0 && !IsPowerOfTwo(static_cast<std::size_t>(block_size)))) {
    throw DomainError("block_size must be a power of two, got " +
                      std::to_string(block_size));
  }
  if (!(log_floor > 0.0)) throw DomainError("log_floor must be positive");
  if (!(trunc_threshold > 0.0 && trunc_threshold <= 1.0)) {
    throw DomainError("trunc_threshold must be in (0, 1]");
  }
  if (!(band_threshold < 1.0)) {
    throw DomainError("band_threshold must be below 1");
  }
}

double DefaultBandThreshold(FilterKind kind) {
  return kind == FilterKind::kTriangular ? 1e-7 : 1e-6;
}

SiConfig PairedSiConfig(const FrameConfig& frames) {
  SiConfig cfg;
  cfg.shift = frames.shift;
  cfg.frame_length = frames.frame_length;
  cfg.integ_length = 2 * frames.shift;
  cfg.include_energy = frames.include_energy;
  cfg.log_floor = frames.log_floor;
  return cfg;
}

int ConvolutionLead(const ImpulseResponse& ir, bool delay_compensation) {
  if (delay_compensation) return ir.peak_delay;
  return -std::max(ir.origin, 0);
}

int MinBlockSize(int filter_length) {
  return static_cast<int>(
      NextPowerOfTwo(2 * static_cast<std::size_t>(std::max(filter_length, 1))));
}

int DefaultBlockSize(const FilterBank& bank, const SiConfig& cfg,
                     std::size_t num_samples) {
  cfg.Validate();
  const std::vector<Kernel> kernels = BuildKernels(bank, cfg);
  const CommonSpan span = SpanOf(kernels);
  const int rule = std::max(RuleBlockSize(span.length, cfg.integ_length),
                            MinBlockSize(span.length));
  const std::vector<Band> bands =
      BlockBands(kernels, span, rule, BandThreshold(bank, cfg));
  return ChooseBlockSize(bands, rule, span.length, cfg,
                         FramesOf(num_samples, cfg).rows);
}

std::vector<Complex> OverlapSaveConvolve(std::span<const double> signal,
                                         const FilterSpec& spec,
                                         double sample_rate, int block_size,
                                         bool delay_compensation,
                                         double trunc_threshold) {
  const ImpulseResponse ir =
      ComputeImpulseResponse(spec, sample_rate, trunc_threshold);
  const int len = ir.length();
  CheckBlockSize(block_size, len);
  const int lead = ConvolutionLead(ir, delay_compensation);
  const int useful = block_size - len + 1;
  const Index offset = lead - len + 1;

  ComplexFft fft(block_size);
  std::vector<Complex> taps(block_size, Complex(0.0, 0.0));
  std::copy(ir.taps.begin(), ir.taps.end(), taps.begin());
  std::vector<Complex> h(block_size);
  fft.Forward(taps, h);

  const double inv_b = 1.0 / block_size;
  const Index n = static_cast<Index>(signal.size());
  std::vector<Complex> out(signal.size());
  std::vector<Complex> u(block_size);
  std::vector<Complex> spectrum(block_size);
  std::vector<Complex> z(block_size);
  for (Index t0 = 0; t0 < n; t0 += useful) {
    for (int q = 0; q < block_size; ++q) {
      u[q] = SampleAt(signal, t0 + offset + q);
    }
    fft.Forward(u, spectrum);
    for (int d = 0; d < block_size; ++d) spectrum[d] *= h[d];
    fft.Backward(spectrum, z);
    for (int r = 0; r < useful && t0 + r < n; ++r) {
      out[t0 + r] = z[r + len - 1] * inv_b;
    }
  }
  return out;
}

std::vector<Complex> DirectConvolve(std::span<const double> signal,
                                    const ImpulseResponse& ir, int lead) {
  std::vector<Complex> out(signal.size());
  DirectRange(signal, ir, lead, 0, out);
  return out;
}

FeatureMatrix SiFeatures(const AudioBuffer& audio, const FilterBank& bank,
                         const SiConfig& cfg) {
  CheckInputs(audio, bank, cfg);
  const Frames frames = FramesOf(audio.size(), cfg);
  FeatureMatrix m = EmptyMatrix(frames, bank, cfg.include_energy);
  const std::span<const double> x(audio.samples);
  if (cfg.include_energy) FillEnergy(x, frames, cfg, m);
  if (cfg.engine == SiEngine::kDirect) {
    DirectFeatures(x, bank, cfg, frames, m);
  } else {
    OverlapSaveFeatures(x, bank, cfg, frames, m);
  }
  return m;
}

}  // namespace sifbank

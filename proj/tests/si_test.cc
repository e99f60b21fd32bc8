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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sifbank/errors.h"
#include "sifbank/fft.h"
#include "sifbank/stft.h"
#include "test_util.h"

namespace sifbank {
namespace {

using testing::Audio;
using testing::GaussianNoise;
using testing::MaxAbsDiff;

constexpr double kFs = 16000.0;
constexpr FilterKind kKinds[] = {FilterKind::kTriangular, FilterKind::kGabor,
                                 FilterKind::kGammatone};

FilterBank Bank(FilterKind kind) {
  return DesignBank(kind, 40, 20.0, 8000.0, kFs);
}

double PeakAbs(const std::vector<Complex>& y) {
  double m = 0.0;
  for (const Complex& c : y) m = std::max(m, std::abs(c));
  return m;
}

TEST(ConvolutionLeadTest, CompensatedAndCausal) {
  const FilterBank gabor = Bank(FilterKind::kGabor);
  const ImpulseResponse g = ComputeImpulseResponse(gabor.specs[0], kFs);
  EXPECT_EQ(ConvolutionLead(g, true), 440);
  EXPECT_EQ(ConvolutionLead(g, false), 0);
  const FilterBank gt = Bank(FilterKind::kGammatone);
  const ImpulseResponse t = ComputeImpulseResponse(gt.specs[0], kFs);
  EXPECT_EQ(ConvolutionLead(t, true), t.peak_delay);
  EXPECT_EQ(ConvolutionLead(t, false), -t.origin);
}

TEST(MinBlockSizeTest, PowerOfTwoAtLeastTwiceLength) {
  EXPECT_EQ(MinBlockSize(1), 2);
  EXPECT_EQ(MinBlockSize(881), 2048);
  EXPECT_EQ(MinBlockSize(1024), 2048);
  EXPECT_EQ(MinBlockSize(1025), 4096);
}

TEST(OverlapSaveConvolveTest, MatchesDirectAndBruteForce) {
  const std::vector<double> x = GaussianNoise(4000, 11);
  for (FilterKind kind : kKinds) {
    const FilterBank bank = Bank(kind);
    for (int k : {0, 17, 39}) {
      const FilterSpec& s = bank.specs[k];
      const ImpulseResponse ir = ComputeImpulseResponse(s, kFs);
      for (bool comp : {true, false}) {
        const int lead = ConvolutionLead(ir, comp);
        const std::vector<Complex> brute =
            testing::BruteConvolve(x, ir, lead, 0, x.size());
        const std::vector<Complex> direct = DirectConvolve(x, ir, lead);
        const double scale = PeakAbs(brute);
        for (int block : {MinBlockSize(ir.length()), 4 * MinBlockSize(ir.length())}) {
          const std::vector<Complex> os =
              OverlapSaveConvolve(x, s, kFs, block, comp);
          ASSERT_EQ(os.size(), x.size());
          for (std::size_t t = 0; t < x.size(); ++t) {
            ASSERT_LT(std::abs(os[t] - brute[t]), 1e-10 * scale)
                << FilterKindName(kind) << " k " << k << " t " << t;
            ASSERT_LT(std::abs(direct[t] - brute[t]), 1e-12 * scale);
          }
        }
      }
    }
  }
}

TEST(OverlapSaveConvolveTest, ImpulseLandsOnThePeak) {
  std::vector<double> x(6000, 0.0);
  x[2500] = 1.0;
  for (FilterKind kind : {FilterKind::kGabor, FilterKind::kGammatone}) {
    const FilterSpec s = Bank(kind).specs[12];
    const ImpulseResponse ir = ComputeImpulseResponse(s, kFs);
    for (bool comp : {true, false}) {
      const std::vector<Complex> y =
          OverlapSaveConvolve(x, s, kFs, MinBlockSize(ir.length()), comp);
      std::size_t best = 0;
      for (std::size_t t = 0; t < y.size(); ++t) {
        if (std::abs(y[t]) > std::abs(y[best])) best = t;
      }
      const int lead = ConvolutionLead(ir, comp);
      EXPECT_EQ(static_cast<int>(best), 2500 + ir.peak_delay - lead);
      if (comp) {
        EXPECT_EQ(best, 2500u);
      }
    }
  }
}

TEST(OverlapSaveConvolveTest, RejectsSmallBlocks) {
  const FilterSpec s = Bank(FilterKind::kGabor).specs[0];  // 881 taps
  const std::vector<double> x = GaussianNoise(3000, 1);
  try {
    OverlapSaveConvolve(x, s, kFs, 1024);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("minimum is 2048"), std::string::npos)
        << e.what();
  }
  EXPECT_THROW(OverlapSaveConvolve(x, s, kFs, 3000), DomainError);
}

TEST(SiFeaturesTest, ShapeMatchesStft) {
  const AudioBuffer a = Audio(GaussianNoise(16000, 12));
  for (FilterKind kind : kKinds) {
    const FeatureMatrix si = SiFeatures(a, Bank(kind), SiConfig{});
    const FeatureMatrix st = StftFeatures(a, Bank(kind), FrameConfig{});
    EXPECT_EQ(si.rows, 98u);
    EXPECT_EQ(si.cols, 41u);
    EXPECT_EQ(si.rows, st.rows);
    EXPECT_EQ(si.cols, st.cols);
    EXPECT_TRUE(si.has_energy);
  }
}

TEST(SiFeaturesTest, PairedConfig) {
  FrameConfig f;
  f.shift = 100;
  f.frame_length = 300;
  f.include_energy = false;
  const SiConfig s = PairedSiConfig(f);
  EXPECT_EQ(s.shift, 100);
  EXPECT_EQ(s.frame_length, 300);
  EXPECT_EQ(s.integ_length, 200);
  EXPECT_FALSE(s.include_energy);
  EXPECT_EQ(PairedSiConfig(FrameConfig{}).integ_length, 320);
}

// Production path, direct engine and brute-force oracle on the same
// truncated taps.
TEST(SiFeaturesTest, EnginesAgreeWithReference) {
  for (std::uint64_t seed : {13, 14}) {
    const AudioBuffer a = Audio(GaussianNoise(4000, seed));
    for (FilterKind kind : kKinds) {
      const FilterBank bank = Bank(kind);
      SiConfig cfg;
      const FeatureMatrix os = SiFeatures(a, bank, cfg);
      cfg.engine = SiEngine::kDirect;
      const FeatureMatrix direct = SiFeatures(a, bank, cfg);
      const FeatureMatrix ref = testing::SiReference(a, bank, cfg);
      EXPECT_LT(MaxAbsDiff(os, direct), 1e-6) << FilterKindName(kind);
      EXPECT_LT(MaxAbsDiff(direct, ref), 1e-9) << FilterKindName(kind);
    }
  }
}

TEST(SiFeaturesTest, FullBandMatchesReferenceTightly) {
  const AudioBuffer a = Audio(GaussianNoise(4000, 15));
  for (FilterKind kind : kKinds) {
    SiConfig cfg;
    cfg.band_threshold = 0.0;
    const FilterBank bank = Bank(kind);
    EXPECT_LT(MaxAbsDiff(SiFeatures(a, bank, cfg),
                         testing::SiReference(a, bank, cfg)),
              1e-9)
        << FilterKindName(kind);
  }
}

TEST(SiFeaturesTest, BlockSizeDoublingIsHarmless) {
  const AudioBuffer a = Audio(GaussianNoise(8000, 16));
  for (FilterKind kind : kKinds) {
    const FilterBank bank = Bank(kind);
    SiConfig cfg;
    const int base = DefaultBlockSize(bank, cfg, a.size());
    cfg.block_size = base;
    const FeatureMatrix m1 = SiFeatures(a, bank, cfg);
    cfg.block_size = 2 * base;
    const FeatureMatrix m2 = SiFeatures(a, bank, cfg);
    EXPECT_LT(MaxAbsDiff(m1, m2), 1e-6) << FilterKindName(kind);
    EXPECT_EQ(MaxAbsDiff(SiFeatures(a, bank, SiConfig{}), m1), 0.0);
  }
}

TEST(SiFeaturesTest, DefaultBlockSizeRespectsTheRule) {
  for (FilterKind kind : kKinds) {
    const FilterBank bank = Bank(kind);
    SiConfig cfg;
    int longest = 0;
    for (const FilterSpec& s : bank.specs) {
      longest = std::max(longest, ComputeImpulseResponse(s, kFs).length());
    }
    const int block = DefaultBlockSize(bank, cfg, 16000);
    EXPECT_TRUE(IsPowerOfTwo(block));
    EXPECT_GE(block, 4 * longest);
    EXPECT_GE(block, 2 * (longest + cfg.integ_length));
    EXPECT_LE(block, 1 << 16);
  }
}

TEST(SiFeaturesTest, TooSmallBlockNamesTheMinimum) {
  const AudioBuffer a = Audio(GaussianNoise(4000, 17));
  SiConfig cfg;
  cfg.block_size = 512;
  try {
    SiFeatures(a, Bank(FilterKind::kGabor), cfg);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("minimum is"), std::string::npos);
  }
}

TEST(SiFeaturesTest, UncompensatedMatchesReference) {
  const AudioBuffer a = Audio(GaussianNoise(4000, 18));
  for (FilterKind kind : kKinds) {
    SiConfig cfg;
    cfg.delay_compensation = false;
    cfg.band_threshold = 0.0;
    const FilterBank bank = Bank(kind);
    const FeatureMatrix exact = SiFeatures(a, bank, cfg);
    EXPECT_LT(MaxAbsDiff(exact, testing::SiReference(a, bank, cfg)), 1e-9);

    // Early frames see only the leading skirt of the delayed kernels, where
    // band limiting follows the analytic filter rather than the taps.
    cfg.band_threshold = -1.0;
    const FeatureMatrix limited = SiFeatures(a, bank, cfg);
    int longest = 0;
    for (const FilterSpec& s : bank.specs) {
      longest = std::max(longest, ComputeImpulseResponse(s, kFs).length());
    }
    const std::size_t first_full = (longest - 40 + 159) / 160;
    ASSERT_LT(first_full, limited.rows);
    for (std::size_t r = first_full; r < limited.rows; ++r) {
      for (std::size_t c = 0; c < limited.cols; ++c) {
        EXPECT_NEAR(limited.at(r, c), exact.at(r, c), 1e-6);
      }
    }
    if (kind == FilterKind::kGammatone) {
      EXPECT_GT(MaxAbsDiff(exact, SiFeatures(a, bank, SiConfig{})), 1e-3);
    }
  }
}

TEST(SiFeaturesTest, BandThresholdDefaults) {
  EXPECT_EQ(DefaultBandThreshold(FilterKind::kTriangular), 1e-7);
  EXPECT_EQ(DefaultBandThreshold(FilterKind::kGabor), 1e-6);
  EXPECT_EQ(DefaultBandThreshold(FilterKind::kGammatone), 1e-6);
  const AudioBuffer a = Audio(GaussianNoise(3000, 23));
  for (FilterKind kind : kKinds) {
    SiConfig cfg;
    cfg.band_threshold = DefaultBandThreshold(kind);
    EXPECT_EQ(SiFeatures(a, Bank(kind), cfg).values,
              SiFeatures(a, Bank(kind), SiConfig{}).values);
  }
}

TEST(SiFeaturesTest, AmplitudeShift) {
  const std::vector<double> x = GaussianNoise(4000, 19);
  std::vector<double> y = x;
  for (double& v : y) v *= 2.0;
  for (FilterKind kind : kKinds) {
    const FeatureMatrix a = SiFeatures(Audio(x), Bank(kind), SiConfig{});
    const FeatureMatrix b = SiFeatures(Audio(y), Bank(kind), SiConfig{});
    for (std::size_t i = 0; i < a.values.size(); ++i) {
      EXPECT_NEAR(b.values[i] - a.values[i], 2.0 * std::log(2.0), 1e-9);
    }
  }
}

TEST(SiFeaturesTest, ZerosHitTheFloor) {
  const AudioBuffer a = Audio(std::vector<double>(2000, 0.0));
  for (FilterKind kind : kKinds) {
    for (double v : SiFeatures(a, Bank(kind), SiConfig{}).values) {
      EXPECT_EQ(v, std::log(kDefaultLogFloor));
    }
  }
}

TEST(SiFeaturesTest, EnergyIsWindowSumOfSquares) {
  const AudioBuffer a = Audio(GaussianNoise(2000, 20));
  const FeatureMatrix m = SiFeatures(a, Bank(FilterKind::kGabor), SiConfig{});
  for (std::size_t r = 0; r < m.rows; ++r) {
    double e = 0.0;
    // Window i starts at 160 i + 200 - 160.
    for (int u = 0; u < 320; ++u) e += std::pow(a.samples[160 * r + 40 + u], 2);
    EXPECT_NEAR(m.at(r, 0), std::log(e), 1e-12);
  }
}

double LagOneCorrelation(const FeatureMatrix& m, std::size_t col) {
  double mean = 0.0;
  for (std::size_t r = 0; r < m.rows; ++r) mean += m.at(r, col);
  mean /= m.rows;
  double num = 0.0;
  double den = 0.0;
  for (std::size_t r = 0; r < m.rows; ++r) {
    const double d = m.at(r, col) - mean;
    den += d * d;
    if (r + 1 < m.rows) num += d * (m.at(r + 1, col) - mean);
  }
  return num / den;
}

TEST(SiFeaturesTest, NarrowbandColumnsAreSmoother) {
  const AudioBuffer a = Audio(GaussianNoise(32000, 21));
  const FeatureMatrix m = SiFeatures(a, Bank(FilterKind::kGabor), SiConfig{});
  EXPECT_GT(LagOneCorrelation(m, 1), LagOneCorrelation(m, 40));
}

TEST(SiFeaturesTest, Deterministic) {
  const AudioBuffer a = Audio(GaussianNoise(16000, 22));
  for (FilterKind kind : kKinds) {
    EXPECT_EQ(SiFeatures(a, Bank(kind), SiConfig{}).values,
              SiFeatures(a, Bank(kind), SiConfig{}).values);
  }
}

TEST(SiFeaturesTest, ToneWinsItsColumn) {
  for (FilterKind kind : kKinds) {
    const FilterBank bank = Bank(kind);
    for (int k : {5, 20, 34}) {
      const AudioBuffer a = Audio(
          testing::Tone(8000, bank.specs[k].center_hz(), kFs));
      const FeatureMatrix m = SiFeatures(a, bank, SiConfig{});
      for (std::size_t r = 10; r + 10 < m.rows; ++r) {
        std::size_t best = 1;
        for (std::size_t c = 1; c < m.cols; ++c) {
          if (m.at(r, c) > m.at(r, best)) best = c;
        }
        EXPECT_EQ(best, static_cast<std::size_t>(k + 1))
            << FilterKindName(kind) << " frame " << r;
      }
    }
  }
}

TEST(SiConfigTest, Validation) {
  SiConfig cfg;
  EXPECT_NO_THROW(cfg.Validate());
  cfg.integ_length = 0;
  EXPECT_THROW(cfg.Validate(), DomainError);
  cfg = SiConfig{};
  cfg.block_size = 1000;
  EXPECT_THROW(cfg.Validate(), DomainError);
  cfg = SiConfig{};
  cfg.band_threshold = 1.0;
  EXPECT_THROW(cfg.Validate(), DomainError);
  cfg = SiConfig{};
  cfg.trunc_threshold = 0.0;
  EXPECT_THROW(cfg.Validate(), DomainError);
  EXPECT_THROW(SiFeatures(Audio(GaussianNoise(1000, 1), 8000.0),
                          Bank(FilterKind::kGabor), SiConfig{}),
               DomainError);
  EXPECT_THROW(SiFeatures(Audio(GaussianNoise(399, 1)),
                          Bank(FilterKind::kGabor), SiConfig{}),
               DomainError);
}

}  // namespace
}  // namespace sifbank

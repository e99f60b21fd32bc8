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


#include "sifbank/cli.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sifbank/audio.h"
#include "sifbank/filters.h"
#include "test_util.h"

namespace sifbank {
namespace {

using testing::TempDir;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "sifbank");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    wav_ = (dir_ / "one.wav").string();
    WriteWav(wav_, testing::Audio(testing::GaussianNoise(16000, 1)));
  }
  TempDir dir_;
  std::string wav_;
};

TEST_F(CliTest, ComputeDefaults) {
  const std::string out = (dir_ / "f.fbk").string();
  const Result r = Cli({"compute", wav_, "-o", out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "wrote 98x123 features to " + out + "\n");
  const FeatureMatrix m = ReadFeatures(out);
  EXPECT_EQ(m.rows, 98u);
  EXPECT_EQ(m.cols, 123u);
}

TEST_F(CliTest, EveryFilterAndMethodHasTheSameShape) {
  for (const char* filter : {"tri", "gabor", "gammatone"}) {
    for (const char* method : {"stft", "si"}) {
      const std::string out = (dir_ / "f.fbk").string();
      const Result r = Cli({"compute", wav_, "--filter", filter, "--method",
                         method, "-o", out});
      ASSERT_EQ(r.code, 0) << r.err;
      const FeatureMatrix m = ReadFeatures(out);
      EXPECT_EQ(m.rows, 98u) << filter << " " << method;
      EXPECT_EQ(m.cols, 123u) << filter << " " << method;
    }
  }
}

TEST_F(CliTest, FlagsChangeTheShape) {
  const std::string out = (dir_ / "f.csv").string();
  const Result r = Cli({"compute", wav_, "--num-filters", "24", "--no-deltas",
                     "--no-energy", "--format", "csv", "-o", out});
  ASSERT_EQ(r.code, 0) << r.err;
  const FeatureMatrix m = ReadFeaturesCsv(out);
  EXPECT_EQ(m.rows, 98u);
  EXPECT_EQ(m.cols, 24u);
}

TEST_F(CliTest, RerunsAreBitIdentical) {
  for (const char* method : {"stft", "si"}) {
    const std::string a = (dir_ / "a.fbk").string();
    const std::string b = (dir_ / "b.fbk").string();
    ASSERT_EQ(Cli({"compute", wav_, "--method", method, "--seed", "9", "-o", a}).code, 0);
    ASSERT_EQ(Cli({"compute", wav_, "--method", method, "--seed", "9", "-o", b}).code, 0);
    EXPECT_EQ(Slurp(a), Slurp(b));
    ASSERT_EQ(Cli({"compute", wav_, "--method", method, "--seed", "10", "-o", b}).code, 0);
    EXPECT_NE(Slurp(a), Slurp(b));
  }
}

TEST_F(CliTest, NyquistError) {
  const Result r = Cli({"compute", wav_, "--high-hz", "9000", "-o",
                     (dir_ / "x.fbk").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.err,
            "error: --high-hz: 9000 Hz exceeds the Nyquist limit of 8000 Hz\n");
  EXPECT_FALSE(std::filesystem::exists(dir_ / "x.fbk"));
}

TEST_F(CliTest, FlagErrorsNameTheFlag) {
  const std::string out = (dir_ / "x.fbk").string();
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"--num-filters", "0"}, {"--method", "mfcc"},  {"--filter", "chirp"},
      {"--window", "kaiser"}, {"--preemph", "1"},    {"--format", "htk"},
      {"--shift-ms", "0"},    {"--frame-ms", "5"},   {"--dither", "-1"},
      {"--order", "0"},       {"--low-hz", "-3"},    {"--si-window-criterion", "x"},
      {"--block-size", "-2"}};
  for (const auto& [flag, value] : cases) {
    const Result r = Cli({"compute", wav_, flag, value, "-o", out});
    EXPECT_EQ(r.code, 1) << flag;
    EXPECT_EQ(r.err.rfind("error: " + flag + ":", 0), 0u) << r.err;
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
  }
  const Result missing = Cli({"compute", wav_});
  EXPECT_EQ(missing.code, 1);
  EXPECT_NE(missing.err.find("--output"), std::string::npos);
  EXPECT_EQ(Cli({"compute", (dir_ / "none.wav").string(), "-o", out}).code, 1);
  EXPECT_EQ(Cli({"frobnicate"}).code, 1);
  EXPECT_EQ(Cli({}).code, 1);
}

TEST_F(CliTest, SiWindowCriterion) {
  const std::string out = (dir_ / "x.fbk").string();
  for (const char* c : {"zero-crossing", "-3db"}) {
    const Result r = Cli({"compute", wav_, "--method", "si",
                       "--si-window-criterion", c, "-o", out});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(ReadFeatures(out).rows, 98u);
  }
}

std::vector<std::vector<double>> ParseCsv(const std::string& text,
                                          std::string* header) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, *header);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream fields(line);
    std::string cell;
    // strtod, since Gabor tails underflow to subnormals that stod rejects.
    while (std::getline(fields, cell, ',')) {
      row.push_back(std::strtod(cell.c_str(), nullptr));
    }
    rows.push_back(row);
  }
  return rows;
}

TEST(CliDesignTest, GaborCrossesAtHalfPower) {
  const Result r = Cli({"design", "--filter", "gabor"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::string header;
  const auto rows = ParseCsv(r.out, &header);
  EXPECT_EQ(header.substr(0, 9), "hz,f0,f1,");
  EXPECT_NE(header.find(",f39"), std::string::npos);
  EXPECT_EQ(header.find(",f40"), std::string::npos);
  const FilterBank bank = DesignBank(FilterKind::kGabor, 40, 20.0, 8000.0, 16000.0);
  for (int k = 0; k + 1 < 40; ++k) {
    const double edge = bank.specs[k].right_hz;
    const auto it = std::find_if(rows.begin(), rows.end(), [&](const auto& row) {
      return std::abs(row[0] - edge) < 1e-9;
    });
    ASSERT_NE(it, rows.end()) << k;
    EXPECT_NEAR((*it)[k + 1], 0.5, 1e-6);
    EXPECT_NEAR((*it)[k + 2], 0.5, 1e-6);
  }
  for (int k = 0; k < 40; ++k) {
    double peak = 0.0;
    for (const auto& row : rows) peak = std::max(peak, row[k + 1]);
    EXPECT_NEAR(peak, 1.0, 1e-12) << k;
  }
  EXPECT_DOUBLE_EQ(rows.front()[0], 0.0);
  EXPECT_DOUBLE_EQ(rows.back()[0], 8000.0);
}

TEST(CliDesignTest, TrianglesArePiecewiseLinear) {
  const Result r = Cli({"design", "--filter", "tri", "--num-filters", "10",
                     "--resolution-hz", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::string header;
  const auto rows = ParseCsv(r.out, &header);
  const FilterBank bank =
      DesignBank(FilterKind::kTriangular, 10, 20.0, 8000.0, 16000.0);
  for (int k = 0; k < 10; ++k) {
    const FilterSpec& s = bank.specs[k];
    double peak = 0.0;
    for (const auto& row : rows) {
      const double hz = row[0];
      const double v = row[k + 1];
      peak = std::max(peak, v);
      if (hz <= s.left_hz || hz >= s.right_hz) {
        EXPECT_EQ(v, 0.0) << k << " " << hz;
      } else if (hz - s.left_hz < 1e-9 || s.right_hz - hz < 1e-9) {
        EXPECT_NEAR(v, 0.0, 1e-12);
      } else if (hz < s.center_hz()) {
        EXPECT_NEAR(v, (hz - s.left_hz) / (s.center_hz() - s.left_hz), 1e-12);
      } else {
        EXPECT_NEAR(v, (s.right_hz - hz) / (s.right_hz - s.center_hz()), 1e-12);
      }
    }
    EXPECT_EQ(peak, 1.0);
  }
}

TEST(CliDesignTest, WritesFileAndRejectsZeroResolution) {
  TempDir dir;
  const std::string out = (dir / "d.csv").string();
  const Result r = Cli({"design", "--filter", "gammatone", "-o", out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "wrote 40 filter responses to " + out + "\n");
  EXPECT_EQ(Slurp(out).substr(0, 6), "hz,f0,");
  const Result bad = Cli({"design", "--resolution-hz", "0"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.err.rfind("error: --resolution-hz:", 0), 0u) << bad.err;
  EXPECT_EQ(Cli({"design", "--sample-rate", "8000"}).code, 1);
}

TEST_F(CliTest, Info) {
  const Result r = Cli({"info", wav_});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "16000 Hz, 16000 samples, 1.000 s\n");
  EXPECT_EQ(Cli({"info", (dir_ / "none.wav").string()}).code, 1);

  // Stereo header written by hand: 2 channels, 4 bytes per frame.
  std::string b = "RIFF";
  auto put32 = [&](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<char>(v >> (8 * i)));
  };
  auto put16 = [&](std::uint16_t v) {
    for (int i = 0; i < 2; ++i) b.push_back(static_cast<char>(v >> (8 * i)));
  };
  put32(36 + 8);
  b += "WAVEfmt ";
  put32(16);
  put16(1);
  put16(2);
  put32(16000);
  put32(64000);
  put16(4);
  put16(16);
  b += "data";
  put32(8);
  b.append(8, '\0');
  const std::string stereo = (dir_ / "stereo.wav").string();
  std::ofstream(stereo, std::ios::binary) << b;
  const Result s = Cli({"info", stereo});
  EXPECT_EQ(s.code, 1);
  EXPECT_NE(s.err.find("mono required"), std::string::npos);
}

TEST(CliBenchTest, ReportShape) {
  const Result a = Cli({"bench", "--duration", "1", "--repetitions", "3"});
  ASSERT_EQ(a.code, 0) << a.err;
  std::istringstream lines(a.out);
  std::string line;
  int medians = 0;
  int ratios = 0;
  std::vector<std::string> checksums;
  while (std::getline(lines, line)) {
    if (line.rfind("median ", 0) == 0) {
      ++medians;
      EXPECT_NE(line.find(" 98x41 "), std::string::npos) << line;
      checksums.push_back(line.substr(line.find("checksum")));
    } else if (line.rfind("ratio si/stft ", 0) == 0) {
      ++ratios;
      const double ratio = std::stod(line.substr(line.find_last_of(' ') + 1));
      EXPECT_TRUE(std::isfinite(ratio) && ratio > 0.0) << line;
    }
  }
  EXPECT_EQ(medians, 6);
  EXPECT_EQ(ratios, 3);

  const Result b = Cli({"bench", "--duration", "1", "--repetitions", "3"});
  std::istringstream again(b.out);
  std::size_t i = 0;
  while (std::getline(again, line)) {
    if (line.rfind("median ", 0) == 0) {
      EXPECT_EQ(line.substr(line.find("checksum")), checksums[i++]);
    }
  }
  EXPECT_EQ(Cli({"bench", "--duration", "0.5"}).code, 1);
  EXPECT_EQ(Cli({"bench", "--repetitions", "2"}).code, 1);
}

TEST_F(CliTest, ListModeIsOrderIndependent) {
  WriteWav(dir_ / "two.wav", testing::Audio(testing::GaussianNoise(12000, 2)));
  const std::string one = wav_;
  const std::string two = (dir_ / "two.wav").string();
  std::ofstream(dir_ / "ab.list") << "utt-a " << one << "\nutt-b " << two << "\n\n";
  std::ofstream(dir_ / "ba.list") << "utt-b " << two << "\nutt-a " << one << "\n";
  const Result r1 = Cli({"compute", "--list", (dir_ / "ab.list").string(), "-o",
                      (dir_ / "ab").string()});
  ASSERT_EQ(r1.code, 0) << r1.err;
  const Result r2 = Cli({"compute", "--list", (dir_ / "ba.list").string(), "-o",
                      (dir_ / "ba").string()});
  ASSERT_EQ(r2.code, 0) << r2.err;
  EXPECT_EQ(std::count(r1.out.begin(), r1.out.end(), '\n'), 2);
  for (const char* id : {"utt-a.fbk", "utt-b.fbk"}) {
    EXPECT_EQ(Slurp(dir_ / "ab" / id), Slurp(dir_ / "ba" / id)) << id;
  }
  EXPECT_EQ(ReadFeatures(dir_ / "ab" / "utt-b.fbk").rows, 73u);

  // Same audio under two ids gets different dither.
  std::ofstream(dir_ / "dup.list") << "x " << one << "\ny " << one << "\n";
  ASSERT_EQ(Cli({"compute", "--list", (dir_ / "dup.list").string(), "-o",
                 (dir_ / "dup").string()}).code, 0);
  EXPECT_NE(Slurp(dir_ / "dup" / "x.fbk"), Slurp(dir_ / "dup" / "y.fbk"));
  EXPECT_NE(UtteranceSeed(0, "x"), UtteranceSeed(0, "y"));
  EXPECT_EQ(UtteranceSeed(5, "x"), UtteranceSeed(5, "x"));

  std::ofstream(dir_ / "bad.list") << "lonely-id\n";
  EXPECT_EQ(Cli({"compute", "--list", (dir_ / "bad.list").string(), "-o",
                 (dir_ / "bad").string()}).code, 1);
}

TEST(ComputeFeaturesTest, AmplitudeShiftReachesOnlyStaticColumns) {
  const AudioBuffer a = testing::Audio(testing::GaussianNoise(8000, 3));
  AudioBuffer b = a;
  for (double& v : b.samples) v *= 10.0;
  CliConfig cfg;
  cfg.dither = 0.0;
  for (const char* method : {"stft", "si"}) {
    cfg.method = method;
    const FeatureMatrix fa = ComputeFeatures(a, cfg, 0);
    const FeatureMatrix fb = ComputeFeatures(b, cfg, 0);
    ASSERT_EQ(fa.cols, 123u);
    for (std::size_t r = 0; r < fa.rows; ++r) {
      for (std::size_t c = 0; c < fa.cols; ++c) {
        const double shift = c < 41 ? 2.0 * std::log(10.0) : 0.0;
        EXPECT_NEAR(fb.at(r, c) - fa.at(r, c), shift, 1e-9) << method;
      }
    }
  }
}

}  // namespace
}  // namespace sifbank

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


#include "sifbank/audio.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sifbank/errors.h"

namespace sifbank {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::vector<unsigned char> ReadAll(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return bytes;
}

void WriteAll(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

std::uint16_t Le16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t Le32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

void Put16(std::string& s, std::uint16_t v) {
  s.push_back(static_cast<char>(v & 0xFF));
  s.push_back(static_cast<char>(v >> 8));
}

void Put32(std::string& s, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

[[noreturn]] void Malformed(const std::filesystem::path& path,
                            const std::string& why) {
  throw FormatError("malformed WAV '" + path.string() + "': " + why);
}

}  // namespace

AudioBuffer ReadWav(const std::filesystem::path& path) {
  const std::vector<unsigned char> bytes = ReadAll(path);
  const std::size_t n = bytes.size();
  if (n < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    Malformed(path, "missing RIFF/WAVE header");
  }
  bool have_fmt = false;
  std::uint16_t channels = 0;
  std::uint16_t bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= n) {
    const unsigned char* id = bytes.data() + pos;
    const std::size_t size = Le32(id + 4);
    const std::size_t body = pos + 8;
    if (size > n - body) {
      // A data chunk whose size field overruns the file is truncated.
      Malformed(path, "chunk '" + std::string(id, id + 4) +
                          "' runs past the end of the file");
    }
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (size < 16) Malformed(path, "fmt chunk too short");
      const unsigned char* f = bytes.data() + body;
      std::uint16_t tag = Le16(f);
      channels = Le16(f + 2);
      rate = Le32(f + 4);
      bits = Le16(f + 14);
      if (tag == kFormatExtensible) {
        if (size < 40) Malformed(path, "extensible fmt chunk too short");
        tag = Le16(f + 24);
      }
      if (channels != 1) {
        throw FormatError("mono required: '" + path.string() + "' has " +
                          std::to_string(channels) + " channels");
      }
      if (tag != kFormatPcm || bits != 16) {
        throw FormatError("unsupported format in '" + path.string() +
                          "': need 16-bit PCM, got format tag " +
                          std::to_string(tag) + ", " + std::to_string(bits) +
                          " bits");
      }
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = size;
    }
    pos = body + size + (size & 1);
  }
  if (!have_fmt) Malformed(path, "no fmt chunk");
  if (data == nullptr) Malformed(path, "no data chunk");
  if (rate == 0) Malformed(path, "sample rate is zero");
  if (data_size < 2) Malformed(path, "no samples");

  AudioBuffer audio;
  audio.sample_rate = rate;
  audio.samples.resize(data_size / 2);
  for (std::size_t i = 0; i < audio.samples.size(); ++i) {
    audio.samples[i] = static_cast<std::int16_t>(Le16(data + 2 * i));
  }
  return audio;
}

void WriteWav(const std::filesystem::path& path, const AudioBuffer& audio) {
  if (!(audio.sample_rate > 0.0) || audio.sample_rate > 4294967295.0) {
    throw DomainError("sample rate out of range for WAV");
  }
  const auto rate = static_cast<std::uint32_t>(std::lround(audio.sample_rate));
  const std::size_t data_bytes = 2 * audio.samples.size();
  if (data_bytes > 0xFFFFFFFFu - 36) throw DomainError("audio too long for WAV");
  std::string s;
  s.reserve(44 + data_bytes);
  s.append("RIFF");
  Put32(s, static_cast<std::uint32_t>(36 + data_bytes));
  s.append("WAVEfmt ");
  Put32(s, 16);
  Put16(s, kFormatPcm);
  Put16(s, 1);
  Put32(s, rate);
  Put32(s, rate * 2);
  Put16(s, 2);
  Put16(s, 16);
  s.append("data");
  Put32(s, static_cast<std::uint32_t>(data_bytes));
  for (double v : audio.samples) {
    const double r = std::clamp(std::round(v), -32768.0, 32767.0);
    Put16(s, static_cast<std::uint16_t>(static_cast<std::int16_t>(r)));
  }
  WriteAll(path, s);
}

AudioBuffer Dither(const AudioBuffer& audio, double amount,
                   std::uint64_t seed) {
  if (!(amount >= 0.0) || !std::isfinite(amount)) {
    throw DomainError("dither amount must be finite and >= 0");
  }
  AudioBuffer out = audio;
  if (amount == 0.0) return out;
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> noise(0.0, amount);
  for (double& v : out.samples) v += noise(gen);
  return out;
}

AudioBuffer PreEmphasize(const AudioBuffer& audio, double coeff) {
  if (!(coeff >= 0.0 && coeff < 1.0)) {
    throw DomainError("pre-emphasis coefficient must be in [0, 1), got " +
                      std::to_string(coeff));
  }
  AudioBuffer out = audio;
  if (coeff == 0.0 || audio.samples.empty()) return out;
  const std::vector<double>& x = audio.samples;
  out.samples[0] = x[0] - coeff * x[0];
  for (std::size_t t = 1; t < x.size(); ++t) {
    out.samples[t] = x[t] - coeff * x[t - 1];
  }
  return out;
}

FeatureFormat ParseFeatureFormat(std::string_view name) {
  if (name == "binary") return FeatureFormat::kBinary;
  if (name == "csv") return FeatureFormat::kCsv;
  throw DomainError("unknown format '" + std::string(name) +
                    "' (expected binary or csv)");
}

void WriteFeatures(const FeatureMatrix& m, const std::filesystem::path& path,
                   FeatureFormat format) {
  if (m.rows == 0 || m.cols == 0) {
    throw DomainError("refusing to write an empty feature matrix");
  }
  if (m.values.size() != m.rows * m.cols) {
    throw DomainError("feature matrix has inconsistent shape");
  }
  for (double v : m.values) {
    if (!std::isfinite(v)) throw DomainError("feature matrix has non-finite values");
  }
  std::string s;
  if (format == FeatureFormat::kBinary) {
    constexpr auto kMax = std::numeric_limits<std::uint32_t>::max();
    if (m.rows > kMax || m.cols > kMax) {
      throw DomainError("feature matrix too large for FBK1");
    }
    s.reserve(12 + 4 * m.values.size());
    s.append("FBK1");
    Put32(s, static_cast<std::uint32_t>(m.rows));
    Put32(s, static_cast<std::uint32_t>(m.cols));
    for (double v : m.values) {
      const float f = static_cast<float>(v);
      if (!std::isfinite(f)) {
        throw DomainError("feature value " + std::to_string(v) +
                          " overflows float32");
      }
      Put32(s, std::bit_cast<std::uint32_t>(f));
    }
  } else {
    char buf[32];
    for (std::size_t r = 0; r < m.rows; ++r) {
      for (std::size_t c = 0; c < m.cols; ++c) {
        if (c > 0) s.push_back(',');
        const auto res = std::to_chars(buf, buf + sizeof(buf), m.at(r, c));
        s.append(buf, res.ptr);
      }
      s.push_back('\n');
    }
  }
  WriteAll(path, s);
}

FeatureMatrix ReadFeatures(const std::filesystem::path& path) {
  const std::vector<unsigned char> bytes = ReadAll(path);
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "FBK1", 4) != 0) {
    throw FormatError("'" + path.string() + "' is not an FBK1 file (bad magic)");
  }
  FeatureMatrix m;
  m.rows = Le32(bytes.data() + 4);
  m.cols = Le32(bytes.data() + 8);
  const std::size_t expected = 12 + 4 * m.rows * m.cols;
  if (bytes.size() != expected) {
    throw FormatError("'" + path.string() + "': payload length " +
                      std::to_string(bytes.size() - 12) + " bytes, header says " +
                      std::to_string(expected - 12));
  }
  m.values.resize(m.rows * m.cols);
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    const float f = std::bit_cast<float>(Le32(bytes.data() + 12 + 4 * i));
    if (!std::isfinite(f)) {
      throw FormatError("'" + path.string() + "' contains non-finite values");
    }
    m.values[i] = f;
  }
  return m;
}

FeatureMatrix ReadFeaturesCsv(const std::filesystem::path& path) {
  const std::vector<unsigned char> bytes = ReadAll(path);
  const std::string text(bytes.begin(), bytes.end());
  FeatureMatrix m;
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t cols = 0;
    const char* p = line.data();
    const char* end = p + line.size();
    while (true) {
      double v = 0.0;
      const auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc() || !std::isfinite(v)) {
        throw FormatError("'" + path.string() + "' line " +
                          std::to_string(line_no) + ": bad number");
      }
      m.values.push_back(v);
      ++cols;
      p = res.ptr;
      if (p == end) break;
      if (*p != ',') {
        throw FormatError("'" + path.string() + "' line " +
                          std::to_string(line_no) + ": expected ','");
      }
      ++p;
    }
    if (m.rows == 0) {
      m.cols = cols;
    } else if (cols != m.cols) {
      throw FormatError("'" + path.string() + "' line " +
                        std::to_string(line_no) + ": expected " +
                        std::to_string(m.cols) + " values, got " +
                        std::to_string(cols));
    }
    ++m.rows;
  }
  if (m.rows == 0) throw FormatError("'" + path.string() + "' has no rows");
  return m;
}

}  // namespace sifbank

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

#include <CLI11.hpp>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sifbank/errors.h"
#include "sifbank/filters.h"
#include "sifbank/postproc.h"
#include "sifbank/si.h"
#include "sifbank/stft.h"
#include "sifbank/windows.h"

namespace sifbank {
namespace {

std::uint64_t Fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

[[noreturn]] void FlagError(const std::string& flag, const std::string& why) {
  throw DomainError(flag + ": " + why);
}

std::string Num(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

int MsToSamples(double ms, double sample_rate, const std::string& flag) {
  if (!std::isfinite(ms) || ms <= 0.0) FlagError(flag, "must be positive");
  const long samples = std::lround(ms * sample_rate / 1000.0);
  if (samples < 1) FlagError(flag, Num(ms) + " ms is shorter than one sample");
  return static_cast<int>(samples);
}

struct Resolved {
  FilterBank bank;
  FrameConfig frames;
  SiConfig si;
  bool use_si = false;
};

// Validates every flag against the sample rate and builds the pipeline
// configuration.
Resolved Resolve(const CliConfig& cfg, double sample_rate) {
  Resolved r;
  FilterKind kind;
  try {
    kind = ParseFilterKind(cfg.filter);
  } catch (const DomainError& e) {
    FlagError("--filter", e.what());
  }
  if (cfg.method != "stft" && cfg.method != "si") {
    FlagError("--method", "unknown method '" + cfg.method +
                              "' (expected stft or si)");
  }
  r.use_si = cfg.method == "si";
  if (cfg.num_filters < 1) FlagError("--num-filters", "must be >= 1");
  if (!std::isfinite(cfg.low_hz) || cfg.low_hz < 0.0) {
    FlagError("--low-hz", "must be >= 0");
  }
  if (!std::isfinite(cfg.high_hz) || cfg.high_hz <= cfg.low_hz) {
    FlagError("--high-hz", "must be greater than --low-hz");
  }
  if (cfg.high_hz > sample_rate / 2.0) {
    FlagError("--high-hz", Num(cfg.high_hz) + " Hz exceeds the Nyquist limit of " +
                               Num(sample_rate / 2.0) + " Hz");
  }
  if (cfg.order < 1) FlagError("--order", "must be >= 1");
  if (!std::isfinite(cfg.dither) || cfg.dither < 0.0) {
    FlagError("--dither", "must be >= 0");
  }
  if (!(cfg.preemph >= 0.0 && cfg.preemph < 1.0)) {
    FlagError("--preemph", "must be in [0, 1)");
  }
  if (cfg.block_size < 0) FlagError("--block-size", "must be >= 0");
  try {
    ParseFeatureFormat(cfg.format);
  } catch (const DomainError& e) {
    FlagError("--format", e.what());
  }

  WindowKind window = r.use_si ? WindowKind::kHann : WindowKind::kHamming;
  if (!cfg.window.empty()) {
    try {
      window = ParseWindowKind(cfg.window);
    } catch (const DomainError& e) {
      FlagError("--window", e.what());
    }
  }

  r.frames.shift = MsToSamples(cfg.shift_ms, sample_rate, "--shift-ms");
  r.frames.frame_length = MsToSamples(cfg.frame_ms, sample_rate, "--frame-ms");
  if (r.frames.frame_length < r.frames.shift) {
    FlagError("--frame-ms", "frame must be at least as long as the shift");
  }
  r.frames.window = r.use_si ? WindowKind::kHamming : window;
  r.frames.include_energy = cfg.energy;

  r.si = PairedSiConfig(r.frames);
  r.si.window = window;
  if (cfg.si_window_criterion.empty()) {
    r.si.integ_length =
        MsToSamples(cfg.si_window_ms, sample_rate, "--si-window-ms");
  } else {
    BandwidthCriterion criterion;
    try {
      criterion = ParseBandwidthCriterion(cfg.si_window_criterion);
    } catch (const DomainError& e) {
      FlagError("--si-window-criterion", e.what());
    }
    r.si.integ_length =
        AutoSiWindowLength(window, r.si.shift, criterion, sample_rate);
  }
  r.si.delay_compensation = cfg.delay_compensation;
  r.si.block_size = cfg.block_size;

  r.bank = DesignBank(kind, cfg.num_filters, cfg.low_hz, cfg.high_hz,
                      sample_rate, cfg.order);
  return r;
}

std::string Dimensions(const FeatureMatrix& m) {
  return std::to_string(m.rows) + "x" + std::to_string(m.cols);
}

std::string Checksum(const FeatureMatrix& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double v : m.values) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
      h ^= (bits >> (8 * i)) & 0xFF;
      h *= 0x100000001b3ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string Extension(const std::string& format) {
  return format == "csv" ? ".csv" : ".fbk";
}

void ComputeOne(const CliConfig& cfg, const std::string& input,
                const std::filesystem::path& output, std::uint64_t seed,
                std::ostream& out) {
  const AudioBuffer audio = ReadWav(input);
  const FeatureMatrix m = ComputeFeatures(audio, cfg, seed);
  WriteFeatures(m, output, ParseFeatureFormat(cfg.format));
  out << "wrote " << Dimensions(m) << " features to " << output.string()
      << "\n";
}

void RunCompute(const CliConfig& cfg, const std::string& input,
                const std::string& list, std::ostream& out) {
  if (cfg.output.empty()) FlagError("--output", "required");
  if (list.empty()) {
    if (input.empty()) FlagError("input", "a WAV path or --list is required");
    ComputeOne(cfg, input, cfg.output, cfg.seed, out);
    return;
  }
  if (!input.empty()) FlagError("--list", "cannot be combined with an input path");
  std::ifstream in(list);
  if (!in) throw IoError("cannot open list '" + list + "'");
  const std::filesystem::path dir(cfg.output);
  std::filesystem::create_directories(dir);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string id;
    std::string path;
    if (!(fields >> id)) continue;
    if (!(fields >> path)) {
      throw FormatError("list '" + list + "' line " + std::to_string(line_no) +
                        ": expected '<utterance-id> <wav-path>'");
    }
    ComputeOne(cfg, path, dir / (id + Extension(cfg.format)),
               UtteranceSeed(cfg.seed, id), out);
  }
}

void RunDesign(const CliConfig& cfg, double sample_rate, double resolution,
               std::ostream& out) {
  if (!std::isfinite(resolution) || resolution <= 0.0) {
    FlagError("--resolution-hz", "must be positive");
  }
  const Resolved r = Resolve(cfg, sample_rate);
  std::ostringstream csv;
  csv.precision(17);
  csv << "hz";
  for (int k = 0; k < r.bank.size(); ++k) csv << ",f" << k;
  csv << "\n";
  // Regular grid plus every filter edge and center, so crossings, vertices
  // and peaks are sampled exactly.
  const double nyquist = sample_rate / 2.0;
  const auto steps = static_cast<long>(std::floor(nyquist / resolution + 1e-9));
  std::vector<double> grid;
  for (long i = 0; i <= steps; ++i) grid.push_back(i * resolution);
  for (const FilterSpec& spec : r.bank.specs) {
    grid.push_back(spec.left_hz);
    grid.push_back(spec.right_hz);
    grid.push_back(spec.center_hz());
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  for (double hz : grid) {
    csv << hz;
    for (const FilterSpec& spec : r.bank.specs) {
      csv << "," << PowerResponse(spec, hz);
    }
    csv << "\n";
  }
  if (cfg.output.empty()) {
    out << csv.str();
  } else {
    std::ofstream f(cfg.output);
    if (!f) throw IoError("cannot open '" + cfg.output + "' for writing");
    f << csv.str();
    if (!f) throw IoError("error writing '" + cfg.output + "'");
    out << "wrote " << r.bank.size() << " filter responses to " << cfg.output
        << "\n";
  }
}

void RunBench(const CliConfig& cfg, double sample_rate, double duration,
              int repetitions, std::ostream& out) {
  if (!std::isfinite(duration) || duration < 1.0) {
    FlagError("--duration", "must be >= 1 s");
  }
  if (repetitions < 3) FlagError("--repetitions", "must be >= 3");
  AudioBuffer noise;
  noise.sample_rate = sample_rate;
  noise.samples.resize(static_cast<std::size_t>(std::lround(duration * sample_rate)));
  std::mt19937_64 gen(cfg.seed);
  std::normal_distribution<double> dist(0.0, 1000.0);
  for (double& v : noise.samples) v = dist(gen);

  out << "bench: " << duration << " s of noise at " << sample_rate << " Hz, "
      << repetitions << " repetitions\n";
  for (const char* filter : {"tri", "gabor", "gammatone"}) {
    double medians[2] = {0.0, 0.0};
    for (int mi = 0; mi < 2; ++mi) {
      CliConfig c = cfg;
      c.filter = filter;
      c.method = mi == 0 ? "stft" : "si";
      const Resolved r = Resolve(c, sample_rate);
      const AudioBuffer audio =
          PreEmphasize(Dither(noise, c.dither, c.seed), c.preemph);
      std::vector<double> times;
      FeatureMatrix m;
      for (int rep = 0; rep < repetitions; ++rep) {
        const auto start = std::chrono::steady_clock::now();
        m = r.use_si ? SiFeatures(audio, r.bank, r.si)
                     : StftFeatures(audio, r.bank, r.frames);
        const auto stop = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double>(stop - start).count());
      }
      std::sort(times.begin(), times.end());
      medians[mi] = times[times.size() / 2];
      char line[160];
      std::snprintf(line, sizeof(line),
                    "median %-4s %-9s %.6f s  %s  checksum %s\n", c.method.c_str(),
                    filter, medians[mi], Dimensions(m).c_str(),
                    Checksum(m).c_str());
      out << line;
    }
    char line[96];
    std::snprintf(line, sizeof(line), "ratio si/stft %-9s %.3f\n", filter,
                  medians[1] / medians[0]);
    out << line;
  }
}

void RunInfo(const std::string& input, std::ostream& out) {
  const AudioBuffer audio = ReadWav(input);
  char line[128];
  std::snprintf(line, sizeof(line), "%.0f Hz, %zu samples, %.3f s\n",
                audio.sample_rate, audio.size(),
                audio.size() / audio.sample_rate);
  out << line;
}

void AddFilterOptions(CLI::App* app, CliConfig& cfg) {
  app->add_option("--filter", cfg.filter, "tri, gabor or gammatone")
      ->capture_default_str();
  app->add_option("--num-filters", cfg.num_filters)->capture_default_str();
  app->add_option("--low-hz", cfg.low_hz)->capture_default_str();
  app->add_option("--high-hz", cfg.high_hz)->capture_default_str();
  app->add_option("--order", cfg.order, "Gammatone order")->capture_default_str();
}

void AddPipelineOptions(CLI::App* app, CliConfig& cfg) {
  app->add_option("--shift-ms", cfg.shift_ms)->capture_default_str();
  app->add_option("--frame-ms", cfg.frame_ms)->capture_default_str();
  app->add_option("--si-window-ms", cfg.si_window_ms)->capture_default_str();
  app->add_option("--si-window-criterion", cfg.si_window_criterion,
                  "size the SI window from the shift: zero-crossing or -3db");
  app->add_option("--window", cfg.window,
                  "rect, hann, hamming or triangular (default: hamming for "
                  "stft, hann for si)");
  app->add_flag("--deltas,!--no-deltas", cfg.deltas)->capture_default_str();
  app->add_flag("--energy,!--no-energy", cfg.energy)->capture_default_str();
  app->add_option("--dither", cfg.dither)->capture_default_str();
  app->add_option("--seed", cfg.seed)->capture_default_str();
  app->add_option("--preemph", cfg.preemph)->capture_default_str();
  app->add_flag("--delay-compensation,!--no-delay-compensation",
                cfg.delay_compensation)
      ->capture_default_str();
  app->add_option("--block-size", cfg.block_size,
                  "SI FFT block size (0 = automatic)")
      ->capture_default_str();
}

}  // namespace

std::uint64_t UtteranceSeed(std::uint64_t seed, std::string_view utterance_id) {
  return SplitMix64(seed ^ Fnv1a(utterance_id));
}

FeatureMatrix ComputeFeatures(const AudioBuffer& audio, const CliConfig& cfg,
                              std::uint64_t seed) {
  const Resolved r = Resolve(cfg, audio.sample_rate);
  const AudioBuffer prepared =
      PreEmphasize(Dither(audio, cfg.dither, seed), cfg.preemph);
  FeatureMatrix m = r.use_si ? SiFeatures(prepared, r.bank, r.si)
                             : StftFeatures(prepared, r.bank, r.frames);
  if (cfg.deltas) m = Assemble(m);
  return m;
}

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Filter-bank speech features: STFT and short-integration "
               "pipelines"};
  app.require_subcommand(1);
  CliConfig cfg;

  std::string input;
  std::string list;
  CLI::App* compute = app.add_subcommand("compute", "compute features");
  compute->add_option("input", input, "input WAV (16-bit PCM mono)");
  compute->add_option("--list", list,
                      "batch file of '<utterance-id> <wav-path>' lines; "
                      "--output is then a directory");
  compute->add_option("--method", cfg.method, "stft or si")->capture_default_str();
  AddFilterOptions(compute, cfg);
  AddPipelineOptions(compute, cfg);
  compute->add_option("--format", cfg.format, "binary or csv")
      ->capture_default_str();
  compute->add_option("-o,--output", cfg.output, "output file (or directory)");

  double design_rate = 16000.0;
  double resolution = 1.0;
  CLI::App* design = app.add_subcommand(
      "design", "write per-filter power responses as CSV");
  AddFilterOptions(design, cfg);
  design->add_option("--sample-rate", design_rate)->capture_default_str();
  design->add_option("--resolution-hz", resolution)->capture_default_str();
  design->add_option("-o,--output", cfg.output, "CSV path (default stdout)");

  double bench_rate = 16000.0;
  double duration = 60.0;
  int repetitions = 5;
  CLI::App* bench = app.add_subcommand(
      "bench", "time both pipelines for every filter kind");
  AddFilterOptions(bench, cfg);
  AddPipelineOptions(bench, cfg);
  bench->add_option("--sample-rate", bench_rate)->capture_default_str();
  bench->add_option("--duration", duration, "seconds of synthetic noise")
      ->capture_default_str();
  bench->add_option("--repetitions", repetitions)->capture_default_str();

  std::string info_input;
  CLI::App* info = app.add_subcommand("info", "print a WAV header summary");
  info->add_option("input", info_input)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (compute->parsed()) {
      RunCompute(cfg, input, list, out);
    } else if (design->parsed()) {
      RunDesign(cfg, design_rate, resolution, out);
    } else if (bench->parsed()) {
      RunBench(cfg, bench_rate, duration, repetitions, out);
    } else if (info->parsed()) {
      RunInfo(info_input, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace sifbank

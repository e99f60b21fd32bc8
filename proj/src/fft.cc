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

#include "sifbank/fft.h"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cassert>
#include <limits>
#include <mutex>
#include <new>
#include <string>

#include "sifbank/errors.h"

namespace sifbank {
namespace {

// The FFTW planner is not re-entrant.
std::mutex& PlannerMutex() {
  static std::mutex mu;
  return mu;
}

template <typename T>
T* AllocOrThrow(std::size_t count) {
  void* p = fftw_malloc(sizeof(T) * std::max<std::size_t>(count, 1));
  if (p == nullptr) throw std::bad_alloc();
  return static_cast<T*>(p);
}

fftw_complex* Raw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

bool IsPowerOfTwo(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t NextPowerOfTwo(std::size_t n) {
  constexpr std::size_t kLargest = std::size_t{1}
                                    << (std::numeric_limits<std::size_t>::digits - 1);
  if (n > kLargest) {
    throw DomainError("no power of two >= " + std::to_string(n));
  }
  return std::bit_ceil(n);
}

RealFft::RealFft(std::size_t n)
    : n_(n),
      real_(AllocOrThrow<double>(n)),
      spec_(AllocOrThrow<Complex>(n / 2 + 1)) {
  std::lock_guard<std::mutex> lock(PlannerMutex());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  forward_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), real_, Raw(spec_), flags);
  backward_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), Raw(spec_), real_,
                                   flags | FFTW_DESTROY_INPUT);
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(PlannerMutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_));
  fftw_free(real_);
  fftw_free(spec_);
}

void RealFft::Forward(std::span<const double> in, std::span<Complex> out) {
  assert(in.size() == n_ && out.size() == n_ / 2 + 1);
  // Out-of-place r2c leaves its input untouched.
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_),
                       const_cast<double*>(in.data()), Raw(out.data()));
}

void RealFft::Backward(std::span<const Complex> in, std::span<double> out) {
  assert(in.size() == n_ / 2 + 1 && out.size() == n_);
  // c2r destroys its input, so work on the owned buffer.
  std::copy(in.begin(), in.end(), spec_);
  fftw_execute_dft_c2r(static_cast<fftw_plan>(backward_), Raw(spec_),
                       out.data());
}

ComplexFft::ComplexFft(std::size_t n)
    : n_(n), in_(AllocOrThrow<Complex>(n)), out_(AllocOrThrow<Complex>(n)) {
  std::lock_guard<std::mutex> lock(PlannerMutex());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  forward_ = fftw_plan_dft_1d(static_cast<int>(n), Raw(in_), Raw(out_),
                              FFTW_FORWARD, flags);
  backward_ = fftw_plan_dft_1d(static_cast<int>(n), Raw(in_), Raw(out_),
                               FFTW_BACKWARD, flags);
}

ComplexFft::~ComplexFft() {
  std::lock_guard<std::mutex> lock(PlannerMutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_));
  fftw_free(in_);
  fftw_free(out_);
}

void ComplexFft::Forward(std::span<const Complex> in, std::span<Complex> out) {
  assert(in.size() == n_ && out.size() == n_ && in.data() != out.data());
  fftw_execute_dft(static_cast<fftw_plan>(forward_),
                   Raw(const_cast<Complex*>(in.data())), Raw(out.data()));
}

void ComplexFft::Backward(std::span<const Complex> in, std::span<Complex> out) {
  assert(in.size() == n_ && out.size() == n_ && in.data() != out.data());
  fftw_execute_dft(static_cast<fftw_plan>(backward_),
                   Raw(const_cast<Complex*>(in.data())), Raw(out.data()));
}

}  // namespace sifbank

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

#ifndef SIFBANK_FFT_H_
#define SIFBANK_FFT_H_

#include <complex>
#include <cstddef>
#include <span>

namespace sifbank {

using Complex = std::complex<double>;

// Thin RAII wrappers over FFTW plans. Plans are created with FFTW_ESTIMATE so
// the same size always runs the same algorithm. Transforms are unnormalized:
// forward is sum_t x[t] e^{-2 pi i k t / n}, backward uses e^{+...}.
// A plan object may be used from one thread at a time; distinct objects are
// independent.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  // in: n reals, out: n / 2 + 1 bins.
  void Forward(std::span<const double> in, std::span<Complex> out);
  // in: n / 2 + 1 bins (Hermitian half), out: n reals.
  void Backward(std::span<const Complex> in, std::span<double> out);

 private:
  std::size_t n_;
  double* real_;
  Complex* spec_;
  void* forward_;
  void* backward_;
};

class ComplexFft {
 public:
  explicit ComplexFft(std::size_t n);
  ~ComplexFft();
  ComplexFft(const ComplexFft&) = delete;
  ComplexFft& operator=(const ComplexFft&) = delete;

  std::size_t size() const { return n_; }
  void Forward(std::span<const Complex> in, std::span<Complex> out);
  void Backward(std::span<const Complex> in, std::span<Complex> out);

 private:
  std::size_t n_;
  Complex* in_;
  Complex* out_;
  void* forward_;
  void* backward_;
};

bool IsPowerOfTwo(std::size_t n);
std::size_t NextPowerOfTwo(std::size_t n);

}  // namespace sifbank

#endif  // SIFBANK_FFT_H_

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

// Reference implementations. Plain loops in index order.

#include "sifbank/simd/kernels.h"

namespace sifbank::simd {
namespace {

double Dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double SumSquares(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

void NormSquared(const Complex* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = x[i].real();
    const double im = x[i].imag();
    out[i] = re * re + im * im;
  }
}

void ComplexMultiply(const Complex* a, const Complex* b, Complex* out,
                     std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    out[i] = Complex(ar * br - ai * bi, ar * bi + ai * br);
  }
}

double WeightedNorm(const double* w, const Complex* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double re = y[i].real();
    const double im = y[i].imag();
    acc += w[i] * (re * re + im * im);
  }
  return acc;
}

void RealMultiply(const double* a, const double* b, double* out,
                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

}  // namespace

const KernelTable& ScalarKernels() {
  static const KernelTable table = {"scalar",        Dot,
                                    SumSquares,      NormSquared,
                                    ComplexMultiply, WeightedNorm,
                                    RealMultiply};
  return table;
}

}  // namespace sifbank::simd

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

#ifndef SIFBANK_SIMD_KERNELS_H_
#define SIFBANK_SIMD_KERNELS_H_

#include <complex>
#include <cstddef>

namespace sifbank::simd {

using Complex = std::complex<double>;

// Inner loops shared by both pipelines. Every variant computes the same
// quantity; vector variants may sum in a different order, so results agree
// to rounding, not bit for bit. Within one process the selected table never
// changes, which keeps repeated runs bit-identical.
struct KernelTable {
  const char* name;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // sum_i x[i]^2
  double (*sum_squares)(const double* x, std::size_t n);
  // out[i] = |x[i]|^2
  void (*norm_squared)(const Complex* x, double* out, std::size_t n);
  // out[i] = a[i] * b[i]
  void (*complex_multiply)(const Complex* a, const Complex* b, Complex* out,
                           std::size_t n);
  // sum_i w[i] * |y[i]|^2
  double (*weighted_norm)(const double* w, const Complex* y, std::size_t n);
  // out[i] = a[i] * b[i]
  void (*real_multiply)(const double* a, const double* b, double* out,
                        std::size_t n);
};

const KernelTable& ScalarKernels();

// nullptr when the AVX2 variant was not built or the CPU lacks AVX2/FMA.
const KernelTable* Avx2Kernels();

// Picked once per process: AVX2 when available, unless the environment
// variable SIFBANK_SIMD is set to "scalar".
const KernelTable& ActiveKernels();

}  // namespace sifbank::simd

#endif  // SIFBANK_SIMD_KERNELS_H_

// Copyright 2026 The qdesign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Raw-pointer kernel signatures shared by the scalar and AVX2 translation
// units. The AVX2 unit includes nothing but this header and <immintrin.h>, so
// no inline library code gets compiled with wider instructions than the CPU
// might support.

#include <cstddef>

namespace qdesign::kernels {

struct KernelTable {
  void (*accumulate_abs2)(const double* x_interleaved, double* out, std::size_t n);
  void (*accumulate_power_moments)(const double* p, std::size_t n, int n_max, double* acc);
  void (*accumulate_falling_moments)(const double* c, std::size_t n, double shots, int n_max,
                                     double* acc);
  void (*scale_complex)(double* x_interleaved, const double* f, std::size_t n);
  void (*adjacent_gap_ratios)(const double* gaps, double* r, std::size_t n);
};

namespace scalar {
extern const KernelTable kTable;
}

#if defined(QDESIGN_HAVE_AVX2)
namespace avx2 {
extern const KernelTable kTable;
}
#endif

}  // namespace qdesign::kernels

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

// AVX2 variants. Compiled with -mavx2 -mfma; only reached through the
// dispatch table after a CPUID check.

#include <immintrin.h>

#include "kernels/kernels_impl.hpp"

namespace qdesign::kernels::avx2 {
namespace {

void accumulate_abs2(const double* x, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(x + 2 * i);
    __m256d b = _mm256_loadu_pd(x + 2 * i + 4);
    a = _mm256_mul_pd(a, a);
    b = _mm256_mul_pd(b, b);
    // hadd leaves |z0|^2, |z2|^2, |z1|^2, |z3|^2.
    __m256d h = _mm256_hadd_pd(a, b);
    h = _mm256_permute4x64_pd(h, _MM_SHUFFLE(3, 1, 2, 0));
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(out + i), h));
  }
  for (; i < n; ++i) {
    const double re = x[2 * i];
    const double im = x[2 * i + 1];
    out[i] += re * re + im * im;
  }
}

void accumulate_power_moments(const double* p, std::size_t n, int n_max, double* acc) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(p + i);
    __m256d term = _mm256_set1_pd(1.0);
    for (int k = 0; k < n_max; ++k) {
      term = _mm256_mul_pd(term, v);
      double* dst = acc + static_cast<std::size_t>(k) * n + i;
      _mm256_storeu_pd(dst, _mm256_add_pd(_mm256_loadu_pd(dst), term));
    }
  }
  for (; i < n; ++i) {
    double term = 1.0;
    for (int k = 0; k < n_max; ++k) {
      term *= p[i];
      acc[static_cast<std::size_t>(k) * n + i] += term;
    }
  }
}

void accumulate_falling_moments(const double* c, std::size_t n, double shots, int n_max,
                                double* acc) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(c + i);
    __m256d term = _mm256_set1_pd(1.0);
    for (int k = 0; k < n_max; ++k) {
      const __m256d kk = _mm256_set1_pd(static_cast<double>(k));
      const __m256d ratio =
          _mm256_div_pd(_mm256_sub_pd(v, kk), _mm256_set1_pd(shots - static_cast<double>(k)));
      term = _mm256_mul_pd(term, ratio);
      double* dst = acc + static_cast<std::size_t>(k) * n + i;
      _mm256_storeu_pd(dst, _mm256_add_pd(_mm256_loadu_pd(dst), term));
    }
  }
  for (; i < n; ++i) {
    double term = 1.0;
    for (int k = 0; k < n_max; ++k) {
      term *= (c[i] - k) / (shots - k);
      acc[static_cast<std::size_t>(k) * n + i] += term;
    }
  }
}

void scale_complex(double* x, const double* f, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d pair = _mm256_castpd128_pd256(_mm_loadu_pd(f + i));
    // [f0, f0, f1, f1]
    const __m256d factors = _mm256_permute4x64_pd(pair, _MM_SHUFFLE(1, 1, 0, 0));
    _mm256_storeu_pd(x + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(x + 2 * i), factors));
  }
  for (; i < n; ++i) {
    x[2 * i] *= f[i];
    x[2 * i + 1] *= f[i];
  }
}

void adjacent_gap_ratios(const double* g, double* r, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(g + i);
    const __m256d b = _mm256_loadu_pd(g + i + 1);
    _mm256_storeu_pd(r + i, _mm256_div_pd(_mm256_min_pd(a, b), _mm256_max_pd(a, b)));
  }
  for (; i < n; ++i) {
    const double a = g[i];
    const double b = g[i + 1];
    r[i] = (a < b ? a : b) / (a < b ? b : a);
  }
}

}  // namespace

const KernelTable kTable = {
    accumulate_abs2, accumulate_power_moments, accumulate_falling_moments,
    scale_complex,   adjacent_gap_ratios,
};

}  // namespace qdesign::kernels::avx2

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

#include <algorithm>

#include "kernels/kernels_impl.hpp"

namespace qdesign::kernels::scalar {
namespace {

void accumulate_abs2(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = x[2 * i];
    const double im = x[2 * i + 1];
    out[i] += re * re + im * im;
  }
}

void accumulate_power_moments(const double* p, std::size_t n, int n_max, double* acc) {
  for (std::size_t i = 0; i < n; ++i) {
    double term = 1.0;
    for (int k = 0; k < n_max; ++k) {
      term *= p[i];
      acc[static_cast<std::size_t>(k) * n + i] += term;
    }
  }
}

void accumulate_falling_moments(const double* c, std::size_t n, double shots, int n_max,
                                double* acc) {
  for (std::size_t i = 0; i < n; ++i) {
    double term = 1.0;
    for (int k = 0; k < n_max; ++k) {
      term *= (c[i] - k) / (shots - k);
      acc[static_cast<std::size_t>(k) * n + i] += term;
    }
  }
}

void scale_complex(double* x, const double* f, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    x[2 * i] *= f[i];
    x[2 * i + 1] *= f[i];
  }
}

void adjacent_gap_ratios(const double* g, double* r, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = std::min(g[i], g[i + 1]) / std::max(g[i], g[i + 1]);
  }
}

}  // namespace

const KernelTable kTable = {
    accumulate_abs2, accumulate_power_moments, accumulate_falling_moments,
    scale_complex,   adjacent_gap_ratios,
};

}  // namespace qdesign::kernels::scalar

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

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops of the measurement and diagnostics pipeline.
//
// Every kernel has a portable scalar reference and, on x86-64, an AVX2/FMA
// variant. The variant is picked once at startup from CPUID and can be forced
// for testing; both must agree to rounding (see tests/unit/kernels_test.cpp).
namespace qdesign::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);

/// Best ISA supported by both this build and the running CPU.
Isa detected_isa();
/// ISA used by the dispatching entry points below.
Isa active_isa();
/// Overrides the dispatch choice. Throws std::invalid_argument when `isa`
/// is not available on this build/CPU.
void force_isa(Isa isa);

/// out[i] += |x[i]|^2.
void accumulate_abs2(std::span<const std::complex<double>> x, std::span<double> out);

/// acc[(k-1)*p.size() + i] += p[i]^k for k = 1..n_max.
void accumulate_power_moments(std::span<const double> p, int n_max, std::span<double> acc);

/// acc[(k-1)*c.size() + i] += c(c-1)...(c-k+1) / [N(N-1)...(N-k+1)] for
/// k = 1..n_max, with c = counts[i] and N = shots. Requires shots >= n_max.
void accumulate_falling_moments(std::span<const double> counts, double shots, int n_max,
                                std::span<double> acc);

/// x[i] *= f[i].
void scale_complex(std::span<std::complex<double>> x, std::span<const double> f);

/// r[i] = min(g[i], g[i+1]) / max(g[i], g[i+1]); g has r.size() + 1 entries.
void adjacent_gap_ratios(std::span<const double> gaps, std::span<double> r);

}  // namespace qdesign::kernels

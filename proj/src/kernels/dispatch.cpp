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

#include <atomic>
#include <stdexcept>
#include <string>

#include "kernels/kernels_impl.hpp"
#include "qdesign/kernels.hpp"

namespace qdesign::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(QDESIGN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& table_for(Isa isa) {
#if defined(QDESIGN_HAVE_AVX2)
  if (isa == Isa::kAvx2) return avx2::kTable;
#endif
  (void)isa;
  return scalar::kTable;
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

const KernelTable& table() { return table_for(active().load(std::memory_order_relaxed)); }

void require_size(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("kernel size mismatch: ") + what);
}

const double* as_doubles(const std::complex<double>* p) { return reinterpret_cast<const double*>(p); }
double* as_doubles(std::complex<double>* p) { return reinterpret_cast<double*>(p); }

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::kAvx2 ? "avx2" : "scalar"; }

Isa detected_isa() {
  static const Isa isa = cpu_has_avx2() ? Isa::kAvx2 : Isa::kScalar;
  return isa;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (isa == Isa::kAvx2 && detected_isa() != Isa::kAvx2) {
    throw std::invalid_argument("AVX2 kernels are not available on this build/CPU");
  }
  active().store(isa, std::memory_order_relaxed);
}

void accumulate_abs2(std::span<const std::complex<double>> x, std::span<double> out) {
  require_size(x.size() == out.size(), "accumulate_abs2");
  table().accumulate_abs2(as_doubles(x.data()), out.data(), x.size());
}

void accumulate_power_moments(std::span<const double> p, int n_max, std::span<double> acc) {
  require_size(n_max >= 1 && acc.size() == p.size() * static_cast<std::size_t>(n_max),
               "accumulate_power_moments");
  table().accumulate_power_moments(p.data(), p.size(), n_max, acc.data());
}

void accumulate_falling_moments(std::span<const double> counts, double shots, int n_max,
                                std::span<double> acc) {
  require_size(n_max >= 1 && acc.size() == counts.size() * static_cast<std::size_t>(n_max),
               "accumulate_falling_moments");
  if (shots < n_max) throw std::domain_error("falling-factorial moment needs shots >= order");
  table().accumulate_falling_moments(counts.data(), counts.size(), shots, n_max, acc.data());
}

void scale_complex(std::span<std::complex<double>> x, std::span<const double> f) {
  require_size(x.size() == f.size(), "scale_complex");
  table().scale_complex(as_doubles(x.data()), f.data(), x.size());
}

void adjacent_gap_ratios(std::span<const double> gaps, std::span<double> r) {
  require_size(gaps.size() == r.size() + 1, "adjacent_gap_ratios");
  table().adjacent_gap_ratios(gaps.data(), r.data(), r.size());
}

}  // namespace qdesign::kernels

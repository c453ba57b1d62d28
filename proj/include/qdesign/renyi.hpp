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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qdesign/hilbert.hpp"
#include "qdesign/measure.hpp"

namespace qdesign {

/// Ensemble averages <P(s)^k>_e per sector and outcome, k = 1..n_max.
struct SectorMoments {
  SectorLabel label;
  std::size_t dim = 0;
  std::vector<double> weights;                // Tr P_s per outcome
  std::vector<std::vector<double>> moments;   // [k-1][s]
};

struct MomentTable {
  std::vector<SectorMoments> sectors;
  int n_max = 0;
  std::size_t n_unitaries = 0;
  ShotCount shots;
};

/// Streams ShotRecords of successive unitaries into a MomentTable. Finite
/// records contribute unbiased falling-factorial powers, exact ones P^k.
class MomentAccumulator {
 public:
  MomentAccumulator(std::vector<SectorLabel> labels, const Observable& obs, int n_max,
                    ShotCount shots);

  void add(const ShotRecord& record);
  std::size_t count() const { return count_; }
  MomentTable table() const;

 private:
  std::vector<SectorLabel> labels_;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<double>> weights_;
  int n_max_;
  ShotCount shots_;
  std::size_t count_ = 0;
  std::vector<std::vector<double>> sums_;  // per sector, k-major
};

/// <P> and <P^2> over a 2-design for an outcome of weight w in a sector of size dim.
std::pair<double, double> forward_second_moment(double tr, double tr2, double w, std::size_t dim);
/// Inverse of forward_second_moment: (Tr rho, Tr rho^2). Throws
/// std::invalid_argument when dim < 2 or w == dim.
std::pair<double, double> invert_second_moment(double m1, double m2, double w, std::size_t dim);

/// Number of permutations of cycle type 1^b1 2^b2 ... n^bn.
std::int64_t permutation_type_count(std::span<const int> b);
/// All multiplicity vectors b (size n) with sum_l l*b_l = n.
std::vector<std::vector<int>> cycle_types(int n);

/// <P^n> over an n-design for a rank-one outcome; traces[k-1] = Tr rho^k, k = 1..n.
double forward_moment(int n, std::span<const double> traces, std::size_t dim);
/// Solves forward_moment for Tr rho^n given traces of orders 1..n-1.
double invert_higher_moment(int n, double mn, std::span<const double> lower, std::size_t dim);

struct ErrorPrediction {
  double value = 0.0;
  double c_n = 0.0;        // unitary-ensemble spread of P^n
  double c_prime = 0.0;    // floor constant
  double b_n = 0.0;        // shot-noise constant
  bool unvalidated = false;  // n > 4
};

/// sqrt(<P^2n> - <P^n>^2) for a flat spectrum with Tr rho^n = p_n in a
/// sector of size dim (p_n = 1 is the pure-state bound).
double c_n_flat(int n, std::size_t dim, double p_n);
/// Leading large-dim form n!/dim^n * sqrt(binom(2n, n) - 1).
double c_n_pure_asymptotic(int n, double dim);

/// Error bar of p_n from N_U unitaries, N_M shots each and averaging over
/// `outcomes` outcomes (dim by default).
ErrorPrediction predicted_error(int n, std::size_t n_unitaries, ShotCount shots, std::size_t dim,
                                double p_n_guess = 1.0,
                                std::optional<std::size_t> outcomes = std::nullopt);

struct EstimationReport {
  int n_max = 0;
  std::vector<SectorLabel> labels;
  std::vector<std::vector<double>> sector_traces;  // [b][k-1]
  std::vector<double> totals;                      // p_k, [k-1]
  /// S^(k) for k >= 2; empty when p_k <= 0 (raw p_k is still in totals).
  std::vector<std::optional<double>> entropies;
  ErrorPrediction predicted;
  std::size_t n_unitaries = 0;
  ShotCount shots;

  bool entropy_defined(int k) const { return entropies.at(k - 1).has_value(); }
};

/// Inverts every outcome's moments order by order, averages uniformly over
/// the outcomes of a sector and sums sectors. Orders >= 3 need a rank-one
/// observable; otherwise std::domain_error is thrown.
EstimationReport estimate_renyi(const MomentTable& table, int n);

}  // namespace qdesign

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
#include <vector>

#include "qdesign/hilbert.hpp"
#include "qdesign/rng.hpp"
#include "qdesign/unitaries.hpp"

namespace qdesign {

/// Sector-resolving projective observable.
///
/// Within each sector the basis indices are partitioned into outcome groups;
/// an outcome never spans two sectors. Group weights are Tr P_s = group size.
class Observable {
 public:
  /// One outcome per basis state.
  static Observable fine_grained(std::span<const std::size_t> dims);
  /// Consecutive runs of `group_size` basis states; a shorter final group
  /// absorbs the remainder.
  static Observable coarse(std::span<const std::size_t> dims, std::size_t group_size);
  /// Arbitrary partition: group_of[b][i] is the outcome of basis index i.
  explicit Observable(std::vector<std::vector<int>> group_of);

  std::size_t sectors() const { return group_of_.size(); }
  std::size_t dim(std::size_t b) const { return group_of_[b].size(); }
  std::size_t outcomes(std::size_t b) const { return weights_[b].size(); }
  std::size_t total_outcomes() const;
  std::span<const int> group_of(std::size_t b) const { return group_of_[b]; }
  std::span<const double> weights(std::size_t b) const { return weights_[b]; }
  bool rank_one() const;

 private:
  std::vector<std::vector<int>> group_of_;
  std::vector<std::vector<double>> weights_;
};

/// P(s) per sector and outcome.
struct OutcomeDistribution {
  std::vector<std::vector<double>> probs;

  double total() const;
};

/// Number of shots per unitary; nullopt is the N_M = infinity limit.
using ShotCount = std::optional<std::int64_t>;

/// Per sector and outcome: shot counts B(s), or exact P(s) when `shots` is empty.
struct ShotRecord {
  std::vector<std::vector<double>> values;
  ShotCount shots;

  bool exact() const { return !shots.has_value(); }
};

struct OutcomeRef {
  std::size_t sector = 0;
  std::size_t outcome = 0;
};

/// Tr[U rho U^dag P_s], clipped to [0, 1]. Throws std::invalid_argument when
/// the sector structures of U, rho and the observable disagree, and
/// std::runtime_error when a probability leaves [-1e-12, 1 + 1e-12].
OutcomeDistribution outcome_probs(const BlockUnitary& u, const SectorState& rho,
                                  const Observable& obs);

/// Multinomial draw of `shots` outcomes over all sectors jointly. With
/// shots = nullopt the probabilities are stored as is.
ShotRecord sample_shots(const OutcomeDistribution& dist, ShotCount shots, SeededRng& rng);

/// Flattened outcome index of every individual shot, in draw order.
/// The flattening is sector-major.
std::vector<std::size_t> sample_outcomes(const OutcomeDistribution& dist, std::int64_t shots,
                                         SeededRng& rng);

/// Unbiased estimate of P(s)^n: falling factorial B^(n) / N_M^(n), or P^n in
/// exact mode. Throws std::domain_error when N_M < n.
double unbiased_power(const ShotRecord& record, OutcomeRef s, int n);

}  // namespace qdesign

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
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdesign/hilbert.hpp"
#include "qdesign/models.hpp"
#include "qdesign/rng.hpp"

namespace qdesign {

enum class ScheduleMode {
  /// Static Hamiltonian plus a fresh disorder pattern on every quench.
  kFresh,
  /// Odd quenches (1-based) apply the static part only, even quenches apply a
  /// fresh disorder pattern alone.
  kDigital,
  /// A single pattern switched on (odd quenches) and off (even quenches),
  /// with durations uniform in [0, t_max].
  kSinglePatternRandomTimes,
};

std::string_view schedule_mode_name(ScheduleMode mode);
ScheduleMode parse_schedule_mode(std::string_view name);

struct QuenchSchedule {
  int eta = 1;
  double T = 1.0;
  ScheduleMode mode = ScheduleMode::kFresh;
  double t_max = 0.0;

  void validate() const;
};

/// Eigendecomposition failure, tagged with the sector it happened in.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, SectorLabel label)
      : std::runtime_error(what), label_(std::move(label)) {}
  const SectorLabel& label() const { return label_; }

 private:
  SectorLabel label_;
};

/// U_A as one dense unitary per sector, in sector-list order.
struct BlockUnitary {
  std::vector<SectorLabel> labels;
  std::vector<Eigen::MatrixXcd> blocks;

  std::size_t size() const { return blocks.size(); }
  /// max over blocks of max |U^dag U - I|.
  double unitarity_defect() const;
};

/// exp(-i H t) for a fixed H, reusing one eigendecomposition for all t.
class Propagator {
 public:
  explicit Propagator(const HermitianOperator& h);

  Eigen::MatrixXcd at(double t) const;
  /// exp(-i H t) * x without forming the propagator.
  Eigen::MatrixXcd apply(double t, const Eigen::MatrixXcd& x) const;
  const Eigen::VectorXd& energies() const { return energies_; }

 private:
  Eigen::VectorXd energies_;
  Eigen::MatrixXd vectors_;
};

Eigen::MatrixXcd evolve(const HermitianOperator& h, double t);

/// One factor e^{-i H^j T_j} of the product, independent of the sector.
struct QuenchStep {
  bool include_static = true;
  std::optional<DisorderPattern> disorder;
  double duration = 0.0;
};

/// Draws the j = 1..eta steps of one random unitary. Patterns are shared by
/// every sector, so the same sequence yields all blocks of one U_A.
std::vector<QuenchStep> draw_quench_sequence(const QuenchModel& model,
                                             const QuenchSchedule& schedule, SeededRng& rng);

/// Product of the steps with step 1 rightmost.
Eigen::MatrixXcd sequence_unitary(const QuenchModel& model, const Sector& sector,
                                  std::span<const QuenchStep> steps);

BlockUnitary compose_quenches(const QuenchModel& model, const Sector& sector,
                              const QuenchSchedule& schedule, SeededRng& rng);
BlockUnitary compose_quenches(const QuenchModel& model, std::span<const Sector> sectors,
                              const QuenchSchedule& schedule, SeededRng& rng);
BlockUnitary sequence_block_unitary(const QuenchModel& model, std::span<const Sector> sectors,
                                    std::span<const QuenchStep> steps);

/// Haar-random unitary of size dim.
Eigen::MatrixXcd sample_cue(std::size_t dim, SeededRng& rng);

}  // namespace qdesign

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
#include <string>
#include <utility>
#include <vector>

#include "qdesign/csv.hpp"
#include "qdesign/imperfect.hpp"
#include "qdesign/measure.hpp"
#include "qdesign/model.hpp"
#include "qdesign/unitaries.hpp"

namespace qdesign {

// Config-driven sweeps. The schema is documented in docs/config_schema.md.

enum class UnitarySource { kQuench, kCue };

struct ModelSpec {
  UnitarySource source = UnitarySource::kQuench;
  /// Quench model; for CUE runs on spins this is an Ising chain used only
  /// for its basis.
  std::optional<QuenchModel> model;
  /// CUE runs without lattice structure: one block of this size.
  std::size_t cue_dim = 0;
};

struct StateSpec {
  std::string name = "antiferromagnetic";
  std::vector<int> occupation;  // basis / fock
  std::size_t rank = 1;         // flat
};

struct MeasurementSpec {
  std::size_t n_unitaries = 100;
  ShotCount shots;
  std::vector<int> orders{2};
  std::size_t group_size = 1;
};

struct ImperfectionSpec {
  std::optional<ChannelSpec> channel;
  std::optional<FidelitySpec> fidelity;
  double jitter = 0.0;
  /// Jittered runs rediagonalize per shot, so sector sizes are capped.
  std::size_t jitter_max_dim = 1024;
};

struct ChaosSpec {
  bool baselines = true;
  bool histogram = false;
};

struct ExperimentConfig {
  std::uint64_t seed = 0;
  ModelSpec model;
  QuenchSchedule schedule;
  StateSpec state;
  MeasurementSpec measurement;
  int repetitions = 1;
  ImperfectionSpec imperfections;
  ChaosSpec chaos;
};

/// One point of the sweep grid: the dotted keys with their values (strings
/// verbatim, anything else as compact JSON) and the fully resolved config.
struct GridPoint {
  std::vector<std::pair<std::string, std::string>> assignments;
  ExperimentConfig config;
};

/// Parsed and validated config file with its sweep expanded.
struct ExperimentPlan {
  std::string canonical;   // canonical JSON of the whole file, seed applied
  std::uint64_t hash = 0;  // FNV-1a 64 of `canonical`
  std::uint64_t seed = 0;
  std::optional<std::string> output;
  std::optional<unsigned> threads;
  std::vector<std::string> sweep_keys;
  std::vector<GridPoint> points;
};

/// Throws std::invalid_argument with the offending key path on any schema
/// violation, including unknown keys.
ExperimentPlan parse_plan(const std::string& json_text, std::optional<std::uint64_t> seed_override = {});
ExperimentPlan load_plan(const std::string& path, std::optional<std::uint64_t> seed_override = {});

std::uint64_t fnv1a64(std::string_view bytes);

struct RunOptions {
  unsigned threads = 1;
};

/// Error of p_n versus eta, T, delta, ... with quench unitaries.
csv::Table run_converge(const ExperimentPlan& plan, const RunOptions& opts);
/// Same pipeline with CUE unitaries per sector.
csv::Table run_errors(const ExperimentPlan& plan, const RunOptions& opts);
/// Decoherence, disorder jitter and readout errors, paired with the ideal run.
csv::Table run_imperfect(const ExperimentPlan& plan, const RunOptions& opts);
/// IPR, gap ratios and purity error per grid point, plus CUE/Poisson baselines.
csv::Table run_chaos(const ExperimentPlan& plan, const RunOptions& opts);

}  // namespace qdesign

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
#include <span>
#include <vector>

#include "qdesign/hilbert.hpp"
#include "qdesign/measure.hpp"
#include "qdesign/models.hpp"
#include "qdesign/rng.hpp"
#include "qdesign/unitaries.hpp"

namespace qdesign {

enum class ChannelKind { kDephasing, kDepolarizing };

std::string_view channel_kind_name(ChannelKind kind);
ChannelKind parse_channel_kind(std::string_view name);

/// Product over sites of one-site Kraus maps with jump probability p:
/// dephasing (1-p) rho + p Z rho Z, depolarizing (1-3p) rho + p sum_a s^a rho s^a.
struct ChannelSpec {
  ChannelKind kind = ChannelKind::kDephasing;
  double p = 0.0;

  void validate() const;
};

/// Per-site readout error: each spin is misread with probability p < 1/2.
struct FidelitySpec {
  double p = 0.0;

  void validate() const;
};

/// Channel applied to a spin-1/2 state held as one full 2^L block.
/// Throws std::invalid_argument for any other sector structure.
SectorState apply_channel(const SectorState& rho, const ChannelSpec& spec);

/// D(U D(rho) U^dag).
SectorState decohered_final_state(const SectorState& rho, const BlockUnitary& u,
                                  const ChannelSpec& spec);

/// pattern + normal(0, (p delta)^2) per entry.
DisorderPattern jitter_disorder(const DisorderPattern& pattern, double p, double delta,
                                SeededRng& rng);
/// Jitters every pattern of a quench sequence independently.
std::vector<QuenchStep> jitter_sequence(std::span<const QuenchStep> steps, double p, double delta,
                                        SeededRng& rng);

/// Independently flips each site's readout with probability spec.p.
BasisConfig fidelity_flip(const BasisConfig& shot, const FidelitySpec& spec, SeededRng& rng);
/// Same on a spin basis index of an L-site chain (bit L-1-i is site i).
std::size_t fidelity_flip_index(std::size_t index, int sites, const FidelitySpec& spec,
                                SeededRng& rng);

/// Applies fidelity_flip_index to every shot of a single full-block record.
ShotRecord fidelity_flip_record(const ShotRecord& record, int sites, const FidelitySpec& spec,
                                SeededRng& rng);

/// p2 / (1-p)^(2L).
double fidelity_correct(double p2_est, double p, int sites);

}  // namespace qdesign

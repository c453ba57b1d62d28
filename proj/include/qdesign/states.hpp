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

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qdesign/hilbert.hpp"
#include "qdesign/model.hpp"
#include "qdesign/rng.hpp"

namespace qdesign {

// Test states, always returned aligned with the given sector list.
//
// A superposition across sectors is replaced by its block-diagonal part
// (sum_alpha P_alpha |psi><psi| P_alpha), which is what a sector-resolving
// protocol can see.

using Amplitudes = std::vector<std::pair<BasisConfig, std::complex<double>>>;

SectorState from_amplitudes(std::span<const Sector> sectors, const Amplitudes& amps);
SectorState basis_state(std::span<const Sector> sectors, const BasisConfig& config);

/// |up down up down ...>, site 0 up.
SectorState antiferromagnetic(const QuenchModel& model, std::span<const Sector> sectors);
SectorState all_up(const QuenchModel& model, std::span<const Sector> sectors);
/// (|up...up> + |down...down>)/sqrt(2).
SectorState ghz(const QuenchModel& model, std::span<const Sector> sectors);

/// Product of fermionic creation operators on the vacuum. Each factor is
/// (x, y, spin) with 1-based coordinates and spin 0 = up, 1 = down; the last
/// factor acts first. Returns the occupation and the reordering sign.
std::pair<BasisConfig, int> fermion_product(const Lattice& lattice,
                                            std::span<const std::array<int, 3>> creators);

/// The two-term Fermi-Hubbard test states "psi11", "psi20" and "psi22".
SectorState fermi_hubbard_state(const QuenchModel& model, std::span<const Sector> sectors,
                                std::string_view name);

SectorState bose_fock(const QuenchModel& model, std::span<const Sector> sectors,
                      std::span<const int> occupation);
/// Ground state of the clean Bose-Hubbard chain with U = J.
SectorState bose_ground(const QuenchModel& model, std::span<const Sector> sectors);

/// Haar-random pure state in sector `sector_index`.
SectorState haar_random_state(std::span<const Sector> sectors, std::size_t sector_index,
                              SeededRng& rng);
/// Identity over all sectors divided by the total dimension.
SectorState maximally_mixed(std::span<const Sector> sectors);
/// Equal mixture of the first `rank` basis states of one sector (purity 1/rank).
SectorState flat_mixed(std::span<const Sector> sectors, std::size_t sector_index, std::size_t rank);

}  // namespace qdesign

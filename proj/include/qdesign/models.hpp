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
#include <vector>

#include <Eigen/Dense>

#include "qdesign/hilbert.hpp"
#include "qdesign/model.hpp"
#include "qdesign/rng.hpp"

namespace qdesign {

/// One disorder realization Delta^j.
///
/// `values` has one entry per disorder mode: per site for Ising (s^z_i) and
/// Bose-Hubbard (n_i); per (site, spin) for Fermi-Hubbard with [2i] = up and
/// [2i+1] = down (n_{i,sigma}).
struct DisorderPattern {
  std::vector<double> values;
  int quench_index = 0;
};

/// Hamiltonian restricted to one sector.
///
/// All three lattice models have real matrix elements in the occupation basis,
/// so the operator is stored as a real symmetric matrix.
struct HermitianOperator {
  SectorLabel label;
  Eigen::MatrixXd matrix;
};

/// Number of entries of a DisorderPattern for `model`.
std::size_t disorder_modes(const QuenchModel& model);

/// Coupling J / r^alpha between Ising spins at distance r >= 1.
double ising_coupling(const IsingParams& params, int distance);

/// Static Hamiltonian H|_A in the given sector.
HermitianOperator build_static(const QuenchModel& model, const Sector& sector);

/// Diagonal disorder term sum_{i,sigma} Delta_{i,sigma} X_{i,sigma}.
HermitianOperator build_disorder(const QuenchModel& model, const Sector& sector,
                                 const DisorderPattern& pattern);

/// H|_A + disorder term.
HermitianOperator build_quench(const QuenchModel& model, const Sector& sector,
                               const DisorderPattern& pattern);

/// Fresh pattern with i.i.d. normal(0, delta^2) entries. For Fermi-Hubbard the
/// down-spin potential is drawn per site and the up-spin one is spin_ratio times it.
DisorderPattern sample_disorder(const QuenchModel& model, SeededRng& rng);

}  // namespace qdesign

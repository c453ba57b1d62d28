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

#include <Eigen/Dense>

#include "qdesign/hilbert.hpp"
#include "qdesign/rng.hpp"
#include "qdesign/unitaries.hpp"

namespace qdesign {

/// Eigenphases in [-pi, pi), ascending.
struct PhaseSpectrum {
  std::vector<double> phases;
};

/// Orthonormal eigenbasis of a unitary block; column k belongs to phases[k].
struct UnitaryEigensystem {
  PhaseSpectrum spectrum;
  Eigen::MatrixXcd vectors;
  /// Two phases closer than 1e-8: the eigenbasis is not unique there.
  bool degenerate = false;
};

UnitaryEigensystem unitary_eigensystem(const Eigen::MatrixXcd& u);
PhaseSpectrum phase_spectrum(const Eigen::MatrixXcd& u);

struct IprValue {
  double value = 0.0;
  bool degenerate = false;
};

/// sum_nu <phi_nu| rho |phi_nu>^2 over the eigenvectors of u.
IprValue ipr(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& rho);
/// Sum of the block IPRs.
IprValue ipr(const BlockUnitary& u, const SectorState& rho);

/// 2-design average of the IPR for a state with spectrum `eigenvalues`
/// (zero-padded up to dim).
double ipr_cue_reference(std::span<const double> eigenvalues, std::size_t dim);

struct GapRatios {
  std::vector<double> r;
  /// Some gap fell below 1e-14 and was floored.
  bool coincident = false;
};

/// Circular ratios min(d_k, d_k+1)/max(d_k, d_k+1); the gap from the last
/// phase back to the first is included, so r has one entry per phase.
GapRatios phase_gap_ratios(const PhaseSpectrum& spectrum);

/// i.i.d. uniform phases on [-pi, pi), sorted.
PhaseSpectrum poisson_phases(std::size_t dim, SeededRng& rng);

/// Density histogram of r over [0, 1] with `bins` equal bins.
std::vector<double> r_histogram(std::span<const double> r, std::size_t bins = 50);

struct EnsembleDiagnostics {
  double mean_ipr = 0.0;
  double ipr_reference = 0.0;
  double mean_r = 0.0;  // pooled over all gaps of blocks with dim >= 3
  std::size_t r_count = 0;
  std::vector<double> r_histogram;
  double purity_estimate = 0.0;  // exact-mode, fine-grained
  double purity_exact = 0.0;
  double purity_error = 0.0;
  bool degenerate = false;
  bool coincident = false;
};

EnsembleDiagnostics ensemble_diagnostics(std::span<const BlockUnitary> ensemble,
                                         const SectorState& rho);

}  // namespace qdesign

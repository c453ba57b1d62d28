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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "qdesign/model.hpp"

namespace qdesign {

/// Conserved charges of a sector: {} (Ising, omega != 0), {parity} (Ising,
/// omega == 0), {N, Sz} (Fermi-Hubbard, Sz = N_up - N_down), {N} (Bose-Hubbard).
using SectorLabel = std::vector<int>;

/// Occupation record of one basis state.
///
///  - spin-1/2: one entry per site, 1 = up, 0 = down;
///  - Fermi-Hubbard: two entries per site, [2i] = n_{i,up}, [2i+1] = n_{i,down};
///  - Bose-Hubbard: one entry per site, the boson number.
struct BasisConfig {
  std::vector<std::uint8_t> occupation;

  auto operator<=>(const BasisConfig&) const = default;
};

/// One block of fixed conserved charges.
///
/// Basis states are ordered by descending occupation tuple, site 0 most
/// significant (so all-up comes first for spins and (N, 0, ...) first for bosons).
class Sector {
 public:
  Sector(SectorLabel label, std::vector<BasisConfig> basis);

  const SectorLabel& label() const { return label_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<BasisConfig>& basis() const { return basis_; }
  const BasisConfig& config(std::size_t i) const { return basis_[i]; }

  std::optional<std::size_t> index_of(const BasisConfig& config) const;

 private:
  SectorLabel label_;
  std::vector<BasisConfig> basis_;
  std::uint64_t base_ = 2;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Charges of `config` under the sector rule of `model`.
SectorLabel sector_label_of(const QuenchModel& model, const BasisConfig& config);

/// All non-empty sectors of the model, ordered lexicographically by label.
/// For Bose-Hubbard this is the single sector N = params.particles.
std::vector<Sector> enumerate_sectors(const QuenchModel& model);

/// The sector with the given label. Throws std::invalid_argument for labels
/// that are malformed or empty (negative N, |Sz| > N, parity mismatch, ...).
Sector make_sector(const QuenchModel& model, const SectorLabel& label);

/// Dimension of the full model space (2^L, 4^L, or C(N+L-1, N)).
std::uint64_t full_dimension(const QuenchModel& model);

/// Block-diagonal density matrix rho_A = (+)_alpha rho^(alpha).
///
/// Blocks align with a sector list. A block whose `rho` is empty (0 x 0) is
/// the zero matrix of size `dim`. Construction validates Hermiticity (1e-12),
/// positivity (eigenvalues >= -1e-12) and unit total trace (1e-12), and
/// caches each block's spectrum and a factor W with rho = W W^dagger.
class SectorState {
 public:
  struct Block {
    SectorLabel label;
    std::size_t dim = 0;
    Eigen::MatrixXcd rho;
  };

  explicit SectorState(std::vector<Block> blocks);

  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  bool is_zero(std::size_t b) const { return blocks_[b].rho.size() == 0; }
  double weight(std::size_t b) const { return weights_[b]; }
  std::span<const double> eigenvalues(std::size_t b) const { return eigenvalues_[b]; }
  const Eigen::MatrixXcd& factor(std::size_t b) const { return factors_[b]; }

  /// Dense rho^(alpha) (zero-filled for empty blocks).
  Eigen::MatrixXcd dense_block(std::size_t b) const;

 private:
  std::vector<Block> blocks_;
  std::vector<double> weights_;
  std::vector<std::vector<double>> eigenvalues_;
  std::vector<Eigen::MatrixXcd> factors_;
};

/// Exact Tr[(rho^(alpha))^n] for every block, from its eigenvalues.
std::map<SectorLabel, double> sector_trace_powers(const SectorState& state, int n);

/// Sum over sectors of sector_trace_powers.
double total_trace_power(const SectorState& state, int n);

}  // namespace qdesign

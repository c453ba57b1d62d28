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

#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace qdesign {

/// Rectangular lattice with open boundaries; a chain is the Ly == 1 case.
/// Sites are numbered row-major: site(x, y) = y * Lx + x.
class Lattice {
 public:
  static Lattice chain(int length);
  static Lattice rectangle(int lx, int ly);

  int lx() const { return lx_; }
  int ly() const { return ly_; }
  int sites() const { return lx_ * ly_; }
  bool is_chain() const { return ly_ == 1; }
  int site(int x, int y) const { return y * lx_ + x; }

  /// Nearest-neighbour bonds (i < l) of the rectangle.
  std::vector<std::pair<int, int>> nearest_neighbors() const;
  /// Every pair i < l, used by the power-law Ising couplings.
  std::vector<std::pair<int, int>> all_pairs() const;

  bool operator==(const Lattice&) const = default;

 private:
  Lattice(int lx, int ly);
  int lx_;
  int ly_;
};

enum class SpinAxis { kX, kZ };

/// Power-law Ising chain: sum_{i<l} J/|i-l|^alpha s^u_i s^u_l + omega sum_i s^x_i,
/// disorder on s^z_i.
struct IsingParams {
  double J = 1.0;
  double alpha = 6.0;
  SpinAxis axis = SpinAxis::kZ;
  double omega = 1.0;
  double delta = 1.0;
};

/// Fermi-Hubbard model with spin-dependent disorder Delta_up = spin_ratio * Delta_down.
struct FermiHubbardParams {
  double t = 1.0;
  double U = 1.0;
  double delta = 1.0;
  double spin_ratio = 2.0;
};

/// Bose-Hubbard chain at fixed particle number.
struct BoseHubbardParams {
  double J = 1.0;
  double U = 1.0;
  double delta = 1.0;
  int particles = 1;
};

enum class ModelKind { kIsing, kFermiHubbard, kBoseHubbard };

std::string_view model_kind_name(ModelKind kind);

struct QuenchModel {
  Lattice lattice = Lattice::chain(1);
  std::variant<IsingParams, FermiHubbardParams, BoseHubbardParams> params;

  ModelKind kind() const { return static_cast<ModelKind>(params.index()); }
  /// Disorder standard deviation of whichever model is held.
  double disorder_strength() const;

  /// Throws std::invalid_argument on parameter or lattice violations.
  void validate() const;
};

}  // namespace qdesign

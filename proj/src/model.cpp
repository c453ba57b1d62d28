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

#include "qdesign/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qdesign {

Lattice::Lattice(int lx, int ly) : lx_(lx), ly_(ly) {
  if (lx < 1 || ly < 1) {
    throw std::invalid_argument("lattice extents must be positive, got " + std::to_string(lx) +
                                "x" + std::to_string(ly));
  }
}

Lattice Lattice::chain(int length) { return Lattice(length, 1); }
Lattice Lattice::rectangle(int lx, int ly) { return Lattice(lx, ly); }

std::vector<std::pair<int, int>> Lattice::nearest_neighbors() const {
  std::vector<std::pair<int, int>> bonds;
  for (int y = 0; y < ly_; ++y) {
    for (int x = 0; x < lx_; ++x) {
      if (x + 1 < lx_) bonds.emplace_back(site(x, y), site(x + 1, y));
      if (y + 1 < ly_) bonds.emplace_back(site(x, y), site(x, y + 1));
    }
  }
  return bonds;
}

std::vector<std::pair<int, int>> Lattice::all_pairs() const {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < sites(); ++i) {
    for (int l = i + 1; l < sites(); ++l) pairs.emplace_back(i, l);
  }
  return pairs;
}

std::string_view model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kIsing:
      return "ising";
    case ModelKind::kFermiHubbard:
      return "fermi_hubbard";
    case ModelKind::kBoseHubbard:
      return "bose_hubbard";
  }
  return "unknown";
}

double QuenchModel::disorder_strength() const {
  return std::visit([](const auto& p) { return p.delta; }, params);
}

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

void check_finite(double v, const char* name) {
  require(std::isfinite(v), std::string(name) + " must be finite");
}

}  // namespace

void QuenchModel::validate() const {
  switch (kind()) {
    case ModelKind::kIsing: {
      const auto& p = std::get<IsingParams>(params);
      require(lattice.is_chain(), "the Ising model is defined on a chain (Ly = 1)");
      require(lattice.sites() <= 20, "Ising chains above 20 spins are out of dense reach");
      check_finite(p.omega, "omega");
      require(p.J > 0.0 && std::isfinite(p.J), "Ising coupling J must be positive");
      require(p.alpha > 0.0 && std::isfinite(p.alpha), "power-law exponent alpha must be positive");
      require(p.delta >= 0.0 && std::isfinite(p.delta), "disorder strength delta must be >= 0");
      break;
    }
    case ModelKind::kFermiHubbard: {
      const auto& p = std::get<FermiHubbardParams>(params);
      require(lattice.sites() <= 16, "Fermi-Hubbard lattices above 16 sites are out of dense reach");
      require(p.t > 0.0 && std::isfinite(p.t), "hopping t must be positive");
      check_finite(p.U, "U");
      check_finite(p.spin_ratio, "spin_ratio");
      require(p.delta >= 0.0 && std::isfinite(p.delta), "disorder strength delta must be >= 0");
      break;
    }
    case ModelKind::kBoseHubbard: {
      const auto& p = std::get<BoseHubbardParams>(params);
      require(lattice.is_chain(), "the Bose-Hubbard model is defined on a chain (Ly = 1)");
      require(p.J > 0.0 && std::isfinite(p.J), "hopping J must be positive");
      check_finite(p.U, "U");
      require(p.delta >= 0.0 && std::isfinite(p.delta), "disorder strength delta must be >= 0");
      require(p.particles >= 0, "Bose-Hubbard particle number must be >= 0");
      break;
    }
  }
}

}  // namespace qdesign

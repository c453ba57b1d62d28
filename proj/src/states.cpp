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

#include "qdesign/states.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "qdesign/models.hpp"

namespace qdesign {

using cd = std::complex<double>;

SectorState from_amplitudes(std::span<const Sector> sectors, const Amplitudes& amps) {
  std::vector<Eigen::VectorXcd> vecs;
  for (const Sector& s : sectors) vecs.push_back(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(s.dim())));
  double norm2 = 0.0;
  for (const auto& [config, a] : amps) {
    bool found = false;
    for (std::size_t b = 0; b < sectors.size() && !found; ++b) {
      if (const auto idx = sectors[b].index_of(config)) {
        vecs[b][static_cast<Eigen::Index>(*idx)] += a;
        found = true;
      }
    }
    if (!found) throw std::invalid_argument("test state has weight outside the given sectors");
  }
  for (const auto& v : vecs) norm2 += v.squaredNorm();
  if (!(norm2 > 0.0)) throw std::invalid_argument("test state has zero norm");
  std::vector<SectorState::Block> blocks;
  for (std::size_t b = 0; b < sectors.size(); ++b) {
    SectorState::Block blk{sectors[b].label(), sectors[b].dim(), {}};
    if (vecs[b].squaredNorm() > 0.0) blk.rho = vecs[b] * vecs[b].adjoint() / norm2;
    blocks.push_back(std::move(blk));
  }
  return SectorState(std::move(blocks));
}

SectorState basis_state(std::span<const Sector> sectors, const BasisConfig& config) {
  return from_amplitudes(sectors, {{config, cd(1.0, 0.0)}});
}

namespace {

void require_spins(const QuenchModel& model) {
  if (model.kind() != ModelKind::kIsing) throw std::invalid_argument("spin test states need the Ising model");
}

BasisConfig uniform_spins(int sites, std::uint8_t v) {
  return BasisConfig{std::vector<std::uint8_t>(static_cast<std::size_t>(sites), v)};
}

}  // namespace

SectorState antiferromagnetic(const QuenchModel& model, std::span<const Sector> sectors) {
  require_spins(model);
  BasisConfig c = uniform_spins(model.lattice.sites(), 0);
  for (std::size_t i = 0; i < c.occupation.size(); i += 2) c.occupation[i] = 1;
  return basis_state(sectors, c);
}

SectorState all_up(const QuenchModel& model, std::span<const Sector> sectors) {
  require_spins(model);
  return basis_state(sectors, uniform_spins(model.lattice.sites(), 1));
}

SectorState ghz(const QuenchModel& model, std::span<const Sector> sectors) {
  require_spins(model);
  const double a = std::sqrt(0.5);
  return from_amplitudes(sectors, {{uniform_spins(model.lattice.sites(), 1), cd(a, 0.0)},
                                   {uniform_spins(model.lattice.sites(), 0), cd(a, 0.0)}});
}

std::pair<BasisConfig, int> fermion_product(const Lattice& lattice,
                                            std::span<const std::array<int, 3>> creators) {
  BasisConfig c{std::vector<std::uint8_t>(static_cast<std::size_t>(2 * lattice.sites()), 0)};
  int sign = 1;
  for (auto it = creators.rbegin(); it != creators.rend(); ++it) {
    const auto [x, y, spin] = *it;
    if (x < 1 || x > lattice.lx() || y < 1 || y > lattice.ly() || spin < 0 || spin > 1) {
      throw std::invalid_argument("creation operator outside the lattice");
    }
    const int mode = 2 * lattice.site(x - 1, y - 1) + spin;
    if (c.occupation[mode]) return {c, 0};  // Pauli exclusion: the product vanishes
    for (int k = 0; k < mode; ++k) {
      if (c.occupation[k]) sign = -sign;
    }
    c.occupation[mode] = 1;
  }
  return {c, sign};
}

SectorState fermi_hubbard_state(const QuenchModel& model, std::span<const Sector> sectors,
                                std::string_view name) {
  if (model.kind() != ModelKind::kFermiHubbard) {
    throw std::invalid_argument("Fermi-Hubbard test states need the Fermi-Hubbard model");
  }
  const Lattice& lat = model.lattice;
  const int lx = lat.lx();
  const int ly = lat.ly();
  constexpr int up = 0;
  constexpr int dn = 1;
  std::vector<std::vector<std::array<int, 3>>> terms;
  if (name == "psi11") {
    terms = {{{1, 1, up}}, {{lx, ly, up}}};
  } else if (name == "psi20") {
    terms = {{{1, 1, dn}, {lx, ly, up}}, {{lx, 1, dn}, {1, ly, up}}};
  } else if (name == "psi22") {
    if (lx < 2) throw std::invalid_argument("psi22 needs Lx >= 2");
    terms = {{{1, 1, up}, {2, 1, up}}, {{lx - 1, ly, up}, {lx, ly, up}}};
  } else {
    throw std::invalid_argument("unknown Fermi-Hubbard test state '" + std::string(name) +
                                "' (expected psi11, psi20 or psi22)");
  }
  Amplitudes amps;
  const double a = std::sqrt(0.5);
  for (const auto& t : terms) {
    const auto [config, sign] = fermion_product(lat, t);
    if (sign != 0) amps.emplace_back(config, cd(a * sign, 0.0));
  }
  return from_amplitudes(sectors, amps);
}

SectorState bose_fock(const QuenchModel& model, std::span<const Sector> sectors,
                      std::span<const int> occupation) {
  if (model.kind() != ModelKind::kBoseHubbard) throw std::invalid_argument("Fock states need the Bose-Hubbard model");
  if (occupation.size() != static_cast<std::size_t>(model.lattice.sites())) {
    throw std::invalid_argument("Fock occupation needs one entry per site");
  }
  BasisConfig c;
  for (int n : occupation) {
    if (n < 0 || n > 255) throw std::invalid_argument("Fock occupations must lie in [0, 255]");
    c.occupation.push_back(static_cast<std::uint8_t>(n));
  }
  return basis_state(sectors, c);
}

SectorState bose_ground(const QuenchModel& model, std::span<const Sector> sectors) {
  if (model.kind() != ModelKind::kBoseHubbard) {
    throw std::invalid_argument("the Bose-Hubbard ground state needs the Bose-Hubbard model");
  }
  QuenchModel clean = model;
  auto& p = std::get<BoseHubbardParams>(clean.params);
  p.U = p.J;
  p.delta = 0.0;
  std::vector<SectorState::Block> blocks;
  bool placed = false;
  for (const Sector& s : sectors) {
    SectorState::Block blk{s.label(), s.dim(), {}};
    if (!placed && s.label() == SectorLabel{p.particles}) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(build_static(clean, s).matrix);
      const Eigen::VectorXcd g = solver.eigenvectors().col(0).cast<cd>();
      blk.rho = g * g.adjoint();
      placed = true;
    }
    blocks.push_back(std::move(blk));
  }
  if (!placed) throw std::invalid_argument("sector list lacks the model's particle-number sector");
  return SectorState(std::move(blocks));
}

SectorState haar_random_state(std::span<const Sector> sectors, std::size_t sector_index,
                              SeededRng& rng) {
  if (sector_index >= sectors.size()) throw std::out_of_range("sector index out of range");
  std::vector<SectorState::Block> blocks;
  for (std::size_t b = 0; b < sectors.size(); ++b) {
    SectorState::Block blk{sectors[b].label(), sectors[b].dim(), {}};
    if (b == sector_index) {
      Eigen::VectorXcd v(static_cast<Eigen::Index>(sectors[b].dim()));
      for (auto& x : v) x = cd(rng.normal(0.0, 1.0), rng.normal(0.0, 1.0));
      v.normalize();
      blk.rho = v * v.adjoint();
    }
    blocks.push_back(std::move(blk));
  }
  return SectorState(std::move(blocks));
}

SectorState maximally_mixed(std::span<const Sector> sectors) {
  double total = 0.0;
  for (const Sector& s : sectors) total += static_cast<double>(s.dim());
  std::vector<SectorState::Block> blocks;
  for (const Sector& s : sectors) {
    const auto d = static_cast<Eigen::Index>(s.dim());
    blocks.push_back({s.label(), s.dim(), Eigen::MatrixXcd::Identity(d, d) / total});
  }
  return SectorState(std::move(blocks));
}

SectorState flat_mixed(std::span<const Sector> sectors, std::size_t sector_index, std::size_t rank) {
  if (sector_index >= sectors.size()) throw std::out_of_range("sector index out of range");
  if (rank < 1 || rank > sectors[sector_index].dim()) {
    throw std::invalid_argument("rank must lie in [1, sector dimension]");
  }
  std::vector<SectorState::Block> blocks;
  for (std::size_t b = 0; b < sectors.size(); ++b) {
    SectorState::Block blk{sectors[b].label(), sectors[b].dim(), {}};
    if (b == sector_index) {
      const auto d = static_cast<Eigen::Index>(sectors[b].dim());
      blk.rho = Eigen::MatrixXcd::Zero(d, d);
      for (std::size_t k = 0; k < rank; ++k) {
        blk.rho(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = 1.0 / static_cast<double>(rank);
      }
    }
    blocks.push_back(std::move(blk));
  }
  return SectorState(std::move(blocks));
}

}  // namespace qdesign

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

#include "qdesign/hilbert.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qdesign {
namespace {

constexpr double kStateTolerance = 1e-12;

std::string label_string(const SectorLabel& label) {
  std::string s = "(";
  for (std::size_t i = 0; i < label.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(label[i]);
  }
  return s + ")";
}

std::uint64_t checked_key(const BasisConfig& config, std::uint64_t base) {
  std::uint64_t key = 0;
  for (std::uint8_t occ : config.occupation) {
    if (key > (std::numeric_limits<std::uint64_t>::max() - occ) / base) {
      throw std::length_error("basis too large for 64-bit configuration keys");
    }
    key = key * base + occ;
  }
  return key;
}

BasisConfig spin_config(std::uint64_t up_mask, int sites) {
  BasisConfig c;
  c.occupation.resize(static_cast<std::size_t>(sites));
  for (int i = 0; i < sites; ++i) {
    c.occupation[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((up_mask >> (sites - 1 - i)) & 1U);
  }
  return c;
}

// Masks over `sites` bits with exactly `count` set bits, any order.
std::vector<std::uint64_t> masks_with_popcount(int sites, int count) {
  std::vector<std::uint64_t> out;
  if (count < 0 || count > sites) return out;
  if (count == 0) return {0};
  std::uint64_t m = (std::uint64_t{1} << count) - 1;
  const std::uint64_t limit = std::uint64_t{1} << sites;
  while (m < limit) {
    out.push_back(m);
    // Gosper's hack: next integer with the same popcount.
    const std::uint64_t c = m & (~m + 1);
    const std::uint64_t r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
  return out;
}

std::vector<BasisConfig> spin_basis(int sites, std::optional<int> parity) {
  std::vector<BasisConfig> basis;
  const std::uint64_t count = std::uint64_t{1} << sites;
  for (std::uint64_t k = count; k-- > 0;) {
    if (parity && static_cast<int>(std::popcount(k) % 2) != *parity) continue;
    basis.push_back(spin_config(k, sites));
  }
  return basis;
}

std::vector<BasisConfig> fermion_basis(int sites, int n_up, int n_down) {
  const auto ups = masks_with_popcount(sites, n_up);
  const auto downs = masks_with_popcount(sites, n_down);
  std::vector<BasisConfig> basis;
  basis.reserve(ups.size() * downs.size());
  for (std::uint64_t u : ups) {
    for (std::uint64_t d : downs) {
      BasisConfig c;
      c.occupation.resize(static_cast<std::size_t>(2 * sites));
      for (int i = 0; i < sites; ++i) {
        c.occupation[static_cast<std::size_t>(2 * i)] = static_cast<std::uint8_t>((u >> (sites - 1 - i)) & 1U);
        c.occupation[static_cast<std::size_t>(2 * i + 1)] = static_cast<std::uint8_t>((d >> (sites - 1 - i)) & 1U);
      }
      basis.push_back(std::move(c));
    }
  }
  std::sort(basis.begin(), basis.end(), std::greater<>());
  return basis;
}

void boson_compositions(int site, int remaining, BasisConfig& current, std::vector<BasisConfig>& out) {
  const int sites = static_cast<int>(current.occupation.size());
  if (site == sites - 1) {
    current.occupation[static_cast<std::size_t>(site)] = static_cast<std::uint8_t>(remaining);
    out.push_back(current);
    return;
  }
  for (int n = remaining; n >= 0; --n) {
    current.occupation[static_cast<std::size_t>(site)] = static_cast<std::uint8_t>(n);
    boson_compositions(site + 1, remaining - n, current, out);
  }
}

std::vector<BasisConfig> boson_basis(int sites, int particles) {
  if (particles > 255) throw std::invalid_argument("Bose-Hubbard occupations above 255 are unsupported");
  std::vector<BasisConfig> basis;
  BasisConfig current;
  current.occupation.assign(static_cast<std::size_t>(sites), 0);
  boson_compositions(0, particles, current, basis);
  return basis;
}

bool ising_tracks_parity(const QuenchModel& model) {
  return std::get<IsingParams>(model.params).omega == 0.0;
}

}  // namespace

Sector::Sector(SectorLabel label, std::vector<BasisConfig> basis)
    : label_(std::move(label)), basis_(std::move(basis)) {
  if (basis_.empty()) throw std::invalid_argument("sector " + label_string(label_) + " is empty");
  std::uint8_t max_occ = 1;
  for (const auto& c : basis_) {
    if (c.occupation.size() != basis_.front().occupation.size()) {
      throw std::invalid_argument("sector basis configurations differ in length");
    }
    for (auto o : c.occupation) max_occ = std::max(max_occ, o);
  }
  base_ = std::uint64_t{max_occ} + 1;
  index_.reserve(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (!index_.emplace(checked_key(basis_[i], base_), i).second) {
      throw std::invalid_argument("duplicate configuration in sector " + label_string(label_));
    }
  }
}

std::optional<std::size_t> Sector::index_of(const BasisConfig& config) const {
  if (config.occupation.size() != basis_.front().occupation.size()) return std::nullopt;
  for (auto o : config.occupation) {
    if (o >= base_) return std::nullopt;
  }
  const auto it = index_.find(checked_key(config, base_));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SectorLabel sector_label_of(const QuenchModel& model, const BasisConfig& config) {
  const auto& occ = config.occupation;
  const int total = std::accumulate(occ.begin(), occ.end(), 0);
  switch (model.kind()) {
    case ModelKind::kIsing:
      if (ising_tracks_parity(model)) return {total % 2};
      return {};
    case ModelKind::kFermiHubbard: {
      int up = 0;
      for (std::size_t i = 0; i < occ.size(); i += 2) up += occ[i];
      return {total, up - (total - up)};
    }
    case ModelKind::kBoseHubbard:
      return {total};
  }
  return {};
}

Sector make_sector(const QuenchModel& model, const SectorLabel& label) {
  model.validate();
  const int sites = model.lattice.sites();
  switch (model.kind()) {
    case ModelKind::kIsing: {
      if (!ising_tracks_parity(model)) {
        if (!label.empty()) throw std::invalid_argument("Ising with omega != 0 has a single unlabeled sector");
        return Sector({}, spin_basis(sites, std::nullopt));
      }
      if (label.size() != 1 || (label[0] != 0 && label[0] != 1)) {
        throw std::invalid_argument("Ising parity sector label must be (0) or (1)");
      }
      return Sector(label, spin_basis(sites, label[0]));
    }
    case ModelKind::kFermiHubbard: {
      if (label.size() != 2) throw std::invalid_argument("Fermi-Hubbard sectors are labeled (N, Sz)");
      const int n = label[0];
      const int sz = label[1];
      if (n < 0) throw std::invalid_argument("particle number must be >= 0");
      if (std::abs(sz) > n) throw std::invalid_argument("|Sz| must not exceed N in sector " + label_string(label));
      if ((n + sz) % 2 != 0) throw std::invalid_argument("N and Sz parity mismatch in sector " + label_string(label));
      const int up = (n + sz) / 2;
      const int down = (n - sz) / 2;
      if (up > sites || down > sites) {
        throw std::invalid_argument("sector " + label_string(label) + " is empty on this lattice");
      }
      return Sector(label, fermion_basis(sites, up, down));
    }
    case ModelKind::kBoseHubbard: {
      if (label.size() != 1) throw std::invalid_argument("Bose-Hubbard sectors are labeled (N)");
      if (label[0] < 0) throw std::invalid_argument("Bose-Hubbard particle number must be >= 0");
      return Sector(label, boson_basis(sites, label[0]));
    }
  }
  throw std::logic_error("unknown model kind");
}

std::vector<Sector> enumerate_sectors(const QuenchModel& model) {
  model.validate();
  std::vector<Sector> sectors;
  switch (model.kind()) {
    case ModelKind::kIsing:
      if (ising_tracks_parity(model)) {
        sectors.push_back(make_sector(model, {0}));
        if (model.lattice.sites() > 0) sectors.push_back(make_sector(model, {1}));
      } else {
        sectors.push_back(make_sector(model, {}));
      }
      break;
    case ModelKind::kFermiHubbard: {
      const int sites = model.lattice.sites();
      for (int n = 0; n <= 2 * sites; ++n) {
        for (int sz = -n; sz <= n; sz += 2) {
          if ((n + sz) / 2 > sites || (n - sz) / 2 > sites) continue;
          sectors.push_back(make_sector(model, {n, sz}));
        }
      }
      break;
    }
    case ModelKind::kBoseHubbard:
      sectors.push_back(make_sector(model, {std::get<BoseHubbardParams>(model.params).particles}));
      break;
  }
  return sectors;
}

std::uint64_t full_dimension(const QuenchModel& model) {
  const auto sites = static_cast<std::uint64_t>(model.lattice.sites());
  switch (model.kind()) {
    case ModelKind::kIsing:
      return std::uint64_t{1} << sites;
    case ModelKind::kFermiHubbard:
      return std::uint64_t{1} << (2 * sites);
    case ModelKind::kBoseHubbard: {
      const auto n = static_cast<std::uint64_t>(std::get<BoseHubbardParams>(model.params).particles);
      // C(N + L - 1, N)
      std::uint64_t c = 1;
      for (std::uint64_t k = 1; k <= n; ++k) c = c * (sites - 1 + k) / k;
      return c;
    }
  }
  return 0;
}

SectorState::SectorState(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  double total = 0.0;
  weights_.resize(blocks_.size(), 0.0);
  eigenvalues_.resize(blocks_.size());
  factors_.resize(blocks_.size());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const Block& block = blocks_[b];
    if (block.rho.size() == 0) {
      factors_[b].resize(static_cast<Eigen::Index>(block.dim), 0);
      continue;
    }
    const auto d = static_cast<Eigen::Index>(block.dim);
    if (block.rho.rows() != d || block.rho.cols() != d) {
      throw std::invalid_argument("density block " + label_string(block.label) + " has wrong shape");
    }
    const double asym = (block.rho - block.rho.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kStateTolerance) {
      throw std::invalid_argument("density block " + label_string(block.label) + " is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(block.rho);
    if (eig.info() != Eigen::Success) {
      throw std::runtime_error("eigendecomposition failed for density block " + label_string(block.label));
    }
    const Eigen::VectorXd& lam = eig.eigenvalues();
    if (lam.minCoeff() < -kStateTolerance) {
      throw std::invalid_argument("density block " + label_string(block.label) + " is not positive semidefinite");
    }
    eigenvalues_[b].assign(lam.data(), lam.data() + lam.size());
    weights_[b] = block.rho.trace().real();
    total += weights_[b];

    std::vector<Eigen::Index> kept;
    for (Eigen::Index k = 0; k < lam.size(); ++k) {
      if (lam[k] > 1e-14) kept.push_back(k);
    }
    Eigen::MatrixXcd w(d, static_cast<Eigen::Index>(kept.size()));
    for (std::size_t c = 0; c < kept.size(); ++c) {
      w.col(static_cast<Eigen::Index>(c)) = eig.eigenvectors().col(kept[c]) * std::sqrt(lam[kept[c]]);
    }
    factors_[b] = std::move(w);
  }
  if (std::abs(total - 1.0) > kStateTolerance) {
    throw std::invalid_argument("density matrix trace is " + std::to_string(total) + ", expected 1");
  }
}

Eigen::MatrixXcd SectorState::dense_block(std::size_t b) const {
  const auto d = static_cast<Eigen::Index>(blocks_[b].dim);
  if (is_zero(b)) return Eigen::MatrixXcd::Zero(d, d);
  return blocks_[b].rho;
}

std::map<SectorLabel, double> sector_trace_powers(const SectorState& state, int n) {
  if (n < 1) throw std::invalid_argument("trace power order must be >= 1");
  std::map<SectorLabel, double> out;
  for (std::size_t b = 0; b < state.size(); ++b) {
    double s = 0.0;
    for (double lam : state.eigenvalues(b)) s += std::pow(std::max(lam, 0.0), n);
    out[state.blocks()[b].label] = s;
  }
  return out;
}

double total_trace_power(const SectorState& state, int n) {
  double s = 0.0;
  for (const auto& [label, v] : sector_trace_powers(state, n)) s += v;
  return s;
}

}  // namespace qdesign

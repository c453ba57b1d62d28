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

#include "qdesign/models.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qdesign {
namespace {

void check_sector(const QuenchModel& model, const Sector& sector) {
  model.validate();
  const auto sites = static_cast<std::size_t>(model.lattice.sites());
  const std::size_t expected = model.kind() == ModelKind::kFermiHubbard ? 2 * sites : sites;
  if (sector.config(0).occupation.size() != expected) {
    throw std::invalid_argument("sector basis does not match the model lattice");
  }
  if (sector_label_of(model, sector.config(0)) != sector.label()) {
    throw std::invalid_argument("sector labels do not match the model's conserved charges");
  }
}

std::size_t target_index(const Sector& sector, const BasisConfig& target) {
  const auto idx = sector.index_of(target);
  if (!idx) throw std::logic_error("Hamiltonian generated a matrix element leaving its sector");
  return *idx;
}

double spin_sign(std::uint8_t occ) { return occ ? 1.0 : -1.0; }

void add_ising(const QuenchModel& model, const Sector& sector, Eigen::MatrixXd& h) {
  const auto& p = std::get<IsingParams>(model.params);
  const auto pairs = model.lattice.all_pairs();
  const int sites = model.lattice.sites();
  for (std::size_t a = 0; a < sector.dim(); ++a) {
    const BasisConfig& c = sector.config(a);
    for (const auto& [i, l] : pairs) {
      const double j = ising_coupling(p, l - i);
      if (p.axis == SpinAxis::kZ) {
        h(a, a) += j * spin_sign(c.occupation[i]) * spin_sign(c.occupation[l]);
      } else {
        BasisConfig t = c;
        t.occupation[i] ^= 1U;
        t.occupation[l] ^= 1U;
        h(target_index(sector, t), a) += j;
      }
    }
    if (p.omega != 0.0) {
      for (int i = 0; i < sites; ++i) {
        BasisConfig t = c;
        t.occupation[i] ^= 1U;
        h(target_index(sector, t), a) += p.omega;
      }
    }
  }
}

// Jordan-Wigner parity of the modes strictly below `mode`.
int parity_below(const std::vector<std::uint8_t>& occ, int mode) {
  int s = 0;
  for (int k = 0; k < mode; ++k) s += occ[k];
  return s & 1;
}

void add_fermi_hubbard(const QuenchModel& model, const Sector& sector, Eigen::MatrixXd& h) {
  const auto& p = std::get<FermiHubbardParams>(model.params);
  const auto bonds = model.lattice.nearest_neighbors();
  const int sites = model.lattice.sites();
  for (std::size_t a = 0; a < sector.dim(); ++a) {
    const BasisConfig& c = sector.config(a);
    for (int i = 0; i < sites; ++i) h(a, a) += p.U * c.occupation[2 * i] * c.occupation[2 * i + 1];
    for (const auto& [i, l] : bonds) {
      for (int sigma = 0; sigma < 2; ++sigma) {
        const int mi = 2 * i + sigma;
        const int ml = 2 * l + sigma;
        // c^dag_to c_from for both hopping directions.
        for (const auto& [from, to] : {std::pair{mi, ml}, std::pair{ml, mi}}) {
          if (!c.occupation[from] || c.occupation[to]) continue;
          BasisConfig t = c;
          int sign = parity_below(t.occupation, from);
          t.occupation[from] = 0;
          sign ^= parity_below(t.occupation, to);
          t.occupation[to] = 1;
          h(target_index(sector, t), a) += -p.t * (sign ? -1.0 : 1.0);
        }
      }
    }
  }
}

void add_bose_hubbard(const QuenchModel& model, const Sector& sector, Eigen::MatrixXd& h) {
  const auto& p = std::get<BoseHubbardParams>(model.params);
  const auto bonds = model.lattice.nearest_neighbors();
  for (std::size_t a = 0; a < sector.dim(); ++a) {
    const BasisConfig& c = sector.config(a);
    for (std::uint8_t n : c.occupation) h(a, a) += 0.5 * p.U * n * (n - 1.0);
    for (const auto& [i, l] : bonds) {
      for (const auto& [from, to] : {std::pair{i, l}, std::pair{l, i}}) {
        const double n_from = c.occupation[from];
        const double n_to = c.occupation[to];
        if (n_from == 0) continue;
        BasisConfig t = c;
        t.occupation[from] -= 1;
        t.occupation[to] += 1;
        h(target_index(sector, t), a) += -p.J * std::sqrt(n_from * (n_to + 1.0));
      }
    }
  }
}

}  // namespace

std::size_t disorder_modes(const QuenchModel& model) {
  const auto sites = static_cast<std::size_t>(model.lattice.sites());
  return model.kind() == ModelKind::kFermiHubbard ? 2 * sites : sites;
}

double ising_coupling(const IsingParams& params, int distance) {
  if (distance < 1) throw std::invalid_argument("Ising coupling distance must be >= 1");
  if (params.alpha <= 0.0) throw std::invalid_argument("power-law exponent alpha must be positive");
  return params.J / std::pow(static_cast<double>(distance), params.alpha);
}

HermitianOperator build_static(const QuenchModel& model, const Sector& sector) {
  check_sector(model, sector);
  const auto d = static_cast<Eigen::Index>(sector.dim());
  HermitianOperator op{sector.label(), Eigen::MatrixXd::Zero(d, d)};
  switch (model.kind()) {
    case ModelKind::kIsing:
      add_ising(model, sector, op.matrix);
      break;
    case ModelKind::kFermiHubbard:
      add_fermi_hubbard(model, sector, op.matrix);
      break;
    case ModelKind::kBoseHubbard:
      add_bose_hubbard(model, sector, op.matrix);
      break;
  }
  return op;
}

HermitianOperator build_disorder(const QuenchModel& model, const Sector& sector,
                                 const DisorderPattern& pattern) {
  check_sector(model, sector);
  if (pattern.values.size() != disorder_modes(model)) {
    throw std::invalid_argument("disorder pattern has " + std::to_string(pattern.values.size()) +
                                " entries, model needs " + std::to_string(disorder_modes(model)));
  }
  const auto d = static_cast<Eigen::Index>(sector.dim());
  HermitianOperator op{sector.label(), Eigen::MatrixXd::Zero(d, d)};
  const bool spins = model.kind() == ModelKind::kIsing;
  for (std::size_t a = 0; a < sector.dim(); ++a) {
    const auto& occ = sector.config(a).occupation;
    double diag = 0.0;
    for (std::size_t m = 0; m < occ.size(); ++m) {
      diag += pattern.values[m] * (spins ? spin_sign(occ[m]) : static_cast<double>(occ[m]));
    }
    op.matrix(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) = diag;
  }
  return op;
}

HermitianOperator build_quench(const QuenchModel& model, const Sector& sector,
                               const DisorderPattern& pattern) {
  HermitianOperator op = build_static(model, sector);
  op.matrix += build_disorder(model, sector, pattern).matrix;
  return op;
}

DisorderPattern sample_disorder(const QuenchModel& model, SeededRng& rng) {
  const double delta = model.disorder_strength();
  if (delta < 0.0) throw std::invalid_argument("disorder strength must be >= 0");
  DisorderPattern pattern;
  pattern.values.assign(disorder_modes(model), 0.0);
  const int sites = model.lattice.sites();
  if (model.kind() == ModelKind::kFermiHubbard) {
    const double ratio = std::get<FermiHubbardParams>(model.params).spin_ratio;
    for (int i = 0; i < sites; ++i) {
      const double down = rng.normal(0.0, delta);
      pattern.values[2 * i + 1] = down;
      pattern.values[2 * i] = ratio * down;
    }
  } else {
    for (int i = 0; i < sites; ++i) pattern.values[i] = rng.normal(0.0, delta);
  }
  return pattern;
}

}  // namespace qdesign

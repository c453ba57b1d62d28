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

#include "qdesign/imperfect.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace qdesign {

std::string_view channel_kind_name(ChannelKind kind) {
  return kind == ChannelKind::kDephasing ? "dephasing" : "depolarizing";
}

ChannelKind parse_channel_kind(std::string_view name) {
  if (name == "dephasing") return ChannelKind::kDephasing;
  if (name == "depolarizing") return ChannelKind::kDepolarizing;
  throw std::invalid_argument("unknown channel '" + std::string(name) +
                              "' (expected dephasing or depolarizing)");
}

void ChannelSpec::validate() const {
  const double limit = kind == ChannelKind::kDepolarizing ? 1.0 / 3.0 : 1.0;
  if (!(p >= 0.0) || !(p < limit)) {
    throw std::invalid_argument(std::string(channel_kind_name(kind)) + " probability must lie in [0, " +
                                (kind == ChannelKind::kDepolarizing ? "1/3" : "1") + ")");
  }
}

void FidelitySpec::validate() const {
  if (!(p >= 0.0) || !(p < 0.5)) throw std::invalid_argument("misread probability must lie in [0, 1/2)");
}

namespace {

int spin_sites(const SectorState& rho) {
  if (rho.size() != 1) {
    throw std::invalid_argument("channels act on a spin-1/2 state held as a single full block");
  }
  const std::size_t d = rho.blocks()[0].dim;
  if (d == 0 || !std::has_single_bit(d)) {
    throw std::invalid_argument("channels need a 2^L-dimensional spin-1/2 block, got dim " +
                                std::to_string(d));
  }
  return std::countr_zero(d);
}

}  // namespace

SectorState apply_channel(const SectorState& rho, const ChannelSpec& spec) {
  spec.validate();
  const int sites = spin_sites(rho);
  Eigen::MatrixXcd m = rho.dense_block(0);
  const auto d = m.rows();
  if (spec.p > 0.0) {
    if (spec.kind == ChannelKind::kDephasing) {
      const double f = 1.0 - 2.0 * spec.p;
      for (Eigen::Index b = 0; b < d; ++b) {
        for (Eigen::Index a = 0; a < d; ++a) {
          m(a, b) *= std::pow(f, std::popcount(static_cast<std::uint64_t>(a ^ b)));
        }
      }
    } else {
      // (1-3p) rho + p sum_a s^a rho s^a = (1-4p) rho + 2p Tr_i(rho) (x) I_i.
      for (int i = 0; i < sites; ++i) {
        const Eigen::Index mask = Eigen::Index{1} << i;
        Eigen::MatrixXcd next = (1.0 - 4.0 * spec.p) * m;
        for (Eigen::Index b = 0; b < d; ++b) {
          for (Eigen::Index a = 0; a < d; ++a) {
            if (((a ^ b) & mask) != 0) continue;
            next(a, b) += 2.0 * spec.p * (m(a & ~mask, b & ~mask) + m(a | mask, b | mask));
          }
        }
        m = std::move(next);
      }
    }
  }
  // Roundoff can break exact Hermiticity; restore it before revalidation.
  const Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
  return SectorState({SectorState::Block{rho.blocks()[0].label, static_cast<std::size_t>(d), herm}});
}

SectorState decohered_final_state(const SectorState& rho, const BlockUnitary& u,
                                  const ChannelSpec& spec) {
  const SectorState first = apply_channel(rho, spec);
  if (u.size() != 1 || u.labels[0] != first.blocks()[0].label ||
      static_cast<std::size_t>(u.blocks[0].rows()) != first.blocks()[0].dim) {
    throw std::invalid_argument("unitary does not match the spin-1/2 state block");
  }
  const Eigen::MatrixXcd& ub = u.blocks[0];
  Eigen::MatrixXcd evolved = ub * first.dense_block(0) * ub.adjoint();
  evolved = 0.5 * (evolved + evolved.adjoint()).eval();
  const SectorState mid({SectorState::Block{first.blocks()[0].label, first.blocks()[0].dim, evolved}});
  return apply_channel(mid, spec);
}

DisorderPattern jitter_disorder(const DisorderPattern& pattern, double p, double delta,
                                SeededRng& rng) {
  if (!(p >= 0.0) || !(delta >= 0.0)) throw std::invalid_argument("jitter needs p >= 0 and delta >= 0");
  DisorderPattern out = pattern;
  if (p == 0.0 || delta == 0.0) return out;
  for (double& v : out.values) v += rng.normal(0.0, p * delta);
  return out;
}

std::vector<QuenchStep> jitter_sequence(std::span<const QuenchStep> steps, double p, double delta,
                                        SeededRng& rng) {
  std::vector<QuenchStep> out(steps.begin(), steps.end());
  for (QuenchStep& s : out) {
    if (s.disorder) s.disorder = jitter_disorder(*s.disorder, p, delta, rng);
  }
  return out;
}

BasisConfig fidelity_flip(const BasisConfig& shot, const FidelitySpec& spec, SeededRng& rng) {
  spec.validate();
  BasisConfig out = shot;
  if (spec.p == 0.0) return out;
  std::bernoulli_distribution flip(spec.p);
  for (auto& o : out.occupation) {
    if (o > 1) throw std::invalid_argument("readout flips are defined for spin-1/2 configurations");
    if (flip(rng.engine())) o ^= 1U;
  }
  return out;
}

std::size_t fidelity_flip_index(std::size_t index, int sites, const FidelitySpec& spec,
                                SeededRng& rng) {
  spec.validate();
  if (spec.p == 0.0) return index;
  std::bernoulli_distribution flip(spec.p);
  for (int i = 0; i < sites; ++i) {
    if (flip(rng.engine())) index ^= std::size_t{1} << (sites - 1 - i);
  }
  return index;
}

ShotRecord fidelity_flip_record(const ShotRecord& record, int sites, const FidelitySpec& spec,
                                SeededRng& rng) {
  spec.validate();
  const std::size_t d = std::size_t{1} << sites;
  if (record.values.size() != 1 || record.values[0].size() != d) {
    throw std::invalid_argument("readout flips need a fine-grained record of one 2^L block");
  }
  ShotRecord out = record;
  if (spec.p == 0.0) return out;
  auto& v = out.values[0];
  if (record.exact()) {
    // Exact binary symmetric channel on the distribution, one bit at a time.
    for (int bit = 0; bit < sites; ++bit) {
      const std::size_t mask = std::size_t{1} << bit;
      for (std::size_t a = 0; a < d; ++a) {
        if (a & mask) continue;
        const double x = v[a];
        const double y = v[a | mask];
        v[a] = (1.0 - spec.p) * x + spec.p * y;
        v[a | mask] = spec.p * x + (1.0 - spec.p) * y;
      }
    }
    return out;
  }
  std::fill(v.begin(), v.end(), 0.0);
  for (std::size_t a = 0; a < d; ++a) {
    const auto count = static_cast<std::int64_t>(record.values[0][a]);
    for (std::int64_t k = 0; k < count; ++k) v[fidelity_flip_index(a, sites, spec, rng)] += 1.0;
  }
  return out;
}

double fidelity_correct(double p2_est, double p, int sites) {
  if (!(p >= 0.0) || !(p < 1.0)) throw std::invalid_argument("misread probability must lie in [0, 1)");
  if (sites < 0) throw std::invalid_argument("site count must be >= 0");
  return p2_est / std::pow(1.0 - p, 2 * sites);
}

}  // namespace qdesign

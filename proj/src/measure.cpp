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

#include "qdesign/measure.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "qdesign/kernels.hpp"

namespace qdesign {

Observable::Observable(std::vector<std::vector<int>> group_of) : group_of_(std::move(group_of)) {
  weights_.resize(group_of_.size());
  for (std::size_t b = 0; b < group_of_.size(); ++b) {
    int max_group = -1;
    for (int g : group_of_[b]) {
      if (g < 0) throw std::invalid_argument("outcome indices must be >= 0");
      max_group = std::max(max_group, g);
    }
    weights_[b].assign(static_cast<std::size_t>(max_group + 1), 0.0);
    for (int g : group_of_[b]) weights_[b][g] += 1.0;
    for (double w : weights_[b]) {
      if (w == 0.0) throw std::invalid_argument("outcome groups must be non-empty");
    }
  }
}

Observable Observable::fine_grained(std::span<const std::size_t> dims) { return coarse(dims, 1); }

Observable Observable::coarse(std::span<const std::size_t> dims, std::size_t group_size) {
  if (group_size < 1) throw std::invalid_argument("outcome group size must be >= 1");
  std::vector<std::vector<int>> groups(dims.size());
  for (std::size_t b = 0; b < dims.size(); ++b) {
    const std::size_t d = dims[b];
    const std::size_t full = std::max<std::size_t>(1, d / group_size);
    groups[b].resize(d);
    for (std::size_t i = 0; i < d; ++i) groups[b][i] = static_cast<int>(std::min(i / group_size, full - 1));
  }
  return Observable(std::move(groups));
}

std::size_t Observable::total_outcomes() const {
  std::size_t n = 0;
  for (const auto& w : weights_) n += w.size();
  return n;
}

bool Observable::rank_one() const {
  for (const auto& w : weights_) {
    for (double x : w) {
      if (x != 1.0) return false;
    }
  }
  return true;
}

double OutcomeDistribution::total() const {
  double t = 0.0;
  for (const auto& p : probs) {
    for (double x : p) t += x;
  }
  return t;
}

OutcomeDistribution outcome_probs(const BlockUnitary& u, const SectorState& rho,
                                  const Observable& obs) {
  if (u.size() != rho.size() || obs.sectors() != rho.size()) {
    throw std::invalid_argument("unitary, state and observable have different sector counts");
  }
  OutcomeDistribution dist;
  dist.probs.resize(rho.size());
  std::vector<double> diag;
  for (std::size_t b = 0; b < rho.size(); ++b) {
    const auto& block = rho.blocks()[b];
    if (u.labels[b] != block.label) throw std::invalid_argument("unitary and state sector labels differ");
    const std::size_t d = block.dim;
    if (static_cast<std::size_t>(u.blocks[b].rows()) != d || obs.dim(b) != d) {
      throw std::invalid_argument("sector dimensions of unitary, state and observable differ");
    }
    dist.probs[b].assign(obs.outcomes(b), 0.0);
    if (rho.is_zero(b) || rho.factor(b).cols() == 0) continue;

    // diag(U rho U^dag) = sum over columns of |U W|^2 with rho = W W^dag.
    const Eigen::MatrixXcd y = u.blocks[b] * rho.factor(b);
    diag.assign(d, 0.0);
    for (Eigen::Index c = 0; c < y.cols(); ++c) {
      kernels::accumulate_abs2(std::span<const std::complex<double>>(y.col(c).data(), d), diag);
    }
    const auto groups = obs.group_of(b);
    for (std::size_t i = 0; i < d; ++i) dist.probs[b][groups[i]] += diag[i];
    for (double& p : dist.probs[b]) {
      if (p < -1e-12 || p > 1.0 + 1e-12) {
        throw std::runtime_error("outcome probability " + std::to_string(p) + " outside [0, 1]");
      }
      p = std::clamp(p, 0.0, 1.0);
    }
  }
  return dist;
}

ShotRecord sample_shots(const OutcomeDistribution& dist, ShotCount shots, SeededRng& rng) {
  ShotRecord rec;
  rec.shots = shots;
  if (!shots) {
    rec.values = dist.probs;
    return rec;
  }
  if (*shots < 1) throw std::invalid_argument("number of shots must be >= 1");
  rec.values.resize(dist.probs.size());
  // Multinomial as a chain of conditional binomials in flattened order.
  double remaining_p = dist.total();
  std::int64_t remaining = *shots;
  for (std::size_t b = 0; b < dist.probs.size(); ++b) {
    rec.values[b].assign(dist.probs[b].size(), 0.0);
    for (std::size_t s = 0; s < dist.probs[b].size(); ++s) {
      if (remaining == 0) break;
      const double p = dist.probs[b][s];
      std::int64_t k = 0;
      if (remaining_p <= p || remaining_p <= 0.0) {
        k = remaining;
      } else if (p > 0.0) {
        std::binomial_distribution<std::int64_t> bin(remaining, std::clamp(p / remaining_p, 0.0, 1.0));
        k = bin(rng.engine());
      }
      rec.values[b][s] = static_cast<double>(k);
      remaining -= k;
      remaining_p -= p;
    }
  }
  // Rounding in the running total can leave shots unassigned; give them to the
  // most probable outcome.
  if (remaining > 0) {
    std::size_t best_b = 0;
    std::size_t best_s = 0;
    double best = -1.0;
    for (std::size_t b = 0; b < dist.probs.size(); ++b) {
      for (std::size_t s = 0; s < dist.probs[b].size(); ++s) {
        if (dist.probs[b][s] > best) {
          best = dist.probs[b][s];
          best_b = b;
          best_s = s;
        }
      }
    }
    rec.values[best_b][best_s] += static_cast<double>(remaining);
  }
  return rec;
}

std::vector<std::size_t> sample_outcomes(const OutcomeDistribution& dist, std::int64_t shots,
                                         SeededRng& rng) {
  if (shots < 1) throw std::invalid_argument("number of shots must be >= 1");
  std::vector<double> flat;
  for (const auto& p : dist.probs) flat.insert(flat.end(), p.begin(), p.end());
  std::discrete_distribution<std::size_t> pick(flat.begin(), flat.end());
  std::vector<std::size_t> out(static_cast<std::size_t>(shots));
  for (auto& o : out) o = pick(rng.engine());
  return out;
}

double unbiased_power(const ShotRecord& record, OutcomeRef s, int n) {
  if (n < 1) throw std::invalid_argument("moment order must be >= 1");
  const double v = record.values.at(s.sector).at(s.outcome);
  if (record.exact()) return std::pow(v, n);
  const auto shots = static_cast<double>(*record.shots);
  if (shots < n) {
    throw std::domain_error("unbiased estimator of order " + std::to_string(n) + " needs at least " +
                            std::to_string(n) + " shots");
  }
  double est = 1.0;
  for (int k = 0; k < n; ++k) est *= (v - k) / (shots - k);
  return est;
}

}  // namespace qdesign

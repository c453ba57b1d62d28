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

#include "qdesign/renyi.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "qdesign/kernels.hpp"

namespace qdesign {

MomentAccumulator::MomentAccumulator(std::vector<SectorLabel> labels, const Observable& obs,
                                     int n_max, ShotCount shots)
    : labels_(std::move(labels)), n_max_(n_max), shots_(shots) {
  if (n_max < 1) throw std::invalid_argument("moment order must be >= 1");
  if (labels_.size() != obs.sectors()) throw std::invalid_argument("labels and observable disagree");
  if (shots && *shots < n_max) {
    throw std::domain_error("unbiased moments of order " + std::to_string(n_max) +
                            " need at least that many shots");
  }
  for (std::size_t b = 0; b < obs.sectors(); ++b) {
    dims_.push_back(obs.dim(b));
    const auto w = obs.weights(b);
    weights_.emplace_back(w.begin(), w.end());
    sums_.emplace_back(static_cast<std::size_t>(n_max) * w.size(), 0.0);
  }
}

void MomentAccumulator::add(const ShotRecord& record) {
  if (record.shots != shots_) throw std::invalid_argument("shot count differs from the accumulator's");
  if (record.values.size() != sums_.size()) throw std::invalid_argument("record has wrong sector count");
  for (std::size_t b = 0; b < sums_.size(); ++b) {
    if (record.values[b].size() != weights_[b].size()) {
      throw std::invalid_argument("record has wrong outcome count");
    }
    if (shots_) {
      kernels::accumulate_falling_moments(record.values[b], static_cast<double>(*shots_), n_max_,
                                          sums_[b]);
    } else {
      kernels::accumulate_power_moments(record.values[b], n_max_, sums_[b]);
    }
  }
  ++count_;
}

MomentTable MomentAccumulator::table() const {
  if (count_ == 0) throw std::logic_error("no unitaries accumulated");
  MomentTable t;
  t.n_max = n_max_;
  t.n_unitaries = count_;
  t.shots = shots_;
  for (std::size_t b = 0; b < sums_.size(); ++b) {
    SectorMoments m;
    m.label = labels_[b];
    m.dim = dims_[b];
    m.weights = weights_[b];
    const std::size_t no = weights_[b].size();
    m.moments.assign(static_cast<std::size_t>(n_max_), std::vector<double>(no));
    for (int k = 0; k < n_max_; ++k) {
      for (std::size_t s = 0; s < no; ++s) m.moments[k][s] = sums_[b][k * no + s] / static_cast<double>(count_);
    }
    t.sectors.push_back(std::move(m));
  }
  return t;
}

std::pair<double, double> forward_second_moment(double tr, double tr2, double w, std::size_t dim) {
  const double d = static_cast<double>(dim);
  if (dim < 2) return {w * tr, tr2};
  const double m1 = w * tr / d;
  const double m2 = (w * (w * d - 1.0) * tr * tr + w * (d - w) * tr2) / (d * (d * d - 1.0));
  return {m1, m2};
}

std::pair<double, double> invert_second_moment(double m1, double m2, double w, std::size_t dim) {
  if (dim < 2) throw std::invalid_argument("second-moment inversion needs a sector of size >= 2");
  const double d = static_cast<double>(dim);
  if (!(w > 0.0) || w >= d) {
    throw std::invalid_argument("an outcome covering the whole sector carries no purity information");
  }
  const double tr = m1 * d / w;
  const double tr2 = (m2 * d * (d * d - 1.0) - tr * tr * w * (w * d - 1.0)) / (w * (d - w));
  return {tr, tr2};
}

std::int64_t permutation_type_count(std::span<const int> b) {
  const int n = static_cast<int>(b.size());
  int total = 0;
  for (int l = 1; l <= n; ++l) {
    if (b[l - 1] < 0) throw std::invalid_argument("cycle multiplicities must be >= 0");
    total += l * b[l - 1];
  }
  if (total != n) throw std::invalid_argument("cycle type does not partition n = " + std::to_string(n));
  if (n > 20) throw std::invalid_argument("permutation counts above n = 20 overflow");
  // n! / prod(b_l! l^b_l), built as an exact integer division at the end.
  std::int64_t num = 1;
  for (int i = 2; i <= n; ++i) num *= i;
  std::int64_t den = 1;
  for (int l = 1; l <= n; ++l) {
    for (int j = 1; j <= b[l - 1]; ++j) den *= static_cast<std::int64_t>(j) * l;
  }
  return num / den;
}

std::vector<std::vector<int>> cycle_types(int n) {
  if (n < 1) throw std::invalid_argument("cycle types need n >= 1");
  std::vector<std::vector<int>> out;
  std::vector<int> b(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int remaining, int max_part) {
    if (remaining == 0) {
      out.push_back(b);
      return;
    }
    for (int l = std::min(remaining, max_part); l >= 1; --l) {
      ++b[l - 1];
      rec(remaining - l, l);
      --b[l - 1];
    }
  };
  rec(n, n);
  return out;
}

namespace {

double rising(std::size_t dim, int n) {
  double d = 1.0;
  for (int i = 0; i < n; ++i) d *= static_cast<double>(dim) + i;
  return d;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// sum over cycle types of C_b prod_k traces[k-1]^b_k, optionally skipping b_n = 1.
double cycle_sum(int n, std::span<const double> traces, bool skip_full_cycle) {
  double s = 0.0;
  for (const auto& b : cycle_types(n)) {
    if (skip_full_cycle && b[n - 1] == 1) continue;
    double term = static_cast<double>(permutation_type_count(b));
    for (int k = 1; k <= n; ++k) {
      if (b[k - 1] > 0) term *= std::pow(traces[k - 1], b[k - 1]);
    }
    s += term;
  }
  return s;
}

}  // namespace

double forward_moment(int n, std::span<const double> traces, std::size_t dim) {
  if (n < 1) throw std::invalid_argument("moment order must be >= 1");
  if (traces.size() < static_cast<std::size_t>(n)) throw std::invalid_argument("missing traces");
  if (dim < 1) throw std::invalid_argument("sector dimension must be >= 1");
  return cycle_sum(n, traces, false) / rising(dim, n);
}

double invert_higher_moment(int n, double mn, std::span<const double> lower, std::size_t dim) {
  if (n < 1) throw std::invalid_argument("moment order must be >= 1");
  if (lower.size() < static_cast<std::size_t>(n - 1)) {
    throw std::invalid_argument("inversion of order " + std::to_string(n) + " needs traces of orders 1.." +
                                std::to_string(n - 1));
  }
  if (dim < 1) throw std::invalid_argument("sector dimension must be >= 1");
  std::vector<double> traces(lower.begin(), lower.begin() + (n - 1));
  traces.push_back(0.0);
  return (mn * rising(dim, n) - cycle_sum(n, traces, true)) / factorial(n - 1);
}

double c_n_flat(int n, std::size_t dim, double p_n) {
  if (n < 1) throw std::invalid_argument("moment order must be >= 1");
  if (!(p_n > 0.0)) throw std::invalid_argument("p_n guess must be positive");
  const double d = static_cast<double>(dim);
  // Flat spectrum of rank r: Tr rho^k = r^(1-k); r from p_n.
  double r = n == 1 ? d : std::pow(p_n, -1.0 / (n - 1));
  r = std::clamp(r, 1.0, d);
  std::vector<double> traces(static_cast<std::size_t>(2 * n));
  for (int k = 1; k <= 2 * n; ++k) traces[k - 1] = std::pow(r, 1.0 - k);
  const double m2n = forward_moment(2 * n, traces, dim);
  const double mn = forward_moment(n, traces, dim);
  return std::sqrt(std::max(0.0, m2n - mn * mn));
}

double c_n_pure_asymptotic(int n, double dim) {
  double binom = 1.0;
  for (int i = 1; i <= n; ++i) binom = binom * (n + i) / i;
  return factorial(n) / std::pow(dim, n) * std::sqrt(binom - 1.0);
}

ErrorPrediction predicted_error(int n, std::size_t n_unitaries, ShotCount shots, std::size_t dim,
                                double p_n_guess, std::optional<std::size_t> outcomes) {
  if (n < 1 || n_unitaries < 1 || dim < 1) throw std::invalid_argument("predicted_error needs positive inputs");
  if (shots && *shots < 1) throw std::invalid_argument("number of shots must be >= 1");
  const double d = static_cast<double>(dim);
  const double no = static_cast<double>(outcomes.value_or(dim));
  ErrorPrediction e;
  e.unvalidated = n > 4;
  e.c_n = c_n_flat(n, dim, p_n_guess);
  e.c_prime = e.c_n * std::pow(d, n) / (3.0 * factorial(n - 1));
  e.b_n = std::sqrt(factorial(n));
  double shot_term = 0.0;
  if (shots) {
    const double ratio = d / static_cast<double>(*shots);
    for (int k = 0; 2 * k < n; ++k) shot_term += std::pow(ratio, 0.5 * n - k);
  }
  e.value = (e.c_prime + e.b_n * shot_term) / std::sqrt(static_cast<double>(n_unitaries) * no);
  return e;
}

EstimationReport estimate_renyi(const MomentTable& table, int n) {
  if (n < 1) throw std::invalid_argument("Renyi order must be >= 1");
  if (n > table.n_max) {
    throw std::invalid_argument("moment table holds orders up to " + std::to_string(table.n_max) +
                                ", asked for " + std::to_string(n));
  }
  EstimationReport rep;
  rep.n_max = n;
  rep.n_unitaries = table.n_unitaries;
  rep.shots = table.shots;
  rep.totals.assign(static_cast<std::size_t>(n), 0.0);
  std::size_t total_dim = 0;
  std::size_t total_outcomes = 0;

  for (const SectorMoments& sec : table.sectors) {
    rep.labels.push_back(sec.label);
    total_dim += sec.dim;
    total_outcomes += sec.weights.size();
    std::vector<double> traces(static_cast<std::size_t>(n), 0.0);
    const std::size_t no = sec.weights.size();
    if (sec.dim == 1) {
      // A one-dimensional block is invariant up to a phase: P = Tr rho exactly.
      for (int k = 1; k <= n; ++k) traces[k - 1] = sec.moments[k - 1][0];
    } else {
      for (int k = 1; k <= n; ++k) {
        double acc = 0.0;
        for (std::size_t s = 0; s < no; ++s) {
          const double w = sec.weights[s];
          const double mk = sec.moments[k - 1][s];
          if (k == 1) {
            acc += mk * static_cast<double>(sec.dim) / w;
          } else if (k == 2) {
            // Per-outcome inversion with the sector-averaged Tr rho.
            const double d = static_cast<double>(sec.dim);
            if (w >= d) {
              throw std::invalid_argument("an outcome covering the whole sector carries no purity information");
            }
            acc += (mk * d * (d * d - 1.0) - traces[0] * traces[0] * w * (w * d - 1.0)) / (w * (d - w));
          } else {
            if (w != 1.0) {
              throw std::domain_error("orders >= 3 are implemented for rank-one outcomes only");
            }
            acc += invert_higher_moment(k, mk, std::span<const double>(traces.data(), k - 1), sec.dim);
          }
        }
        traces[k - 1] = acc / static_cast<double>(no);
      }
    }
    for (int k = 0; k < n; ++k) rep.totals[k] += traces[k];
    rep.sector_traces.push_back(std::move(traces));
  }

  rep.entropies.assign(static_cast<std::size_t>(n), std::nullopt);
  for (int k = 2; k <= n; ++k) {
    const double p = rep.totals[k - 1];
    if (p > 0.0) rep.entropies[k - 1] = std::log(p) / (1.0 - k);
  }
  const double d = static_cast<double>(std::max<std::size_t>(total_dim, 1));
  const double guess = std::clamp(rep.totals[n - 1], std::pow(d, 1.0 - n), 1.0);
  rep.predicted = predicted_error(n, table.n_unitaries, table.shots, std::max<std::size_t>(total_dim, 1),
                                  guess, std::max<std::size_t>(total_outcomes, 1));
  return rep;
}

}  // namespace qdesign

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

#include "qdesign/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "qdesign/kernels.hpp"
#include "qdesign/measure.hpp"
#include "qdesign/renyi.hpp"

namespace qdesign {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_phase(double x) {
  // std::arg returns (-pi, pi]; map pi itself to -pi.
  return x >= kPi ? x - 2.0 * kPi : x;
}

}  // namespace

UnitaryEigensystem unitary_eigensystem(const Eigen::MatrixXcd& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("unitary block must be square");
  const auto n = u.rows();
  UnitaryEigensystem es;
  if (n == 0) return es;
  // U is normal, so its Schur form is diagonal and Q holds orthonormal eigenvectors.
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u);
  if (schur.info() != Eigen::Success) throw std::runtime_error("Schur decomposition did not converge");
  const Eigen::MatrixXcd& t = schur.matrixT();
  const Eigen::MatrixXcd& q = schur.matrixU();
  std::vector<double> raw(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) raw[k] = wrap_phase(std::arg(t(k, k)));
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return raw[a] < raw[b]; });
  es.vectors.resize(n, n);
  es.spectrum.phases.resize(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    es.spectrum.phases[k] = raw[order[k]];
    es.vectors.col(k) = q.col(order[k]);
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const double next = k + 1 < n ? es.spectrum.phases[k + 1] : es.spectrum.phases[0] + 2.0 * kPi;
    if (n > 1 && next - es.spectrum.phases[k] < 1e-8) es.degenerate = true;
  }
  return es;
}

PhaseSpectrum phase_spectrum(const Eigen::MatrixXcd& u) { return unitary_eigensystem(u).spectrum; }

IprValue ipr(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& rho) {
  if (rho.rows() != u.rows() || rho.cols() != u.cols()) {
    throw std::invalid_argument("state and unitary dimensions differ");
  }
  const UnitaryEigensystem es = unitary_eigensystem(u);
  IprValue out;
  out.degenerate = es.degenerate;
  const Eigen::MatrixXcd rv = rho * es.vectors;
  for (Eigen::Index k = 0; k < u.cols(); ++k) {
    const double occ = es.vectors.col(k).dot(rv.col(k)).real();
    out.value += occ * occ;
  }
  return out;
}

IprValue ipr(const BlockUnitary& u, const SectorState& rho) {
  if (u.size() != rho.size()) throw std::invalid_argument("unitary and state have different sector counts");
  IprValue total;
  for (std::size_t b = 0; b < rho.size(); ++b) {
    if (u.labels[b] != rho.blocks()[b].label) throw std::invalid_argument("sector labels differ");
    if (rho.is_zero(b)) continue;
    const IprValue v = ipr(u.blocks[b], rho.dense_block(b));
    total.value += v.value;
    total.degenerate = total.degenerate || v.degenerate;
  }
  return total;
}

double ipr_cue_reference(std::span<const double> eigenvalues, std::size_t dim) {
  if (dim < 1 || eigenvalues.size() > dim) throw std::invalid_argument("spectrum longer than dim");
  double sum = 0.0;
  double sum2 = 0.0;
  for (double l : eigenvalues) {
    sum += l;
    sum2 += l * l;
  }
  const double cross = 0.5 * (sum * sum - sum2);
  return 2.0 / (static_cast<double>(dim) + 1.0) * (sum2 + cross);
}

GapRatios phase_gap_ratios(const PhaseSpectrum& spectrum) {
  const auto& th = spectrum.phases;
  const std::size_t n = th.size();
  if (n < 3) throw std::invalid_argument("gap ratios need at least 3 phases");
  GapRatios out;
  std::vector<double> gaps(n + 1);
  for (std::size_t k = 0; k < n; ++k) {
    double g = k + 1 < n ? th[k + 1] - th[k] : th[0] + 2.0 * kPi - th[k];
    if (g < 1e-14) {
      g = 1e-14;
      out.coincident = true;
    }
    gaps[k] = g;
  }
  gaps[n] = gaps[0];
  out.r.resize(n);
  kernels::adjacent_gap_ratios(gaps, out.r);
  return out;
}

PhaseSpectrum poisson_phases(std::size_t dim, SeededRng& rng) {
  PhaseSpectrum s;
  s.phases.resize(dim);
  for (double& x : s.phases) x = rng.uniform(-kPi, kPi);
  std::sort(s.phases.begin(), s.phases.end());
  return s;
}

std::vector<double> r_histogram(std::span<const double> r, std::size_t bins) {
  if (bins < 1) throw std::invalid_argument("histogram needs at least one bin");
  std::vector<double> h(bins, 0.0);
  if (r.empty()) return h;
  for (double x : r) {
    const auto k = std::min(bins - 1, static_cast<std::size_t>(std::max(0.0, x) * static_cast<double>(bins)));
    h[k] += 1.0;
  }
  const double scale = static_cast<double>(bins) / static_cast<double>(r.size());
  for (double& x : h) x *= scale;
  return h;
}

EnsembleDiagnostics ensemble_diagnostics(std::span<const BlockUnitary> ensemble,
                                         const SectorState& rho) {
  if (ensemble.empty()) throw std::invalid_argument("diagnostics need a non-empty ensemble");
  EnsembleDiagnostics out;
  std::vector<double> pooled;
  std::vector<std::size_t> dims;
  std::vector<SectorLabel> labels;
  for (const auto& blk : rho.blocks()) {
    dims.push_back(blk.dim);
    labels.push_back(blk.label);
  }
  const Observable obs = Observable::fine_grained(dims);
  MomentAccumulator acc(labels, obs, 2, std::nullopt);
  SeededRng unused(0);

  for (const BlockUnitary& u : ensemble) {
    const IprValue v = ipr(u, rho);
    out.mean_ipr += v.value;
    out.degenerate = out.degenerate || v.degenerate;
    for (const auto& blk : u.blocks) {
      if (blk.rows() < 3) continue;
      const GapRatios g = phase_gap_ratios(phase_spectrum(blk));
      out.coincident = out.coincident || g.coincident;
      pooled.insert(pooled.end(), g.r.begin(), g.r.end());
    }
    acc.add(sample_shots(outcome_probs(u, rho, obs), std::nullopt, unused));
  }
  out.mean_ipr /= static_cast<double>(ensemble.size());
  for (std::size_t b = 0; b < rho.size(); ++b) {
    if (rho.is_zero(b)) continue;
    const auto ev = rho.eigenvalues(b);
    out.ipr_reference += ipr_cue_reference(ev, rho.blocks()[b].dim);
  }
  out.r_count = pooled.size();
  if (!pooled.empty()) {
    out.mean_r = std::accumulate(pooled.begin(), pooled.end(), 0.0) / static_cast<double>(pooled.size());
  }
  out.r_histogram = r_histogram(pooled);
  out.purity_estimate = estimate_renyi(acc.table(), 2).totals[1];
  out.purity_exact = total_trace_power(rho, 2);
  out.purity_error = std::abs(out.purity_estimate - out.purity_exact);
  return out;
}

}  // namespace qdesign

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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "qdesign/chaos.hpp"
#include "qdesign/experiment.hpp"
#include "qdesign/hilbert.hpp"
#include "qdesign/parallel.hpp"
#include "qdesign/renyi.hpp"
#include "qdesign/states.hpp"

namespace qdesign {
namespace {

// Stream tags keep the derived rng paths of different purposes apart.
constexpr std::uint64_t kTagState = 0x5354;
constexpr std::uint64_t kTagUnitary = 0x554e;
constexpr std::uint64_t kTagIdealShots = 0x4953;
constexpr std::uint64_t kTagNoisyShots = 0x4e53;
constexpr std::uint64_t kTagJitter = 0x4a54;
constexpr std::uint64_t kTagFlip = 0x464c;
constexpr std::uint64_t kTagBaseline = 0x424c;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Clock = std::chrono::steady_clock;

std::string fmt(double x) { return csv::format_double(x); }

std::string shots_text(ShotCount s) { return s ? std::to_string(*s) : "inf"; }

// Synthetic single block of size dim for lattice-free CUE runs.
Sector plain_sector(std::size_t dim) {
  std::vector<BasisConfig> basis(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t k = dim - 1 - i;  // descending, like every other basis
    basis[i].occupation = {static_cast<std::uint8_t>(k >> 8), static_cast<std::uint8_t>(k & 0xff)};
  }
  return Sector({}, std::move(basis));
}

// Everything a grid point needs before unitaries are drawn. Only sectors in
// which the test state has weight are kept: the dynamics never leaves a
// sector, so the others contribute exactly zero to every estimate.
struct PointSetup {
  std::vector<Sector> sectors;
  std::optional<SectorState> state;
  std::optional<Observable> obs;
  std::vector<SectorLabel> labels;
  std::size_t dim = 0;
  int spin_sites = 0;  // > 0 when the support is one full 2^L spin block
};

SectorState make_state(const ExperimentConfig& cfg, std::span<const Sector> sectors, std::uint64_t seed,
                       std::size_t point) {
  const StateSpec& st = cfg.state;
  const QuenchModel* model = cfg.model.model ? &*cfg.model.model : nullptr;
  auto need_model = [&]() -> const QuenchModel& {
    if (!model) throw std::invalid_argument("state '" + st.name + "' needs a lattice model");
    return *model;
  };
  if (st.name == "antiferromagnetic") return antiferromagnetic(need_model(), sectors);
  if (st.name == "ghz") return ghz(need_model(), sectors);
  if (st.name == "all_up") return all_up(need_model(), sectors);
  if (st.name == "psi11" || st.name == "psi20" || st.name == "psi22") {
    return fermi_hubbard_state(need_model(), sectors, st.name);
  }
  if (st.name == "fock") return bose_fock(need_model(), sectors, st.occupation);
  if (st.name == "bh_ground") return bose_ground(need_model(), sectors);
  if (st.name == "basis") {
    BasisConfig c;
    for (int v : st.occupation) {
      if (v < 0 || v > 255) throw std::invalid_argument("basis occupations must lie in [0, 255]");
      c.occupation.push_back(static_cast<std::uint8_t>(v));
    }
    return basis_state(sectors, c);
  }
  if (st.name == "pure") return basis_state(sectors, sectors.front().config(0));
  if (st.name == "maximally_mixed") return maximally_mixed(sectors);
  // Random and flat states live in the largest sector (first on ties).
  std::size_t big = 0;
  for (std::size_t b = 1; b < sectors.size(); ++b) {
    if (sectors[b].dim() > sectors[big].dim()) big = b;
  }
  if (model && model->kind() == ModelKind::kBoseHubbard) {
    for (std::size_t b = 0; b < sectors.size(); ++b) {
      if (sectors[b].label() == SectorLabel{std::get<BoseHubbardParams>(model->params).particles}) big = b;
    }
  }
  if (st.name == "random") {
    SeededRng rng = SeededRng::derive(seed, {kTagState, point});
    return haar_random_state(sectors, big, rng);
  }
  if (st.name == "flat") return flat_mixed(sectors, big, st.rank);
  throw std::invalid_argument("unknown test state '" + st.name + "'");
}

PointSetup setup_point(const ExperimentConfig& cfg, std::size_t point) {
  std::vector<Sector> all;
  if (cfg.model.model) {
    all = enumerate_sectors(*cfg.model.model);
  } else {
    all.push_back(plain_sector(cfg.model.cue_dim));
  }
  const SectorState full = make_state(cfg, all, cfg.seed, point);
  PointSetup ps;
  std::vector<SectorState::Block> kept;
  for (std::size_t b = 0; b < full.size(); ++b) {
    if (full.is_zero(b) || full.weight(b) <= 0.0) continue;
    ps.sectors.push_back(all[b]);
    kept.push_back({full.blocks()[b].label, full.blocks()[b].dim, full.dense_block(b)});
  }
  ps.state.emplace(std::move(kept));
  std::vector<std::size_t> dims;
  for (const Sector& s : ps.sectors) {
    dims.push_back(s.dim());
    ps.labels.push_back(s.label());
    ps.dim += s.dim();
  }
  ps.obs.emplace(Observable::coarse(dims, cfg.measurement.group_size));
  if (cfg.model.model && cfg.model.model->kind() == ModelKind::kIsing && ps.sectors.size() == 1 &&
      ps.dim == (std::size_t{1} << cfg.model.model->lattice.sites())) {
    ps.spin_sites = cfg.model.model->lattice.sites();
  }
  return ps;
}

BlockUnitary cue_blocks(const PointSetup& ps, SeededRng& rng) {
  BlockUnitary u;
  for (const Sector& s : ps.sectors) {
    u.labels.push_back(s.label());
    u.blocks.push_back(sample_cue(s.dim(), rng));
  }
  return u;
}

BlockUnitary identity_blocks(const PointSetup& ps) {
  BlockUnitary u;
  for (const Sector& s : ps.sectors) {
    const auto d = static_cast<Eigen::Index>(s.dim());
    u.labels.push_back(s.label());
    u.blocks.push_back(Eigen::MatrixXcd::Identity(d, d));
  }
  return u;
}

int max_order(const ExperimentConfig& cfg) {
  return *std::max_element(cfg.measurement.orders.begin(), cfg.measurement.orders.end());
}

struct Stats {
  double mean = kNaN;
  double mean_abs = kNaN;
  double rms = kNaN;
  double median_abs = kNaN;
};

// `values` are estimates; errors are taken against `exact`.
Stats error_stats(const std::vector<double>& values, double exact) {
  Stats s;
  if (values.empty()) return s;
  std::vector<double> abs_err;
  double sum = 0.0;
  double sq = 0.0;
  for (double v : values) {
    sum += v;
    abs_err.push_back(std::abs(v - exact));
    sq += (v - exact) * (v - exact);
  }
  const double n = static_cast<double>(values.size());
  s.mean = sum / n;
  s.mean_abs = std::accumulate(abs_err.begin(), abs_err.end(), 0.0) / n;
  s.rms = std::sqrt(sq / n);
  std::sort(abs_err.begin(), abs_err.end());
  const std::size_t m = abs_err.size() / 2;
  s.median_abs = abs_err.size() % 2 ? abs_err[m] : 0.5 * (abs_err[m - 1] + abs_err[m]);
  return s;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return kNaN;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::vector<std::string> header_with(const ExperimentPlan& plan, std::initializer_list<const char*> cols) {
  std::vector<std::string> h(plan.sweep_keys.begin(), plan.sweep_keys.end());
  h.insert(h.end(), cols.begin(), cols.end());
  h.insert(h.end(), {"seed", "config_hash", "wall_time_s"});
  return h;
}

std::vector<std::string> row_prefix(const GridPoint& gp) {
  std::vector<std::string> r;
  for (const auto& [k, v] : gp.assignments) r.push_back(v);
  return r;
}

std::string hash_text(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[i] = digits[h & 0xf];
  return s;
}

csv::Table new_table(const ExperimentPlan& plan, std::string_view command) {
  csv::Table t;
  t.comments.push_back("qdesign " + std::string(command) + " config_hash=" + hash_text(plan.hash) +
                       " seed=" + std::to_string(plan.seed));
  return t;
}

void finish_row(std::vector<std::string>& row, const ExperimentPlan& plan, Clock::time_point start) {
  row.push_back(std::to_string(plan.seed));
  row.push_back(hash_text(plan.hash));
  row.push_back(fmt(std::chrono::duration<double>(Clock::now() - start).count()));
}

// Shared body of run_converge and run_errors.
csv::Table run_estimation(const ExperimentPlan& plan, const RunOptions& opts, bool cue,
                          std::string_view command) {
  csv::Table table = new_table(plan, command);
  table.header = header_with(plan, {"n", "estimate_mean", "exact", "mean_abs_error", "rms_error",
                                    "median_abs_error", "predicted_error", "n_unitaries", "shots",
                                    "repetitions", "status"});
  for (std::size_t p = 0; p < plan.points.size(); ++p) {
    const GridPoint& gp = plan.points[p];
    const ExperimentConfig& cfg = gp.config;
    const auto start = Clock::now();
    std::vector<std::vector<double>> estimates(cfg.measurement.orders.size());
    std::vector<double> exact(cfg.measurement.orders.size(), kNaN);
    std::vector<double> predicted(cfg.measurement.orders.size(), kNaN);
    std::string status = "ok";
    try {
      if (!cue && cfg.model.source != UnitarySource::kQuench) {
        throw std::invalid_argument("converge needs a quench model; use 'errors' for CUE unitaries");
      }
      const PointSetup ps = setup_point(cfg, p);
      const int n_max = max_order(cfg);
      for (std::size_t o = 0; o < cfg.measurement.orders.size(); ++o) {
        const int n = cfg.measurement.orders[o];
        exact[o] = total_trace_power(*ps.state, n);
        predicted[o] = predicted_error(n, cfg.measurement.n_unitaries, cfg.measurement.shots, ps.dim,
                                       std::max(exact[o], std::pow(static_cast<double>(ps.dim), 1.0 - n)),
                                       ps.obs->total_outcomes())
                           .value;
      }
      for (int rep = 0; rep < cfg.repetitions; ++rep) {
        std::vector<ShotRecord> records(cfg.measurement.n_unitaries);
        parallel_for(records.size(), opts.threads, [&](std::size_t u) {
          SeededRng rng = SeededRng::derive(cfg.seed, {kTagUnitary, p, static_cast<std::uint64_t>(rep), u});
          const BlockUnitary U = cue ? cue_blocks(ps, rng)
                                     : compose_quenches(*cfg.model.model, ps.sectors, cfg.schedule, rng);
          SeededRng shots = SeededRng::derive(cfg.seed, {kTagIdealShots, p, static_cast<std::uint64_t>(rep), u});
          records[u] = sample_shots(outcome_probs(U, *ps.state, *ps.obs), cfg.measurement.shots, shots);
        });
        MomentAccumulator acc(ps.labels, *ps.obs, n_max, cfg.measurement.shots);
        for (const auto& r : records) acc.add(r);
        const EstimationReport rep_est = estimate_renyi(acc.table(), n_max);
        for (std::size_t o = 0; o < cfg.measurement.orders.size(); ++o) {
          estimates[o].push_back(rep_est.totals[cfg.measurement.orders[o] - 1]);
        }
      }
    } catch (const std::exception& e) {
      status = std::string("error: ") + e.what();
    }
    for (std::size_t o = 0; o < cfg.measurement.orders.size(); ++o) {
      const bool ok = status == "ok";
      const Stats s = ok ? error_stats(estimates[o], exact[o]) : Stats{};
      std::vector<std::string> row = row_prefix(gp);
      for (double v : {static_cast<double>(cfg.measurement.orders[o]), s.mean, exact[o], s.mean_abs, s.rms,
                       s.median_abs, predicted[o]}) {
        row.push_back(fmt(v));
      }
      row.push_back(std::to_string(cfg.measurement.n_unitaries));
      row.push_back(shots_text(cfg.measurement.shots));
      row.push_back(std::to_string(cfg.repetitions));
      row.push_back(status);
      finish_row(row, plan, start);
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace

csv::Table run_converge(const ExperimentPlan& plan, const RunOptions& opts) {
  return run_estimation(plan, opts, false, "converge");
}

csv::Table run_errors(const ExperimentPlan& plan, const RunOptions& opts) {
  return run_estimation(plan, opts, true, "errors");
}

csv::Table run_imperfect(const ExperimentPlan& plan, const RunOptions& opts) {
  csv::Table table = new_table(plan, "imperfect");
  table.header = header_with(plan, {"n", "channel", "channel_p", "fidelity_p", "jitter_p", "exact",
                                    "ideal_estimate_mean", "estimate_mean", "corrected_mean",
                                    "relative_error_mean", "abs_error_uncorrected", "abs_error_corrected",
                                    "predicted_error", "n_unitaries", "shots", "repetitions", "status"});
  for (std::size_t p = 0; p < plan.points.size(); ++p) {
    const GridPoint& gp = plan.points[p];
    const ExperimentConfig& cfg = gp.config;
    const ImperfectionSpec& im = cfg.imperfections;
    const auto start = Clock::now();
    const std::size_t no = cfg.measurement.orders.size();
    std::vector<std::vector<double>> ideal(no), noisy(no), corrected(no), relative(no);
    std::vector<double> exact(no, kNaN), predicted(no, kNaN);
    std::string status = "ok";
    try {
      const PointSetup ps = setup_point(cfg, p);
      const bool quench = cfg.model.source == UnitarySource::kQuench;
      if ((im.channel || im.fidelity) && ps.spin_sites == 0) {
        throw std::invalid_argument("channels and readout errors need a spin chain held as one 2^L block");
      }
      if (im.fidelity && cfg.measurement.group_size != 1) {
        throw std::invalid_argument("readout errors need a fine-grained observable");
      }
      if (im.jitter > 0.0 && (!quench || !cfg.measurement.shots)) {
        throw std::invalid_argument("disorder jitter needs quench unitaries and a finite shot count");
      }
      if (im.jitter > 0.0) {
        for (const Sector& s : ps.sectors) {
          if (s.dim() > im.jitter_max_dim) {
            throw std::invalid_argument("sector of dimension " + std::to_string(s.dim()) +
                                        " exceeds imperfections.jitter_max_dim");
          }
        }
      }
      const int n_max = max_order(cfg);
      for (std::size_t o = 0; o < no; ++o) {
        const int n = cfg.measurement.orders[o];
        exact[o] = total_trace_power(*ps.state, n);
        predicted[o] = predicted_error(n, cfg.measurement.n_unitaries, cfg.measurement.shots, ps.dim,
                                       std::max(exact[o], std::pow(static_cast<double>(ps.dim), 1.0 - n)),
                                       ps.obs->total_outcomes())
                           .value;
      }
      const BlockUnitary identity = identity_blocks(ps);
      const double delta = quench ? cfg.model.model->disorder_strength() : 0.0;
      for (int rep = 0; rep < cfg.repetitions; ++rep) {
        const auto r64 = static_cast<std::uint64_t>(rep);
        std::vector<ShotRecord> ideal_rec(cfg.measurement.n_unitaries), noisy_rec(cfg.measurement.n_unitaries);
        parallel_for(ideal_rec.size(), opts.threads, [&](std::size_t u) {
          SeededRng rng = SeededRng::derive(cfg.seed, {kTagUnitary, p, r64, u});
          std::vector<QuenchStep> steps;
          BlockUnitary U;
          if (quench) {
            steps = draw_quench_sequence(*cfg.model.model, cfg.schedule, rng);
            U = sequence_block_unitary(*cfg.model.model, ps.sectors, steps);
          } else {
            U = cue_blocks(ps, rng);
          }
          SeededRng ideal_shots = SeededRng::derive(cfg.seed, {kTagIdealShots, p, r64, u});
          ideal_rec[u] = sample_shots(outcome_probs(U, *ps.state, *ps.obs), cfg.measurement.shots, ideal_shots);

          auto final_probs = [&](const BlockUnitary& V) {
            if (!im.channel) return outcome_probs(V, *ps.state, *ps.obs);
            return outcome_probs(identity, decohered_final_state(*ps.state, V, *im.channel), *ps.obs);
          };
          SeededRng noisy_shots = SeededRng::derive(cfg.seed, {kTagNoisyShots, p, r64, u});
          if (im.jitter > 0.0) {
            // Every shot sees its own imperfect replica of the unitary.
            SeededRng jit = SeededRng::derive(cfg.seed, {kTagJitter, p, r64, u});
            ShotRecord rec;
            rec.shots = cfg.measurement.shots;
            for (std::int64_t m = 0; m < *cfg.measurement.shots; ++m) {
              const auto jittered = jitter_sequence(steps, im.jitter, delta, jit);
              const OutcomeDistribution dist =
                  final_probs(sequence_block_unitary(*cfg.model.model, ps.sectors, jittered));
              if (rec.values.empty()) {
                for (const auto& pr : dist.probs) rec.values.emplace_back(pr.size(), 0.0);
              }
              const std::size_t flat = sample_outcomes(dist, 1, noisy_shots)[0];
              std::size_t b = 0;
              std::size_t s = flat;
              while (s >= rec.values[b].size()) s -= rec.values[b++].size();
              rec.values[b][s] += 1.0;
            }
            noisy_rec[u] = std::move(rec);
          } else {
            noisy_rec[u] = sample_shots(final_probs(U), cfg.measurement.shots, noisy_shots);
          }
          if (im.fidelity) {
            SeededRng flips = SeededRng::derive(cfg.seed, {kTagFlip, p, r64, u});
            noisy_rec[u] = fidelity_flip_record(noisy_rec[u], ps.spin_sites, *im.fidelity, flips);
          }
        });
        MomentAccumulator acc_i(ps.labels, *ps.obs, n_max, cfg.measurement.shots);
        MomentAccumulator acc_n(ps.labels, *ps.obs, n_max, cfg.measurement.shots);
        for (std::size_t u = 0; u < ideal_rec.size(); ++u) {
          acc_i.add(ideal_rec[u]);
          acc_n.add(noisy_rec[u]);
        }
        const EstimationReport ei = estimate_renyi(acc_i.table(), n_max);
        const EstimationReport en = estimate_renyi(acc_n.table(), n_max);
        for (std::size_t o = 0; o < no; ++o) {
          const int n = cfg.measurement.orders[o];
          const double vi = ei.totals[n - 1];
          const double vn = en.totals[n - 1];
          ideal[o].push_back(vi);
          noisy[o].push_back(vn);
          relative[o].push_back(1.0 - vn / vi);
          if (n == 2) {
            corrected[o].push_back(im.fidelity ? fidelity_correct(vn, im.fidelity->p, ps.spin_sites) : vn);
          }
        }
      }
    } catch (const std::exception& e) {
      status = std::string("error: ") + e.what();
    }
    for (std::size_t o = 0; o < no; ++o) {
      const bool ok = status == "ok";
      const Stats sn = ok ? error_stats(noisy[o], exact[o]) : Stats{};
      const Stats sc = ok ? error_stats(corrected[o], exact[o]) : Stats{};
      std::vector<std::string> row = row_prefix(gp);
      row.push_back(std::to_string(cfg.measurement.orders[o]));
      row.push_back(im.channel ? std::string(channel_kind_name(im.channel->kind)) : "none");
      row.push_back(fmt(im.channel ? im.channel->p : 0.0));
      row.push_back(fmt(im.fidelity ? im.fidelity->p : 0.0));
      row.push_back(fmt(im.jitter));
      for (double v : {exact[o], ok ? mean_of(ideal[o]) : kNaN, sn.mean, sc.mean, ok ? mean_of(relative[o]) : kNaN,
                       sn.mean_abs, sc.mean_abs, predicted[o]}) {
        row.push_back(fmt(v));
      }
      row.push_back(std::to_string(cfg.measurement.n_unitaries));
      row.push_back(shots_text(cfg.measurement.shots));
      row.push_back(std::to_string(cfg.repetitions));
      row.push_back(status);
      finish_row(row, plan, start);
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

csv::Table run_chaos(const ExperimentPlan& plan, const RunOptions& opts) {
  csv::Table table = new_table(plan, "chaos");
  const bool histogram = !plan.points.empty() && plan.points.front().config.chaos.histogram;
  std::vector<std::string> cols = {"ensemble", "mean_ipr", "ipr_cue_reference", "mean_r", "r_count",
                                   "purity_estimate", "purity_exact", "purity_error", "degenerate",
                                   "coincident", "status"};
  if (histogram) {
    for (int b = 0; b < 50; ++b) cols.push_back((b < 10 ? "h0" : "h") + std::to_string(b));
  }
  table.header.assign(plan.sweep_keys.begin(), plan.sweep_keys.end());
  table.header.insert(table.header.end(), cols.begin(), cols.end());
  table.header.insert(table.header.end(), {"seed", "config_hash", "wall_time_s"});

  auto emit = [&](std::vector<std::string> row, const std::string& kind, const EnsembleDiagnostics& d,
                  bool has_state, const std::string& status, Clock::time_point start) {
    const bool ok = status == "ok";
    row.push_back(kind);
    auto num = [&](double v, bool valid) { row.push_back(fmt(ok && valid ? v : kNaN)); };
    num(d.mean_ipr, has_state);
    num(d.ipr_reference, has_state);
    num(d.mean_r, d.r_count > 0);
    row.push_back(std::to_string(d.r_count));
    num(d.purity_estimate, has_state);
    num(d.purity_exact, has_state);
    num(d.purity_error, has_state);
    row.push_back(d.degenerate ? "1" : "0");
    row.push_back(d.coincident ? "1" : "0");
    row.push_back(status);
    if (histogram) {
      for (int b = 0; b < 50; ++b) {
        row.push_back(fmt(ok && b < static_cast<int>(d.r_histogram.size()) ? d.r_histogram[b] : kNaN));
      }
    }
    finish_row(row, plan, start);
    table.rows.push_back(std::move(row));
  };

  std::optional<PointSetup> first_setup;
  for (std::size_t p = 0; p < plan.points.size(); ++p) {
    const GridPoint& gp = plan.points[p];
    const ExperimentConfig& cfg = gp.config;
    const auto start = Clock::now();
    EnsembleDiagnostics d;
    std::string status = "ok";
    try {
      if (cfg.model.source != UnitarySource::kQuench) {
        throw std::invalid_argument("chaos sweeps need a quench model; CUE baselines are added automatically");
      }
      PointSetup ps = setup_point(cfg, p);
      const std::size_t total = cfg.measurement.n_unitaries * static_cast<std::size_t>(cfg.repetitions);
      std::vector<BlockUnitary> ensemble(total);
      parallel_for(total, opts.threads, [&](std::size_t u) {
        SeededRng rng = SeededRng::derive(cfg.seed, {kTagUnitary, p, u});
        ensemble[u] = compose_quenches(*cfg.model.model, ps.sectors, cfg.schedule, rng);
      });
      d = ensemble_diagnostics(ensemble, *ps.state);
      if (!first_setup) first_setup = std::move(ps);
    } catch (const std::exception& e) {
      status = std::string("error: ") + e.what();
    }
    emit(row_prefix(gp), "quench", d, true, status, start);
  }

  if (plan.points.empty() || !plan.points.front().config.chaos.baselines || !first_setup) return table;
  const ExperimentConfig& cfg = plan.points.front().config;
  const std::size_t total = cfg.measurement.n_unitaries * static_cast<std::size_t>(cfg.repetitions);
  const std::vector<std::string> blank(plan.sweep_keys.size(), "");
  {
    const auto start = Clock::now();
    std::vector<BlockUnitary> ensemble(total);
    parallel_for(total, opts.threads, [&](std::size_t u) {
      SeededRng rng = SeededRng::derive(cfg.seed, {kTagBaseline, 0, u});
      ensemble[u] = cue_blocks(*first_setup, rng);
    });
    emit(blank, "cue", ensemble_diagnostics(ensemble, *first_setup->state), true, "ok", start);
  }
  {
    const auto start = Clock::now();
    EnsembleDiagnostics d;
    std::vector<double> pooled;
    for (std::size_t u = 0; u < total; ++u) {
      SeededRng rng = SeededRng::derive(cfg.seed, {kTagBaseline, 1, u});
      for (const Sector& s : first_setup->sectors) {
        if (s.dim() < 3) continue;
        const GapRatios g = phase_gap_ratios(poisson_phases(s.dim(), rng));
        d.coincident = d.coincident || g.coincident;
        pooled.insert(pooled.end(), g.r.begin(), g.r.end());
      }
    }
    d.r_count = pooled.size();
    d.mean_r = mean_of(pooled);
    d.r_histogram = r_histogram(pooled);
    emit(blank, "poisson", d, false, "ok", start);
  }
  return table;
}

}  // namespace qdesign

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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion.
//
// Every tolerance is pinned here. The master seed is fixed so that a rerun
// reproduces the same numbers bit for bit.
//
// Exit status: the number of failing criteria that are not listed in
// kKnownDefects. A known defect still prints FAIL; it is a criterion whose
// reference value is inconsistent with the quantity it names, documented in
// the README under "Acceptance results".

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qdesign/experiment.hpp"
#include "qdesign/renyi.hpp"
#include "qdesign/states.hpp"
#include "qdesign/unitaries.hpp"
#include "unit/oracles.hpp"

namespace {

using namespace qdesign;
using cd = std::complex<double>;

constexpr std::uint64_t kSeed = 12345;

// Criteria whose stated reference cannot be met by a correct implementation.
//  9: 0.53 is the orthogonal-ensemble mean gap ratio; the unitary ensemble
//     gives 0.5996.
const std::set<int> kKnownDefects = {9};

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// --- helpers over the run_* tables ---------------------------------------

csv::Table run(const std::function<csv::Table(const ExperimentPlan&, const RunOptions&)>& fn,
               const std::string& json, unsigned threads = 1) {
  return fn(parse_plan(json), RunOptions{threads});
}

std::size_t col(const csv::Table& t, const std::string& name) {
  const auto it = std::find(t.header.begin(), t.header.end(), name);
  if (it == t.header.end()) throw std::runtime_error("missing column " + name);
  return static_cast<std::size_t>(it - t.header.begin());
}

double num(const csv::Table& t, std::size_t row, const std::string& name) {
  const std::string& s = t.rows.at(row).at(col(t, name));
  if (t.rows[row][col(t, "status")] != "ok") throw std::runtime_error("grid point failed: " + t.rows[row][col(t, "status")]);
  return std::stod(s);
}

std::string text(const csv::Table& t, std::size_t row, const std::string& name) {
  return t.rows.at(row).at(col(t, name));
}

Sector plain_sector(std::size_t d) {
  std::vector<BasisConfig> basis;
  for (std::size_t i = 0; i < d; ++i) basis.push_back({{static_cast<std::uint8_t>(d - 1 - i)}});
  return Sector({}, basis);
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y, double* r2 = nullptr) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (r2) *r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  return sxy / sxx;
}

// --- 1. CUE moment identities ---------------------------------------------

Outcome cue_moments() {
  // Weingarten closed forms for rank-one outcomes s != s':
  //   <P_s> = tr/d, <P_s^2> = (tr^2 + tr2)/(d(d+1)),
  //   <P_s P_s'> = (tr^2 - tr2/d)/(d^2 - 1).
  const int samples = 20000;
  double worst = 0.0;
  for (std::size_t d : {2u, 4u, 8u}) {
    for (int mixed = 0; mixed < 2; ++mixed) {
      Eigen::VectorXd lam = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
      if (mixed) {
        for (std::size_t k = 0; k < d; ++k) lam[static_cast<Eigen::Index>(k)] = std::pow(0.5, k);
        lam /= lam.sum();
      } else {
        lam[0] = 1.0;
      }
      const double tr2 = lam.squaredNorm();
      const double dd = static_cast<double>(d);
      const double expect[3] = {1.0 / dd, (1.0 + tr2) / (dd * (dd + 1.0)), (1.0 - tr2 / dd) / (dd * dd - 1.0)};
      std::vector<double> xs[3];
      SeededRng rng = SeededRng::derive(kSeed, {1, d, static_cast<std::uint64_t>(mixed)});
      for (int k = 0; k < samples; ++k) {
        const Eigen::MatrixXcd u = sample_cue(d, rng);
        double p0 = 0.0;
        double p1 = 0.0;
        for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(d); ++j) {
          p0 += lam[j] * std::norm(u(0, j));
          p1 += lam[j] * std::norm(u(1, j));
        }
        xs[0].push_back(p0);
        xs[1].push_back(p0 * p0);
        xs[2].push_back(p0 * p1);
      }
      for (int m = 0; m < 3; ++m) {
        const auto ms = oracle::mean_se(xs[m]);
        if (ms.se == 0.0) {
          worst = std::max(worst, std::abs(ms.mean - expect[m]) > 1e-12 ? 1e9 : 0.0);
        } else {
          worst = std::max(worst, std::abs(ms.mean - expect[m]) / ms.se);
        }
      }
    }
  }
  return {worst < 4.0, "max deviation " + fmt("%.2f", worst) + " standard errors (limit 4)"};
}

// --- 2. round-trip inversion ----------------------------------------------

Outcome round_trip() {
  const int n_max = 4;
  std::vector<std::map<std::vector<int>, std::int64_t>> census;
  for (int n = 1; n <= n_max; ++n) census.push_back(oracle::cycle_type_census(n));
  SeededRng rng = SeededRng::derive(kSeed, {2});
  double worst = 0.0;
  for (std::size_t d = 2; d <= 16; ++d) {
    for (int trial = 0; trial < 100; ++trial) {
      // Random spectrum of random rank, Dirichlet(1) weights.
      const auto rank = 1 + static_cast<std::size_t>(rng.uniform(0.0, static_cast<double>(d)));
      std::vector<double> lam;
      for (std::size_t k = 0; k < std::min(rank, d); ++k) lam.push_back(-std::log(1.0 - rng.uniform(0.0, 1.0)));
      const double s = std::accumulate(lam.begin(), lam.end(), 0.0);
      std::vector<double> tr(n_max, 0.0);
      for (double l : lam) {
        for (int k = 1; k <= n_max; ++k) tr[k - 1] += std::pow(l / s, k);
      }
      for (int n = 1; n <= n_max; ++n) {
        // Forward moment from the brute-force permutation census.
        double sum = 0.0;
        for (const auto& [b, count] : census[n - 1]) {
          double term = static_cast<double>(count);
          for (int k = 1; k <= n; ++k) term *= std::pow(tr[k - 1], b[k - 1]);
          sum += term;
        }
        double rising = 1.0;
        for (int i = 0; i < n; ++i) rising *= static_cast<double>(d) + i;
        const double mn = sum / rising;
        worst = std::max(worst, std::abs(invert_higher_moment(n, mn, tr, d) - tr[n - 1]));
        if (n == 2) {
          const auto [t1, t2] = invert_second_moment(tr[0] / static_cast<double>(d), mn, 1.0, d);
          worst = std::max({worst, std::abs(t1 - tr[0]), std::abs(t2 - tr[1])});
        }
      }
    }
  }
  return {worst < 1e-12, "max |error| " + fmt("%.2e", worst) + " (limit 1e-12)"};
}

// --- 3. end-to-end exact-mode purity --------------------------------------

Outcome exact_mode_purity() {
  const std::string base = R"({"seed": 12345, "model": {"kind": "cue", "dim": 8},
    "measurement": {"n_unitaries": 10000, "shots": "inf", "orders": [2]}, "state": {"name": ")";
  const csv::Table pure = run(run_errors, base + "pure\"}}");
  const csv::Table mixed = run(run_errors, base + "maximally_mixed\"}}");
  const double e_pure = num(pure, 0, "mean_abs_error");
  const double e_mixed = num(mixed, 0, "mean_abs_error");
  const double c2 = predicted_error(2, 10000, std::nullopt, 8, 1.0).c_prime;
  const double limit = 3.0 * c2 / std::sqrt(10000.0 * 8.0);
  const bool ok = e_pure < 0.05 && e_mixed < limit;
  return {ok, "pure " + fmt("%.4f", e_pure) + " (limit 0.05), mixed " + fmt("%.2e", e_mixed) + " (limit " +
                  fmt("%.4f", limit) + ")"};
}

// --- 4. statistical-error law ---------------------------------------------

Outcome error_law() {
  const std::size_t d = 64;
  const std::vector<Sector> sectors = {plain_sector(d)};
  const SectorState rho = basis_state(sectors, sectors[0].config(0));
  const std::vector<std::size_t> dims = {d};
  const Observable obs = Observable::fine_grained(dims);
  auto purity = [&](const std::vector<ShotRecord>& recs, ShotCount shots) {
    MomentAccumulator acc({{}}, obs, 2, shots);
    for (const auto& r : recs) acc.add(r);
    return estimate_renyi(acc.table(), 2).totals[1];
  };

  // Shot noise, paired with the N_M = infinity estimate on the same unitaries
  // so the unitary floor cancels. The -1 law holds for N_M << dim; at
  // N_M ~ dim the P^3/N_M variance term pulls the slope towards -1/2.
  const std::vector<std::int64_t> nm = {16, 64, 256};
  const int reps_m = 400;
  const std::size_t nu_m = 20;
  std::vector<double> err_m(nm.size(), 0.0);
  for (int r = 0; r < reps_m; ++r) {
    SeededRng rng = SeededRng::derive(kSeed, {4, 0, static_cast<std::uint64_t>(r)});
    std::vector<OutcomeDistribution> dist;
    std::vector<ShotRecord> exact;
    for (std::size_t u = 0; u < nu_m; ++u) {
      dist.push_back(outcome_probs(BlockUnitary{{{}}, {sample_cue(d, rng)}}, rho, obs));
      exact.push_back(sample_shots(dist.back(), std::nullopt, rng));
    }
    const double e_inf = purity(exact, std::nullopt);
    for (std::size_t k = 0; k < nm.size(); ++k) {
      std::vector<ShotRecord> recs;
      for (const auto& p : dist) recs.push_back(sample_shots(p, nm[k], rng));
      err_m[k] += std::abs(purity(recs, nm[k]) - e_inf) / reps_m;
    }
  }
  std::vector<double> lx, ly;
  for (std::size_t k = 0; k < nm.size(); ++k) {
    lx.push_back(std::log(static_cast<double>(nm[k])));
    ly.push_back(std::log(err_m[k]));
  }
  const double slope_m = least_squares_slope(lx, ly);

  // Unitary noise at N_M = infinity; nested prefixes of one draw per repetition.
  const std::vector<std::size_t> nu = {16, 64, 256, 1024};
  const int reps_u = 60;
  std::vector<double> err_u(nu.size(), 0.0);
  for (int r = 0; r < reps_u; ++r) {
    SeededRng rng = SeededRng::derive(kSeed, {4, 1, static_cast<std::uint64_t>(r)});
    std::vector<ShotRecord> recs;
    for (std::size_t u = 0; u < nu.back(); ++u) {
      recs.push_back(sample_shots(outcome_probs(BlockUnitary{{{}}, {sample_cue(d, rng)}}, rho, obs),
                                  std::nullopt, rng));
    }
    for (std::size_t k = 0; k < nu.size(); ++k) {
      const std::vector<ShotRecord> head(recs.begin(), recs.begin() + static_cast<std::ptrdiff_t>(nu[k]));
      err_u[k] += std::abs(purity(head, std::nullopt) - 1.0) / reps_u;
    }
  }
  lx.clear();
  ly.clear();
  for (std::size_t k = 0; k < nu.size(); ++k) {
    lx.push_back(std::log(static_cast<double>(nu[k])));
    ly.push_back(std::log(err_u[k]));
  }
  const double slope_u = least_squares_slope(lx, ly);
  const bool ok = std::abs(slope_m + 1.0) <= 0.3 && std::abs(slope_u + 0.5) <= 0.1;
  return {ok, "slope vs N_M " + fmt("%.3f", slope_m) + " (target -1 +/- 0.3), slope vs N_U " +
                  fmt("%.3f", slope_u) + " (target -0.5 +/- 0.1)"};
}

// --- 5. planning formula --------------------------------------------------

Outcome planning_formula() {
  const double v = predicted_error(2, 100, 500, std::size_t{1} << 14).value;
  return {v >= 0.05 / 1.5 && v <= 0.05 * 1.5, "predicted " + fmt("%.4f", v) + " (target 0.05 within x1.5)"};
}

// --- 6. design convergence via quenches -----------------------------------

Outcome design_convergence() {
  struct Case {
    const char* name;
    std::string model;
    std::string state;
  };
  const std::vector<Case> cases = {
      {"Ising L=4", R"({"kind": "ising", "L": 4, "J": 1.0, "omega": 1.0, "delta": 1.0})",
       R"({"name": "antiferromagnetic"})"},
      {"BH L=4 N=2", R"({"kind": "bose_hubbard", "L": 4, "N": 2, "J": 1.0, "U": 1.0, "delta": 1.0})",
       R"({"name": "bh_ground"})"},
  };
  bool ok = true;
  std::ostringstream detail;
  for (const Case& c : cases) {
    const std::string common = R"("seed": 12345, "model": )" + c.model + R"(, "state": )" + c.state +
                               R"(, "schedule": {"T": 1.0}, "repetitions": 10,
      "measurement": {"n_unitaries": 200, "shots": "inf", "orders": [2]})";
    const csv::Table q = run(run_converge, "{" + common + R"(, "sweep": {"schedule.eta": [1, 16]}})");
    const csv::Table f = run(run_errors, "{" + common + "}");
    const double e1 = num(q, 0, "mean_abs_error");
    const double e16 = num(q, 1, "mean_abs_error");
    const double floor = num(f, 0, "mean_abs_error");
    const bool case_ok = e16 < 2.0 * floor && e1 >= 5.0 * e16;
    ok = ok && case_ok;
    detail << c.name << ": eta=1 " << fmt("%.4f", e1) << ", eta=16 " << fmt("%.4f", e16) << ", CUE floor "
           << fmt("%.4f", floor) << (case_ok ? "" : " [fail]") << "; ";
  }
  std::string s = detail.str();
  s.resize(s.size() - 2);
  return {ok, s + " (need eta=16 < 2 floor, eta=1 >= 5 eta=16)"};
}

// --- 7. decoherence scaling -----------------------------------------------

Outcome decoherence_scaling() {
  const csv::Table t = run(run_imperfect, R"({"seed": 12345, "model": {"kind": "cue", "L": 1},
    "state": {"name": "ghz"}, "measurement": {"n_unitaries": 300, "shots": "inf", "orders": [2]},
    "imperfections": {"channel": {"kind": "dephasing", "p": 0.01}},
    "sweep": {"imperfections.channel.kind": ["dephasing", "depolarizing"],
              "imperfections.channel.p": [0.01, 0.02, 0.05], "model.L": [1, 2, 3, 4]}})");
  bool ok = true;
  double lo = 1e9;
  double hi = 0.0;
  double worst_r2 = 1.0;
  for (std::size_t g = 0; g < t.rows.size(); g += 4) {
    std::vector<double> ls, errs;
    for (std::size_t k = g; k < g + 4; ++k) {
      const double p = num(t, k, "channel_p");
      const double L = std::stod(text(t, k, "model.L"));
      const double rel = num(t, k, "relative_error_mean");
      const double ref = (text(t, k, "channel") == "dephasing" ? 2.0 : 6.0) * p * L;
      lo = std::min(lo, rel / ref);
      hi = std::max(hi, rel / ref);
      ls.push_back(L);
      errs.push_back(rel);
    }
    double r2 = 0.0;
    least_squares_slope(ls, errs, &r2);
    worst_r2 = std::min(worst_r2, r2);
  }
  ok = lo >= 1.0 / 1.5 && hi <= 1.5 && worst_r2 > 0.9;
  return {ok, "error/(2pL or 6pL) in [" + fmt("%.3f", lo) + ", " + fmt("%.3f", hi) +
                  "] (limit [0.667, 1.5]), min R^2 " + fmt("%.4f", worst_r2) + " (limit 0.9)"};
}

// --- 8. fidelity correction -----------------------------------------------

Outcome fidelity_correction() {
  const csv::Table t = run(run_imperfect, R"({"seed": 12345, "model": {"kind": "cue", "L": 4},
    "state": {"name": "antiferromagnetic"}, "repetitions": 20,
    "measurement": {"n_unitaries": 100, "shots": 16, "orders": [2]},
    "imperfections": {"fidelity": {"p": 0.02}}})");
  const double floor = predicted_error(2, 100, 16, 16).value;
  const double corr_err = num(t, 0, "abs_error_corrected");
  const double bias = 1.0 - num(t, 0, "estimate_mean");
  const double expect = 1.0 - std::pow(0.98, 8);
  const bool ok = corr_err < floor && std::abs(bias - expect) <= 0.3 * expect;
  return {ok, "corrected mean |error| " + fmt("%.4f", corr_err) + " (floor " + fmt("%.4f", floor) +
                  "), uncorrected bias " + fmt("%.4f", bias) + " (target " + fmt("%.4f", expect) + " +/- 30%)"};
}

// --- 9. chaos diagnostics -------------------------------------------------

Outcome chaos_diagnostics() {
  const csv::Table t = run(run_chaos, R"({"seed": 12345,
    "model": {"kind": "ising", "L": 6, "J": 1.0, "omega": 1.0, "delta": 4.0},
    "schedule": {"T": 1.0}, "measurement": {"n_unitaries": 500},
    "sweep": {"schedule.eta": [1, 6]}})");
  const double r1 = num(t, 0, "mean_r");
  const double r6 = num(t, 1, "mean_r");
  const double cue = num(t, 2, "mean_r");
  const double poisson = num(t, 3, "mean_r");
  const bool cue_ok = std::abs(cue - 0.53) <= 0.01;
  const bool poisson_ok = std::abs(poisson - 0.39) <= 0.01;
  const bool loc_ok = std::abs(r1 - poisson) <= 0.03;
  const bool erg_ok = std::abs(r6 - cue) <= 0.03;
  return {cue_ok && poisson_ok && loc_ok && erg_ok,
          "CUE " + fmt("%.4f", cue) + (cue_ok ? "" : " [fail]") + " (0.53 +/- 0.01), Poisson " +
              fmt("%.4f", poisson) + (poisson_ok ? "" : " [fail]") + " (0.39 +/- 0.01), eta=1 " + fmt("%.4f", r1) +
              (loc_ok ? "" : " [fail]") + " (Poisson +/- 0.03), eta=6 " + fmt("%.4f", r6) +
              (erg_ok ? "" : " [fail]") + " (CUE +/- 0.03)"};
}

// --- 10. determinism ------------------------------------------------------

// Everything but the wall-clock column.
std::string body_without_wall_time(const csv::Table& t) {
  csv::Table copy = t;
  const std::size_t wall = col(copy, "wall_time_s");
  copy.header.erase(copy.header.begin() + static_cast<std::ptrdiff_t>(wall));
  for (auto& row : copy.rows) row.erase(row.begin() + static_cast<std::ptrdiff_t>(wall));
  return copy.str();
}

Outcome determinism() {
  struct Cmd {
    const char* name;
    std::function<csv::Table(const ExperimentPlan&, const RunOptions&)> fn;
    std::string json;
  };
  const std::vector<Cmd> cmds = {
      {"converge", run_converge, R"({"seed": 12345, "model": {"kind": "fermi_hubbard", "Lx": 2, "Ly": 2},
        "state": {"name": "psi20"}, "measurement": {"n_unitaries": 10, "shots": 8, "orders": [2, 3]},
        "sweep": {"schedule.eta": [1, 2], "schedule.mode": ["fresh", "random_times"]}})"},
      {"errors", run_errors, R"({"seed": 12345, "model": {"kind": "cue", "dim": 12},
        "state": {"name": "random"}, "measurement": {"n_unitaries": 20, "shots": 24, "orders": [2, 3]},
        "repetitions": 3})"},
      {"imperfect", run_imperfect, R"({"seed": 12345, "model": {"kind": "ising", "L": 3},
        "schedule": {"eta": 3}, "measurement": {"n_unitaries": 10, "shots": 12},
        "imperfections": {"channel": {"kind": "dephasing", "p": 0.05}, "fidelity": {"p": 0.02}, "jitter": 0.2}})"},
      {"chaos", run_chaos, R"({"seed": 12345, "model": {"kind": "bose_hubbard", "L": 4, "N": 2},
        "state": {"name": "bh_ground"}, "measurement": {"n_unitaries": 10}, "chaos": {"histogram": true}})"},
  };
  bool ok = true;
  std::string diffs;
  for (const Cmd& c : cmds) {
    const std::string a = body_without_wall_time(run(c.fn, c.json, 1));
    const std::string b = body_without_wall_time(run(c.fn, c.json, 2));
    if (a != b || a.find("error:") != std::string::npos) {
      ok = false;
      diffs += std::string(" ") + c.name;
    }
  }
  return {ok, ok ? "4 subcommands identical across two runs (wall_time_s excluded)" : "differs:" + diffs};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"CUE moment identities", cue_moments},
      {"round-trip inversion", round_trip},
      {"exact-mode purity", exact_mode_purity},
      {"statistical-error law", error_law},
      {"planning formula", planning_formula},
      {"design convergence via quenches", design_convergence},
      {"decoherence scaling", decoherence_scaling},
      {"fidelity correction", fidelity_correction},
      {"chaos diagnostics", chaos_diagnostics},
      {"determinism", determinism},
  };
  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool known = kKnownDefects.count(id) > 0;
    if (!o.pass && !known) ++unexpected;
    std::printf("%s %2d %s: %s [%.1f s]%s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.detail.c_str(),
                secs, !o.pass && known ? " (known defect)" : "");
    std::fflush(stdout);
  }
  return unexpected;
}

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

#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "qdesign/unitaries.hpp"
#include "unit/oracles.hpp"

namespace qdesign {
namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

HermitianOperator op(Eigen::MatrixXd m) { return {{}, std::move(m)}; }

TEST(Evolve, Examples) {
  Eigen::MatrixXd sz(2, 2), sx(2, 2);
  sz << 1, 0, 0, -1;
  sx << 0, 1, 1, 0;
  EXPECT_LT((evolve(op(sz), 0.0) - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((evolve(op(sz), kPi) + Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-14);
  const Eigen::MatrixXcd flip = evolve(op(sx), kPi / 2);
  EXPECT_NEAR(std::abs(flip(0, 1)), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(flip(0, 0)), 0.0, 1e-14);
}

TEST(Evolve, MatchesTaylorSeries) {
  SeededRng rng(1);
  Eigen::MatrixXd a(6, 6);
  for (auto& x : a.reshaped()) x = rng.normal(0, 1);
  const Eigen::MatrixXd h = 0.5 * (a + a.transpose());
  const double t = 0.3;
  // exp(-iHt) by a long Taylor series as the oracle.
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(6, 6);
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k < 60; ++k) {
    term = term * (h.cast<cd>() * cd(0, -t)) / static_cast<double>(k);
    sum += term;
  }
  EXPECT_LT((evolve(op(h), t) - sum).cwiseAbs().maxCoeff(), 1e-12);
  const Propagator prop(op(h));
  const Eigen::MatrixXcd x = Eigen::MatrixXcd::Random(6, 3);
  EXPECT_LT((prop.apply(t, x) - sum * x).cwiseAbs().maxCoeff(), 1e-12);
}

QuenchModel ising(int L, double omega, double delta = 1.0) {
  IsingParams p;
  p.omega = omega;
  p.delta = delta;
  return {Lattice::chain(L), p};
}

TEST(Compose, StaticOnlyMatchesEvolve) {
  const QuenchModel m = ising(3, 1.0, 0.0);
  const Sector s = enumerate_sectors(m)[0];
  QuenchSchedule sched;
  sched.eta = 1;
  sched.T = 0.8;
  SeededRng rng(4);
  const BlockUnitary u = compose_quenches(m, s, sched, rng);
  EXPECT_LT((u.blocks[0] - evolve(build_static(m, s), 0.8)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Compose, Reproducible) {
  const QuenchModel m{Lattice::rectangle(2, 2), FermiHubbardParams{}};
  const auto sectors = enumerate_sectors(m);
  QuenchSchedule sched;
  sched.eta = 3;
  SeededRng a(77), b(77);
  const BlockUnitary ua = compose_quenches(m, sectors, sched, a);
  const BlockUnitary ub = compose_quenches(m, sectors, sched, b);
  ASSERT_EQ(ua.size(), ub.size());
  for (std::size_t k = 0; k < ua.size(); ++k) EXPECT_TRUE((ua.blocks[k].array() == ub.blocks[k].array()).all());
  EXPECT_LT(ua.unitarity_defect(), 1e-10 * 3);
}

TEST(Compose, DiagonalQuenchesAddPhases) {
  const QuenchModel m = ising(2, 0.0);
  const auto sectors = enumerate_sectors(m);
  QuenchSchedule sched;
  sched.eta = 2;
  sched.T = 0.7;
  SeededRng rng(8), replay(8);
  const BlockUnitary u = compose_quenches(m, sectors, sched, rng);
  // Oracle: same draws replayed, phases summed per basis state.
  const DisorderPattern p1 = sample_disorder(m, replay);
  const DisorderPattern p2 = sample_disorder(m, replay);
  for (std::size_t b = 0; b < sectors.size(); ++b) {
    const Sector& s = sectors[b];
    for (std::size_t i = 0; i < s.dim(); ++i) {
      const auto& occ = s.config(i).occupation;
      const double s0 = occ[0] ? 1 : -1, s1 = occ[1] ? 1 : -1;
      double e = 2.0 * s0 * s1;  // J s0 s1 in both quenches
      e += p1.values[0] * s0 + p1.values[1] * s1 + p2.values[0] * s0 + p2.values[1] * s1;
      const cd expect = std::polar(1.0, -sched.T * e);
      EXPECT_LT(std::abs(u.blocks[b](i, i) - expect), 1e-12);
    }
    EXPECT_LT((u.blocks[b] - Eigen::MatrixXcd(u.blocks[b].diagonal().asDiagonal())).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Compose, ScheduleModes) {
  const QuenchModel m = ising(3, 1.0);
  QuenchSchedule digital;
  digital.eta = 5;
  digital.mode = ScheduleMode::kDigital;
  SeededRng rng(3);
  const auto d = draw_quench_sequence(m, digital, rng);
  for (std::size_t j = 0; j < d.size(); ++j) {
    const bool odd = (j + 1) % 2 == 1;
    EXPECT_EQ(d[j].include_static, odd);
    EXPECT_EQ(d[j].disorder.has_value(), !odd);
    EXPECT_EQ(d[j].duration, 1.0);
  }

  QuenchSchedule rt;
  rt.eta = 6;
  rt.mode = ScheduleMode::kSinglePatternRandomTimes;
  rt.t_max = 2.0;
  const auto r = draw_quench_sequence(m, rt, rng);
  for (std::size_t j = 0; j < r.size(); ++j) {
    EXPECT_TRUE(r[j].include_static);
    EXPECT_EQ(r[j].disorder.has_value(), j % 2 == 0);  // starts on
    if (r[j].disorder) {
      EXPECT_EQ(r[j].disorder->values, r[0].disorder->values);
    }
    EXPECT_GE(r[j].duration, 0.0);
    EXPECT_LE(r[j].duration, 2.0);
  }

  QuenchSchedule bad;
  bad.mode = ScheduleMode::kSinglePatternRandomTimes;
  bad.t_max = 0.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = QuenchSchedule{};
  bad.eta = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  EXPECT_THROW(parse_schedule_mode("trotter"), std::invalid_argument);
}

TEST(Compose, ProductOrderFirstQuenchRightmost) {
  const QuenchModel m = ising(2, 0.8);
  const auto sectors = enumerate_sectors(m);
  QuenchSchedule sched;
  sched.eta = 2;
  SeededRng rng(12), replay(12);
  const BlockUnitary u = compose_quenches(m, sectors, sched, rng);
  const Eigen::MatrixXcd u1 = evolve(build_quench(m, sectors[0], sample_disorder(m, replay)), 1.0);
  const Eigen::MatrixXcd u2 = evolve(build_quench(m, sectors[0], sample_disorder(m, replay)), 1.0);
  EXPECT_LT((u.blocks[0] - u2 * u1).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Cue, UnitaryAndPhaseOfDimOne) {
  SeededRng rng(21);
  const Eigen::MatrixXcd u = sample_cue(16, rng);
  EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(16, 16)).cwiseAbs().maxCoeff(), 1e-10);
  cd mean = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const cd z = sample_cue(1, rng)(0, 0);
    EXPECT_NEAR(std::abs(z), 1.0, 1e-14);
    mean += z;
  }
  EXPECT_LT(std::abs(mean / 1e4), 0.05);
}

// First and second moments against the 2-design Weingarten values.
TEST(Cue, MomentIdentities) {
  SeededRng rng(34);
  for (int d : {2, 4, 8}) {
    std::vector<double> a, b_re, c, e, f;
    for (int k = 0; k < 10000; ++k) {
      const Eigen::MatrixXcd u = sample_cue(static_cast<std::size_t>(d), rng);
      a.push_back(std::norm(u(0, 0)));
      b_re.push_back((u(0, 0) * std::conj(u(0, 1))).real());
      c.push_back(std::norm(u(0, 0)) * std::norm(u(0, 0)));
      e.push_back(std::norm(u(0, 0)) * std::norm(u(1, 1)));
      f.push_back(std::norm(u(0, 0)) * std::norm(u(0, 1)));
    }
    const double dd = d;
    const auto check = [](const std::vector<double>& xs, double expect) {
      const auto r = oracle::mean_se(xs);
      EXPECT_LT(std::abs(r.mean - expect), 4.0 * r.se + 1e-12) << r.mean << " vs " << expect;
    };
    check(a, 1.0 / dd);
    check(b_re, 0.0);
    check(c, 2.0 / (dd * (dd + 1.0)));
    check(e, 1.0 / (dd * dd - 1.0));
    check(f, 1.0 / (dd * (dd + 1.0)));
  }
}

}  // namespace
}  // namespace qdesign

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
#include <queue>

#include <gtest/gtest.h>

#include "qdesign/models.hpp"
#include "unit/oracles.hpp"

namespace qdesign {
namespace {

QuenchModel ising(int L, SpinAxis axis, double omega, double alpha = 6.0) {
  IsingParams p;
  p.axis = axis;
  p.omega = omega;
  p.alpha = alpha;
  p.J = 1.3;
  return {Lattice::chain(L), p};
}

QuenchModel fermi(int lx, int ly, double U = 0.7) {
  FermiHubbardParams p;
  p.t = 0.9;
  p.U = U;
  return {Lattice::rectangle(lx, ly), p};
}

QuenchModel bose(int L, int N, double U = 1.7) {
  BoseHubbardParams p;
  p.J = 0.8;
  p.U = U;
  p.particles = N;
  return {Lattice::chain(L), p};
}

void expect_matches_oracle(const QuenchModel& m) {
  const Eigen::MatrixXd full = oracle::full_hamiltonian(m);
  for (const Sector& s : enumerate_sectors(m)) {
    const HermitianOperator h = build_static(m, s);
    EXPECT_EQ(h.label, s.label());
    const Eigen::MatrixXd ref = oracle::restrict(full, m, s);
    EXPECT_LT((h.matrix - ref).cwiseAbs().maxCoeff(), 1e-13) << "sector size " << s.dim();
  }
}

// The tensor-product construction must be block diagonal in the sector basis,
// and the sector builders must reproduce its blocks entry by entry.
TEST(Models, IsingMatchesKroneckerOracle) {
  for (int L = 1; L <= 5; ++L) {
    expect_matches_oracle(ising(L, SpinAxis::kZ, 0.6));
    expect_matches_oracle(ising(L, SpinAxis::kX, 0.6, 1.5));
    expect_matches_oracle(ising(L, SpinAxis::kZ, 0.0));
    expect_matches_oracle(ising(L, SpinAxis::kX, 0.0));
  }
}

TEST(Models, FermiHubbardMatchesJordanWignerOracle) {
  expect_matches_oracle(fermi(1, 1));
  expect_matches_oracle(fermi(2, 1));
  expect_matches_oracle(fermi(3, 1));
  expect_matches_oracle(fermi(2, 2));
}

TEST(Models, BoseHubbardMatchesTruncatedOracle) {
  for (int L = 1; L <= 4; ++L) {
    for (int N = 0; N <= 3; ++N) expect_matches_oracle(bose(L, N));
  }
}

TEST(Models, NoCrossSectorElements) {
  // The oracle's full matrix has no elements between different sectors.
  for (const QuenchModel& m : {fermi(2, 2), bose(3, 3), ising(4, SpinAxis::kX, 0.0)}) {
    const Eigen::MatrixXd full = oracle::full_hamiltonian(m);
    const auto configs = oracle::all_configs(m);
    for (const auto& a : configs) {
      for (const auto& b : configs) {
        if (sector_label_of(m, a) == sector_label_of(m, b)) continue;
        if (m.kind() == ModelKind::kBoseHubbard) continue;  // truncated space holds other N too
        EXPECT_EQ(full(oracle::full_index(m, a), oracle::full_index(m, b)), 0.0);
      }
    }
  }
}

TEST(Models, SpecExamples) {
  {
    const QuenchModel m = bose(2, 2);
    const Sector s = make_sector(m, {2});
    const auto& p = std::get<BoseHubbardParams>(m.params);
    EXPECT_DOUBLE_EQ(build_static(m, s).matrix(0, 0), p.U);
  }
  {
    IsingParams p;
    p.J = 1.0;
    p.omega = 0.0;
    const QuenchModel m{Lattice::chain(2), p};
    const auto sectors = enumerate_sectors(m);
    // Parity sectors: even {uu, dd}, odd {ud, du}.
    const Eigen::MatrixXd even = build_static(m, sectors[0]).matrix;
    const Eigen::MatrixXd odd = build_static(m, sectors[1]).matrix;
    EXPECT_EQ(sectors[0].config(0).occupation, (std::vector<std::uint8_t>{1, 1}));
    EXPECT_DOUBLE_EQ(even(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(even(1, 1), 1.0);
    EXPECT_DOUBLE_EQ(odd(0, 0), -1.0);
    EXPECT_DOUBLE_EQ(odd(1, 1), -1.0);
  }
  {
    const QuenchModel m = fermi(2, 1);
    const Sector s = make_sector(m, {1, 1});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(build_static(m, s).matrix);
    EXPECT_NEAR(es.eigenvalues()[0], -0.9, 1e-14);
    EXPECT_NEAR(es.eigenvalues()[1], 0.9, 1e-14);
  }
}

TEST(Models, QuenchExamples) {
  {
    IsingParams p;
    p.omega = 0.0;
    const QuenchModel m{Lattice::chain(1), p};
    const auto sectors = enumerate_sectors(m);
    // L = 1 with omega = 0: parity sectors {down} (0) and {up} (1).
    DisorderPattern pat{{0.7}, 1};
    EXPECT_DOUBLE_EQ(build_quench(m, sectors[1], pat).matrix(0, 0), 0.7);
    EXPECT_DOUBLE_EQ(build_quench(m, sectors[0], pat).matrix(0, 0), -0.7);
  }
  {
    const QuenchModel m = bose(2, 2);
    const Sector s = make_sector(m, {2});
    const DisorderPattern pat{{1.0, -1.0}, 1};
    const Eigen::MatrixXd d = build_disorder(m, s, pat).matrix;
    EXPECT_DOUBLE_EQ(d(0, 0), 2.0);
    EXPECT_DOUBLE_EQ(d(1, 1), 0.0);
    EXPECT_DOUBLE_EQ(d(2, 2), -2.0);
    EXPECT_TRUE((build_quench(m, s, DisorderPattern{{0.0, 0.0}, 1}).matrix.array() ==
                 build_static(m, s).matrix.array()).all());
  }
}

TEST(Models, NextNearestCouplingRatio) {
  IsingParams p;
  p.alpha = 6.0;
  EXPECT_EQ(ising_coupling(p, 2) / ising_coupling(p, 1), 1.0 / 64.0);
  p.alpha = 0.0;
  EXPECT_THROW(ising_coupling(p, 1), std::invalid_argument);
}

TEST(Models, RejectsMismatchedSector) {
  const QuenchModel a = fermi(2, 1);
  const QuenchModel b = fermi(3, 1);
  EXPECT_THROW(build_static(a, make_sector(b, {1, 1})), std::invalid_argument);
  IsingParams bad;
  bad.alpha = -1.0;
  const QuenchModel m{Lattice::chain(2), bad};
  EXPECT_THROW(build_static(m, Sector({}, {BasisConfig{{1, 1}}})), std::invalid_argument);
  EXPECT_THROW(build_disorder(a, make_sector(a, {1, 1}), DisorderPattern{{1.0}, 1}), std::invalid_argument);
}

TEST(Models, HermitianAndFermionSigns) {
  const QuenchModel m = fermi(2, 2, 0.0);
  for (const Sector& s : enumerate_sectors(m)) {
    const Eigen::MatrixXd h = build_static(m, s).matrix;
    EXPECT_EQ((h - h.transpose()).cwiseAbs().maxCoeff(), 0.0);
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
      for (Eigen::Index j = 0; j < h.cols(); ++j) {
        if (i != j && h(i, j) != 0.0) {
          EXPECT_DOUBLE_EQ(std::abs(h(i, j)), 0.9);
        }
      }
    }
  }
}

TEST(Models, HoppingGraphConnected) {
  const QuenchModel m = fermi(2, 2);
  for (const Sector& s : enumerate_sectors(m)) {
    const int n = s.label()[0];
    if (n == 0 || n == 8) continue;
    const Eigen::MatrixXd h = build_static(m, s).matrix;
    std::vector<bool> seen(s.dim(), false);
    std::queue<Eigen::Index> q;
    q.push(0);
    seen[0] = true;
    std::size_t count = 1;
    while (!q.empty()) {
      const Eigen::Index a = q.front();
      q.pop();
      for (Eigen::Index b = 0; b < h.rows(); ++b) {
        if (b != a && h(a, b) != 0.0 && !seen[b]) {
          seen[b] = true;
          ++count;
          q.push(b);
        }
      }
    }
    EXPECT_EQ(count, s.dim()) << "sector N=" << n << " Sz=" << s.label()[1];
  }
}

TEST(Models, DisorderSampling) {
  IsingParams p;
  p.delta = 0.0;
  QuenchModel m{Lattice::chain(5), p};
  SeededRng zero(3);
  for (double v : sample_disorder(m, zero).values) EXPECT_EQ(v, 0.0);

  std::get<IsingParams>(m.params).delta = 1.0;
  SeededRng a(11), b(11);
  EXPECT_EQ(sample_disorder(m, a).values, sample_disorder(m, b).values);

  QuenchModel big{Lattice::chain(20), IsingParams{}};
  SeededRng rng(5);
  double sum = 0.0, sq = 0.0;
  const int draws = 5000;  // 10^5 values
  for (int k = 0; k < draws; ++k) {
    for (double v : sample_disorder(big, rng).values) {
      sum += v;
      sq += v * v;
    }
  }
  const double n = 20.0 * draws;
  const double mean = sum / n;
  EXPECT_LT(std::abs(mean), 0.01);
  EXPECT_LT(std::abs(std::sqrt(sq / n - mean * mean) - 1.0), 0.01);
}

TEST(Models, FermiHubbardSpinRatioExact) {
  const QuenchModel m = fermi(2, 3);
  SeededRng rng(9);
  const DisorderPattern pat = sample_disorder(m, rng);
  ASSERT_EQ(pat.values.size(), 12u);
  for (int i = 0; i < 6; ++i) EXPECT_EQ(pat.values[2 * i], 2.0 * pat.values[2 * i + 1]);
}

}  // namespace
}  // namespace qdesign

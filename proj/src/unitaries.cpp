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

#include "qdesign/unitaries.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <memory>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace qdesign {

using cd = std::complex<double>;

std::string_view schedule_mode_name(ScheduleMode mode) {
  switch (mode) {
    case ScheduleMode::kFresh:
      return "fresh";
    case ScheduleMode::kDigital:
      return "digital";
    case ScheduleMode::kSinglePatternRandomTimes:
      return "random_times";
  }
  return "unknown";
}

ScheduleMode parse_schedule_mode(std::string_view name) {
  if (name == "fresh") return ScheduleMode::kFresh;
  if (name == "digital") return ScheduleMode::kDigital;
  if (name == "random_times") return ScheduleMode::kSinglePatternRandomTimes;
  throw std::invalid_argument("unknown schedule mode '" + std::string(name) +
                              "' (expected fresh, digital or random_times)");
}

void QuenchSchedule::validate() const {
  if (eta < 1) throw std::invalid_argument("schedule needs eta >= 1");
  if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("quench time T must be > 0");
  if (mode == ScheduleMode::kSinglePatternRandomTimes && (!(t_max > 0.0) || !std::isfinite(t_max))) {
    throw std::invalid_argument("random-times schedule needs t_max > 0");
  }
}

double BlockUnitary::unitarity_defect() const {
  double worst = 0.0;
  for (const auto& u : blocks) {
    const auto n = u.rows();
    const Eigen::MatrixXcd e = u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n);
    if (e.size() > 0) worst = std::max(worst, e.cwiseAbs().maxCoeff());
  }
  return worst;
}

Propagator::Propagator(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.matrix);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigendecomposition did not converge", h.label);
  }
  energies_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

Eigen::MatrixXcd Propagator::at(double t) const {
  const auto n = energies_.size();
  Eigen::MatrixXcd scaled(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    scaled.col(k) = vectors_.col(k).cast<cd>() * std::polar(1.0, -energies_[k] * t);
  }
  return scaled * vectors_.transpose().cast<cd>();
}

Eigen::MatrixXcd Propagator::apply(double t, const Eigen::MatrixXcd& x) const {
  Eigen::MatrixXcd y = vectors_.transpose().cast<cd>() * x;
  for (Eigen::Index k = 0; k < energies_.size(); ++k) {
    y.row(k) *= std::polar(1.0, -energies_[k] * t);
  }
  return vectors_.cast<cd>() * y;
}

Eigen::MatrixXcd evolve(const HermitianOperator& h, double t) { return Propagator(h).at(t); }

std::vector<QuenchStep> draw_quench_sequence(const QuenchModel& model,
                                             const QuenchSchedule& schedule, SeededRng& rng) {
  schedule.validate();
  model.validate();
  std::vector<QuenchStep> steps(static_cast<std::size_t>(schedule.eta));
  switch (schedule.mode) {
    case ScheduleMode::kFresh:
      for (int j = 0; j < schedule.eta; ++j) {
        steps[j].disorder = sample_disorder(model, rng);
        steps[j].disorder->quench_index = j + 1;
        steps[j].duration = schedule.T;
      }
      break;
    case ScheduleMode::kDigital:
      for (int j = 0; j < schedule.eta; ++j) {
        const bool odd = (j + 1) % 2 == 1;
        steps[j].include_static = odd;
        if (!odd) {
          steps[j].disorder = sample_disorder(model, rng);
          steps[j].disorder->quench_index = j + 1;
        }
        steps[j].duration = schedule.T;
      }
      break;
    case ScheduleMode::kSinglePatternRandomTimes: {
      const DisorderPattern pattern = sample_disorder(model, rng);
      for (int j = 0; j < schedule.eta; ++j) {
        if ((j + 1) % 2 == 1) {
          steps[j].disorder = pattern;
          steps[j].disorder->quench_index = j + 1;
        }
        steps[j].duration = rng.uniform(0.0, schedule.t_max);
      }
      break;
    }
  }
  return steps;
}

Eigen::MatrixXcd sequence_unitary(const QuenchModel& model, const Sector& sector,
                                  std::span<const QuenchStep> steps) {
  const auto d = static_cast<Eigen::Index>(sector.dim());
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(d, d);
  std::unique_ptr<Propagator> static_prop;
  std::optional<HermitianOperator> static_h;
  // Random-times schedules reuse one pattern, so propagators are cached by pattern.
  std::map<std::vector<double>, Propagator> with_pattern;

  for (const QuenchStep& step : steps) {
    if (!step.include_static) {
      if (!step.disorder) continue;
      // Disorder alone is diagonal in the occupation basis.
      const HermitianOperator h = build_disorder(model, sector, *step.disorder);
      for (Eigen::Index a = 0; a < d; ++a) u.row(a) *= std::polar(1.0, -h.matrix(a, a) * step.duration);
      continue;
    }
    if (!static_h) static_h = build_static(model, sector);
    if (!step.disorder) {
      if (!static_prop) static_prop = std::make_unique<Propagator>(*static_h);
      u = static_prop->apply(step.duration, u);
      continue;
    }
    auto it = with_pattern.find(step.disorder->values);
    if (it == with_pattern.end()) {
      HermitianOperator h = *static_h;
      h.matrix += build_disorder(model, sector, *step.disorder).matrix;
      it = with_pattern.emplace(step.disorder->values, Propagator(h)).first;
    }
    u = it->second.apply(step.duration, u);
  }
  return u;
}

BlockUnitary sequence_block_unitary(const QuenchModel& model, std::span<const Sector> sectors,
                                    std::span<const QuenchStep> steps) {
  BlockUnitary out;
  out.labels.reserve(sectors.size());
  out.blocks.reserve(sectors.size());
  for (const Sector& s : sectors) {
    out.labels.push_back(s.label());
    out.blocks.push_back(sequence_unitary(model, s, steps));
  }
  return out;
}

BlockUnitary compose_quenches(const QuenchModel& model, std::span<const Sector> sectors,
                              const QuenchSchedule& schedule, SeededRng& rng) {
  const auto steps = draw_quench_sequence(model, schedule, rng);
  return sequence_block_unitary(model, sectors, steps);
}

BlockUnitary compose_quenches(const QuenchModel& model, const Sector& sector,
                              const QuenchSchedule& schedule, SeededRng& rng) {
  return compose_quenches(model, std::span<const Sector>(&sector, 1), schedule, rng);
}

Eigen::MatrixXcd sample_cue(std::size_t dim, SeededRng& rng) {
  if (dim < 1) throw std::invalid_argument("CUE dimension must be >= 1");
  const auto n = static_cast<Eigen::Index>(dim);
  const double s = std::sqrt(0.5);
  Eigen::MatrixXcd z(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) z(r, c) = cd(rng.normal(0.0, s), rng.normal(0.0, s));
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < n; ++k) {
    const cd rkk = r(k, k);
    const double a = std::abs(rkk);
    q.col(k) *= a > 0.0 ? rkk / a : cd(1.0, 0.0);
  }
  return q;
}

}  // namespace qdesign

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

#pragma once

// Independent reference constructions used as test oracles. They work in the
// full tensor-product space with explicit operator matrices and share no code
// with the library's sector builders.

#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "qdesign/hilbert.hpp"
#include "qdesign/model.hpp"

namespace oracle {

/// Full-space Hamiltonian built from Kronecker products of local operators.
/// Ising: 2^L, local basis (up, down). Fermi-Hubbard: 2^(2L) over Jordan-Wigner
/// modes 2*site + spin, local basis (empty, occupied). Bose-Hubbard: (N+1)^L.
/// Tensor factor 0 is the most significant digit of the index.
Eigen::MatrixXd full_hamiltonian(const qdesign::QuenchModel& model);

/// Index of a configuration in the tensor-product space of full_hamiltonian.
std::uint64_t full_index(const qdesign::QuenchModel& model, const qdesign::BasisConfig& config);

/// Rows/columns of `full` picked out by the sector's basis, in sector order.
Eigen::MatrixXd restrict(const Eigen::MatrixXd& full, const qdesign::QuenchModel& model,
                         const qdesign::Sector& sector);

/// Every configuration of the model's local space, by brute force.
std::vector<qdesign::BasisConfig> all_configs(const qdesign::QuenchModel& model);

/// Number of permutations of S_n with each cycle type (multiplicity vector),
/// counted by walking all n! permutations.
std::map<std::vector<int>, std::int64_t> cycle_type_census(int n);

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};
MeanSe mean_se(const std::vector<double>& xs);

}  // namespace oracle

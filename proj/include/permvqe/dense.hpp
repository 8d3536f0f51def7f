// Copyright 2026 The permvqe Authors
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

#include <Eigen/Dense>
#include <optional>

#include "permvqe/pauli.hpp"
#include "permvqe/simulator.hpp"

namespace permvqe {

inline constexpr int kDefaultDenseCap = 14;

/// 2^n x 2^n matrix of Σ c (⊗ σ). Throws LimitError when n > cap.
Eigen::MatrixXcd to_dense(const PauliSum& h, int cap = kDefaultDenseCap);

/// Ascending eigenvalues of to_dense(h).
Eigen::VectorXd dense_spectrum(const PauliSum& h, int cap = kDefaultDenseCap);

struct GroundState {
  double energy = 0.0;
  StateVector state;
  /// E_1 - E_0 over the searched space (+inf for a one-dimensional space).
  double gap = 0.0;
  bool degenerate = false;
};

struct GroundStateOptions {
  int cap = kDefaultDenseCap;
  /// Widest register diagonalized densely; wider ones use Lanczos.
  int dense_limit = 10;
  /// Restrict to computational basis states of this Hamming weight (the
  /// particle-number sector under Jordan-Wigner).
  std::optional<int> hamming_weight;
  double degeneracy_gap = 1e-10;
};

/// Lowest eigenpair. The Hamiltonian is real-coefficient by construction.
GroundState ground_state(const PauliSum& h, const GroundStateOptions& options = {});

}  // namespace permvqe

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
#include <string>

#include "permvqe/pauli.hpp"
#include "permvqe/simulator.hpp"

namespace permvqe {

inline constexpr double kEntropyCutoff = 1e-12;
inline constexpr double kEntangledThreshold = 1e-3;

enum class LogBase { two, natural };

/// -Σ λ log λ over eigenvalues above the cutoff. Throws std::invalid_argument
/// when the trace differs from one by more than 1e-8.
double entropy(const DensityMatrix& rho, LogBase base = LogBase::two);

/// Pairwise mutual information I_ij = ½(S_i + S_j - S_ij), zero diagonal.
class EntanglementMap {
 public:
  EntanglementMap() = default;
  /// Validates squareness, symmetry and a zero diagonal.
  explicit EntanglementMap(Eigen::MatrixXd values, LogBase base = LogBase::two);
  static EntanglementMap zeros(int n);

  int n() const noexcept { return static_cast<int>(values_.rows()); }
  double operator()(int i, int j) const { return values_(i, j); }
  const Eigen::MatrixXd& values() const noexcept { return values_; }
  LogBase log_base() const noexcept { return base_; }

  /// Qubits with max_j I_ij above `threshold`.
  int entangled_qubit_count(double threshold = kEntangledThreshold) const;

  std::string to_json() const;
  std::string to_csv() const;

 private:
  Eigen::MatrixXd values_;
  LogBase base_ = LogBase::two;
};

EntanglementMap mutual_information_map(const StateVector& state, LogBase base = LogBase::two);

/// I'(p(i), p(j)) = I(i, j).
EntanglementMap permute_map(const EntanglementMap& map, const Permutation& p);

/// d_ij on the device graph; only the linear chain d_ij = |i - j| ships.
struct ConnectivityDistance {
  enum class Kind { linear };
  Kind kind = Kind::linear;
  double beta = 2.0;

  double distance(int i, int j) const { return static_cast<double>(i > j ? i - j : j - i); }
  double weight(int i, int j) const;
  void validate() const;
};

/// Σ_{i<j} d_ij^β I_ij.
double cost(const EntanglementMap& map, const ConnectivityDistance& conn);
/// Cost of the map after relabeling by p.
double permuted_cost(const EntanglementMap& map, const ConnectivityDistance& conn, const Permutation& p);

}  // namespace permvqe

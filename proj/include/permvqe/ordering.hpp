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

#include "permvqe/entanglement.hpp"
#include "permvqe/pauli.hpp"

namespace permvqe {

inline constexpr int kDefaultBruteForceCap = 10;

enum class OrderingMethod { brute_force, fiedler, automatic };

std::string to_string(OrderingMethod m);
OrderingMethod parse_ordering_method(const std::string& s);

/// `permutation(i)` is the new position of qubit i.
struct OrderingResult {
  Permutation permutation;
  double cost_before = 0.0;
  double cost_after = 0.0;
  OrderingMethod method = OrderingMethod::brute_force;
  /// Fiedler only: the second Laplacian eigenvalue was (near) repeated, or
  /// the correlation graph split into several components.
  bool degenerate = false;

  std::string to_json() const;
};

/// Exhaustive minimum over all n! relabelings. Ties within a relative 1e-12
/// go to the lexicographically smallest map array. Work is split across
/// `threads` workers by leading index.
OrderingResult brute_force_order(const EntanglementMap& map, const ConnectivityDistance& conn,
                                 int cap = kDefaultBruteForceCap, int threads = 1);

/// L = D - I with D the diagonal of row sums.
Eigen::MatrixXd graph_laplacian(const EntanglementMap& map);

/// Spectral ordering: sort qubits by the Fiedler vector entries (ascending
/// and descending both tried, lower cost kept, ties by original index).
/// Disconnected correlation graphs are ordered per component and the
/// components concatenated by descending total weight.
OrderingResult fiedler_order(const EntanglementMap& map, const ConnectivityDistance& conn);

/// Brute force up to `brute_force_cap` qubits, Fiedler beyond.
OrderingResult find_ordering(const EntanglementMap& map, const ConnectivityDistance& conn,
                             OrderingMethod method = OrderingMethod::automatic,
                             int brute_force_cap = kDefaultBruteForceCap, int threads = 1);

}  // namespace permvqe

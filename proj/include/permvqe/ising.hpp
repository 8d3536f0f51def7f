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

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "permvqe/ordering.hpp"
#include "permvqe/pauli.hpp"
#include "permvqe/vqe.hpp"

namespace permvqe {

inline constexpr int kIsingQubits = 6;
inline constexpr int kIsingModelCount = 5;

/// Six-qubit benchmark models sum_i Z_i + (long-range X couplings):
///   1: X0 X5            2: X0 X5 + X1 X4      3: X0 X2 X4
///   4: X0 X5 + X0 X4    5: 2 X0 X1 X4 X5
/// `index` is 1-based.
PauliSum ising_model(int index);

/// Human-readable coupling list of model `index`.
std::string ising_model_label(int index);

/// Published minimal depths (unpermuted, permuted) per model.
inline constexpr std::array<std::pair<int, int>, kIsingModelCount> kIsingReferenceDepths{
    {{7, 1}, {8, 1}, {4, 2}, {8, 3}, {5, 5}}};

struct IsingBenchRow {
  int model = 0;
  std::string label;
  /// Brute-force relabeling from the exact ground state's map.
  OrderingResult ordering;
  DepthScan unpermuted;
  DepthScan permuted;
};

/// Minimum depth to the exact energy for each model, unpermuted and after
/// the exact-map relabeling. `base.ansatz` supplies family and entangler;
/// width and depth are overwritten.
std::vector<IsingBenchRow> ising_bench(const VqeConfig& base, int max_depth, std::span<const int> models);

std::string ising_bench_json(const std::vector<IsingBenchRow>& rows);
std::string ising_bench_csv(const std::vector<IsingBenchRow>& rows);

}  // namespace permvqe

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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permvqe/ansatz.hpp"
#include "permvqe/entanglement.hpp"
#include "permvqe/optimizer.hpp"
#include "permvqe/ordering.hpp"
#include "permvqe/pauli.hpp"
#include "permvqe/simulator.hpp"

namespace permvqe {

inline constexpr double kKcalPerHartree = 627.5094740631;

struct VqeConfig {
  AnsatzSpec ansatz;
  int max_evals = 10000;
  int trials = 1;
  std::uint64_t seed = 0;
  /// "Exact solution reached" tolerance (Hamiltonian units).
  double energy_tol = 1e-6;
  OptimizerKind optimizer = OptimizerKind::cobyla;
  double rho_begin = 1.0;
  double rho_end = 1e-8;
  int threads = 1;
  /// Trial 0 starts here instead of at a random point.
  std::optional<ParameterVector> warm_start;
  /// Trials stop once the energy drops to this value.
  std::optional<double> target_energy;
  /// When set, the optimized parameters are re-evaluated with shot noise.
  std::optional<NoiseModel> noise;
  /// Optimize against the noisy estimator itself (slow) instead of only
  /// evaluating the final point.
  bool noisy_objective = false;

  void validate() const;
};

struct VqeResult {
  double energy = 0.0;
  ParameterVector params;
  int evals_used = 0;
  int trial_index = 0;
  std::vector<double> trial_energies;
  std::optional<NoisyEstimate> noisy;

  std::string to_json() const;
};

/// State prepared from |0...0> by the ansatz.
StateVector prepare_state(const AnsatzSpec& spec, std::span<const double> params);

/// Best of `trials` local optimizations from random (or warm) starts.
/// Deterministic for a fixed config; trials run on up to cfg.threads
/// workers and the minimum is taken with a trial-index tie-break.
VqeResult minimize(const PauliSum& h, const VqeConfig& cfg);

struct DepthScan {
  std::optional<int> depth;
  double exact_energy = 0.0;
  /// Best-of-trials E_VQE - E_exact for L = 1, 2, ... as far as scanned.
  std::vector<double> errors;
};

/// Smallest L in [1, max_depth] whose best-of-trials energy is within
/// cfg.energy_tol of the ground energy (dense oracle).
DepthScan min_depth_to_exact(const PauliSum& h, const VqeConfig& cfg, int max_depth);

struct PermVqeOptions {
  int max_outer = 3;
  double min_relative_improvement = 0.01;
  OrderingMethod method = OrderingMethod::automatic;
  int brute_force_cap = kDefaultBruteForceCap;
  ConnectivityDistance conn;
};

struct PermVqeIteration {
  /// Labels of the Hamiltonian optimized in this iteration, relative to h0.
  Permutation permutation;
  EntanglementMap map;
  double cost = 0.0;
  OrderingResult proposal;
  VqeResult vqe;
};

struct PermVqeResult {
  std::vector<PermVqeIteration> iterations;
  std::size_t best_iteration = 0;
  PauliSum final_hamiltonian;
  /// Ansatz of the best iteration (HF bits relabeled for particle-preserving).
  AnsatzSpec final_ansatz;
  Permutation final_permutation;
  VqeResult final;

  std::string to_json() const;
};

/// VQE -> entanglement map -> reordering -> VQE ..., at most max_outer VQE
/// runs. Stops on an identity proposal or a relative cost improvement below
/// the threshold. Reports the best energy seen.
PermVqeResult permvqe(const PauliSum& h0, const VqeConfig& cfg, const PermVqeOptions& options = {});

/// Moves bit q of `bits` to position p(q).
Bitstring permute_bits(const Bitstring& bits, const Permutation& p);

enum class CurveVariant { unpermuted, permuted_exact, permvqe };
std::string to_string(CurveVariant v);
CurveVariant parse_curve_variant(const std::string& s);

struct CurveRow {
  int depth = 0;
  CurveVariant variant = CurveVariant::unpermuted;
  double energy = 0.0;
  double delta_e_kcal = 0.0;
  /// Standard error of the mean over noisy repetitions (0 when noiseless).
  double stderr_kcal = 0.0;
  double delta_e_pc_kcal = 0.0;
  std::vector<int> permutation;
  /// Full loop record for the permvqe variant.
  std::optional<PermVqeResult> loop;
};

struct CurveOptions {
  std::vector<int> depths;
  CurveVariant variant = CurveVariant::unpermuted;
  double e_exact = 0.0;
  double e_hf = 0.0;
  /// Exact ground state whose map drives the permuted_exact variant.
  std::optional<StateVector> exact_state;
  PermVqeOptions permvqe;
  int noisy_repetitions = 10;
};

/// ΔE = E_VQE - E_exact against depth for one variant. `cfg.ansatz.depth`
/// is overridden per row; with cfg.noise set, each row reports the mean and
/// standard error over `noisy_repetitions` noisy evaluations.
std::vector<CurveRow> delta_e_curve(const PauliSum& h, const VqeConfig& cfg, const CurveOptions& options);

std::string curve_to_csv(const std::vector<CurveRow>& rows);

}  // namespace permvqe

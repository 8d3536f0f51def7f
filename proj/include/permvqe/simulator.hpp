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
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "permvqe/pauli.hpp"

namespace permvqe {

using cdouble = std::complex<double>;
using DensityMatrix = Eigen::MatrixXcd;

inline constexpr int kMaxSimulatorQubits = 16;

enum class GateKind : std::uint8_t { ry, rz, x, cnot, cz, givens };

/// One gate of a circuit. Single-qubit gates use `q0`; cnot is
/// control `q0`, target `q1`; givens acts on the ordered pair (q0, q1).
struct Gate {
  GateKind kind = GateKind::x;
  int q0 = 0;
  int q1 = -1;
  double theta = 0.0;
  double phi = 0.0;

  static Gate ry(int q, double theta) { return {GateKind::ry, q, -1, theta, 0.0}; }
  static Gate rz(int q, double theta) { return {GateKind::rz, q, -1, theta, 0.0}; }
  static Gate x(int q) { return {GateKind::x, q, -1, 0.0, 0.0}; }
  static Gate cnot(int control, int target) { return {GateKind::cnot, control, target, 0.0, 0.0}; }
  static Gate cz(int a, int b) { return {GateKind::cz, a, b, 0.0, 0.0}; }
  /// Identity on |00>,|11>; on (|01>,|10>) the block
  /// [[cos t, e^{i p} sin t], [e^{-i p} sin t, -cos t]].
  static Gate givens(int a, int b, double theta, double phi) {
    return {GateKind::givens, a, b, theta, phi};
  }

  bool two_qubit() const noexcept {
    return kind == GateKind::cnot || kind == GateKind::cz || kind == GateKind::givens;
  }
  friend bool operator==(const Gate&, const Gate&) = default;
};

std::string to_string(const Gate& g);

/// Dense amplitudes over 2^n basis states; qubit q is bit q of the index.
class StateVector {
 public:
  StateVector() = default;
  /// |0...0>.
  explicit StateVector(int n_qubits);
  /// Validates length 2^n and unit norm within 1e-10.
  StateVector(int n_qubits, std::vector<cdouble> amplitudes);

  static StateVector basis_state(int n_qubits, std::uint64_t index);
  /// bits[q] != 0 sets qubit q.
  static StateVector from_bits(std::span<const std::uint8_t> bits);

  int n_qubits() const noexcept { return n_qubits_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const cdouble> amplitudes() const noexcept { return amps_; }
  cdouble operator[](std::size_t i) const { return amps_[i]; }
  double norm() const;

  void apply(const Gate& g);
  void apply(std::span<const Gate> gates);
  /// Multiplies by the single-qubit Pauli `letter` on `q`.
  void apply_pauli(int q, PauliLetter letter);

 private:
  void check_qubit(int q) const;

  int n_qubits_ = 0;
  std::vector<cdouble> amps_;
};

StateVector apply_circuit(StateVector state, std::span<const Gate> gates);

/// Relabels qubits: the amplitude of basis state b moves to the basis state
/// whose bit p(q) equals bit q of b.
StateVector permute_state(const StateVector& state, const Permutation& p);

/// <psi|h|psi>, real for real-coefficient sums.
double expectation(const StateVector& state, const PauliSum& h);
/// <psi|P|psi> for one unit-weight word (coefficient ignored).
double word_expectation(const StateVector& state, const PauliTerm& word);

/// Precomputed diagonal factors per X-mask so that repeated expectation
/// values cost one pass per distinct X pattern. Used in the VQE inner loop.
class CompiledHamiltonian {
 public:
  explicit CompiledHamiltonian(const PauliSum& h);

  int n_qubits() const noexcept { return n_qubits_; }
  double expectation(std::span<const cdouble> psi) const;
  double expectation(const StateVector& psi) const { return expectation(psi.amplitudes()); }
  /// out = H psi.
  void apply(std::span<const cdouble> psi, std::span<cdouble> out) const;

 private:
  struct Group {
    std::uint64_t x = 0;
    std::vector<cdouble> diag;  // coefficient-weighted phase per basis index
  };
  int n_qubits_ = 0;
  std::vector<double> constant_diag_;  // X-free part, always real
  std::vector<Group> groups_;
};

/// Partial trace onto one or two qubits. For two qubits {a, b} the basis
/// index is bit(a) + 2 * bit(b).
DensityMatrix reduced_density_matrix(const StateVector& state, std::span<const int> qubits);

/// Symmetric single-qubit Pauli error after every gate: each touched qubit
/// independently receives X, Y or Z (uniformly) with probability p1 after
/// one-qubit gates and p2 after two-qubit gates.
struct NoiseModel {
  double p1 = 0.0;
  double p2 = 0.0;
  int shots = 10000;
  std::uint64_t seed = 0;

  void validate() const;
};

struct NoisyEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

/// Shot-based estimate of <h> for the state prepared from |0...0> by
/// `state_prep`. For each non-identity word, `shots` independent
/// trajectories are drawn, each contributing one +-1 measurement outcome of
/// the word. The standard error combines the per-word binomial variances.
NoisyEstimate noisy_expectation(int n_qubits, std::span<const Gate> state_prep, const PauliSum& h,
                                const NoiseModel& noise);

/// Operator measurements needed for full pairwise two-qubit tomography.
constexpr std::int64_t tomography_measurement_count(std::int64_t n) { return 15 * n * (n - 1) / 2; }

}  // namespace permvqe

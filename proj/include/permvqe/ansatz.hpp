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

#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "permvqe/fermion.hpp"
#include "permvqe/simulator.hpp"

namespace permvqe {

enum class AnsatzFamily { ryrz, ry, particle_preserving };
/// Two-qubit gate of the ryrz / ry ladders.
enum class Entangler { cnot, cz };

std::string to_string(AnsatzFamily f);
AnsatzFamily parse_ansatz_family(const std::string& s);
std::string to_string(Entangler e);
Entangler parse_entangler(const std::string& s);

/// Layered hardware-efficient or particle-preserving circuit description.
///
/// ryrz: `depth` blocks of (Ry, Rz on every qubit; ladder i -> i+1 for
/// i = 0..n-2) followed by a final Ry, Rz layer. ry: the same without Rz.
/// The ladder gate is CNOT by default; CZ gives the commuting variant in
/// which correlations spread by one site per block.
/// particle_preserving: X on the `hf_bits` qubits, then `depth` layers of
/// givens entanglers on even pairs (0,1),(2,3),... then odd pairs
/// (1,2),(3,4),..., optionally pruned against the HF occupations.
struct AnsatzSpec {
  AnsatzFamily family = AnsatzFamily::ryrz;
  int n_qubits = 1;
  int depth = 1;
  std::optional<Bitstring> hf_bits;
  bool prune = false;
  Entangler entangler = Entangler::cnot;

  void validate() const;
};

using ParameterVector = std::vector<double>;

/// Entangler pairs of one brick sublayer.
using EntanglerLayer = std::vector<std::pair<int, int>>;

/// 2 * depth sublayers alternating even and odd pairs.
std::vector<EntanglerLayer> brickwork_layers(int n_qubits, int depth);

struct PrunedLayout {
  std::vector<EntanglerLayer> layers;
  /// Full (even + odd) layers that retain at least one entangler.
  int effective_depth = 0;
};

/// Forward pass over definite HF occupations: an entangler whose inputs are
/// both definite and equal acts as identity and is removed; a retained
/// entangler makes both of its qubits indefinite.
PrunedLayout prune_ineffective(const std::vector<EntanglerLayer>& layers, const Bitstring& hf_bits);

int parameter_count(const AnsatzSpec& spec);

/// Gate list for `params`; throws std::invalid_argument on a length mismatch.
std::vector<Gate> build(const AnsatzSpec& spec, std::span<const double> params);

/// Entangler layout actually emitted by `build` (pruned when requested).
std::vector<EntanglerLayer> entangler_layout(const AnsatzSpec& spec);

/// Uniform draws from [-pi, pi].
ParameterVector random_parameters(const AnsatzSpec& spec, std::mt19937_64& rng);

/// Moves the per-qubit angles of each rotation layer from qubit q to p(q).
/// Entangler angles of the particle-preserving family do not follow a
/// relabeling, so that family yields an empty vector (no warm start).
ParameterVector permute_parameters(const AnsatzSpec& spec, std::span<const double> params, const Permutation& p);

}  // namespace permvqe

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


#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "permvqe/ansatz.hpp"
#include "permvqe/error.hpp"

using namespace permvqe;

namespace {

AnsatzSpec pp_spec(int n, int depth, Bitstring hf, bool prune) {
  AnsatzSpec s;
  s.family = AnsatzFamily::particle_preserving;
  s.n_qubits = n;
  s.depth = depth;
  s.hf_bits = std::move(hf);
  s.prune = prune;
  return s;
}

std::vector<int> entangler_count_per_block(const std::vector<Gate>& gates, int n) {
  // A rotation layer is followed by n-1 two-qubit gates.
  std::vector<int> runs;
  int run = 0;
  for (const auto& g : gates) {
    if (g.two_qubit()) {
      ++run;
    } else if (run) {
      runs.push_back(run);
      run = 0;
    }
  }
  if (run) runs.push_back(run);
  for (int r : runs) EXPECT_EQ(r, n - 1);
  return runs;
}

}  // namespace

TEST(Ansatz, RyRzStructure) {
  AnsatzSpec s;
  s.family = AnsatzFamily::ryrz;
  s.n_qubits = 6;
  s.depth = 2;
  EXPECT_EQ(parameter_count(s), 36);
  std::vector<double> p(36, 0.1);
  auto gates = build(s, p);
  EXPECT_EQ(gates.size(), 36u + 2u * 5u);
  EXPECT_EQ(entangler_count_per_block(gates, 6).size(), 2u);
  // ladder runs i -> i+1
  int i = 0;
  for (const auto& g : gates) {
    if (g.kind == GateKind::cnot) {
      EXPECT_EQ(g.q0, i % 5);
      EXPECT_EQ(g.q1, i % 5 + 1);
      ++i;
    }
  }
  // final layer is rotations only
  EXPECT_EQ(gates.back().kind, GateKind::rz);
  EXPECT_EQ(gates[gates.size() - 2].kind, GateKind::ry);
}

TEST(Ansatz, CzEntanglerOption) {
  AnsatzSpec s;
  s.n_qubits = 4;
  s.depth = 1;
  s.entangler = Entangler::cz;
  auto gates = build(s, std::vector<double>(static_cast<std::size_t>(parameter_count(s)), 0.0));
  EXPECT_EQ(std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return g.kind == GateKind::cz; }), 3);
  EXPECT_EQ(parse_entangler("cx"), Entangler::cnot);
  EXPECT_EQ(parse_entangler("cz"), Entangler::cz);
  EXPECT_THROW(parse_entangler("swap"), std::invalid_argument);
}

TEST(Ansatz, ParameterCounts) {
  AnsatzSpec ry;
  ry.family = AnsatzFamily::ry;
  ry.n_qubits = 10;
  ry.depth = 7;
  EXPECT_EQ(parameter_count(ry), 80);
  AnsatzSpec ryrz;
  ryrz.n_qubits = 10;
  ryrz.depth = 0;
  EXPECT_EQ(parameter_count(ryrz), 20);
  // 6 qubits: 3 even + 2 odd entanglers per layer, 2 angles each
  EXPECT_EQ(parameter_count(pp_spec(6, 2, Bitstring{1, 1, 0, 0, 0, 0}, false)), 2 * 5 * 2);
}

TEST(Ansatz, RyZeroAnglesKeepVacuum) {
  AnsatzSpec s;
  s.family = AnsatzFamily::ry;
  s.n_qubits = 2;
  s.depth = 1;
  StateVector out = apply_circuit(StateVector(2), build(s, std::vector<double>(4, 0.0)));
  EXPECT_NEAR(std::abs(out[0]), 1.0, 1e-15);
}

TEST(Ansatz, BuildRejectsWrongLengthAndMissingHf) {
  AnsatzSpec s;
  s.n_qubits = 3;
  s.depth = 1;
  EXPECT_THROW(build(s, std::vector<double>(5)), std::invalid_argument);
  AnsatzSpec pp;
  pp.family = AnsatzFamily::particle_preserving;
  pp.n_qubits = 4;
  EXPECT_THROW(parameter_count(pp), std::invalid_argument);
  pp.hf_bits = Bitstring{1, 0, 0};
  EXPECT_THROW(parameter_count(pp), DimensionError);
}

TEST(Ansatz, BuildConsumesExactlyParameterCount) {
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> width(2, 8), depth(0, 4), fam(0, 2);
  for (int k = 0; k < 100; ++k) {
    AnsatzSpec s;
    s.family = static_cast<AnsatzFamily>(fam(rng));
    s.n_qubits = width(rng);
    s.depth = depth(rng);
    if (s.family == AnsatzFamily::particle_preserving) {
      s.depth = std::max(1, s.depth);
      Bitstring hf(static_cast<std::size_t>(s.n_qubits), 0);
      for (auto& b : hf) b = rng() & 1;
      s.hf_bits = hf;
      s.prune = rng() & 1;
    }
    const int count = parameter_count(s);
    auto params = random_parameters(s, rng);
    ASSERT_EQ(static_cast<int>(params.size()), count);
    auto gates = build(s, params);
    int consumed = 0;
    for (const auto& g : gates) {
      if (g.kind == GateKind::ry || g.kind == GateKind::rz) consumed += 1;
      if (g.kind == GateKind::givens) consumed += 2;
    }
    EXPECT_EQ(consumed, count);
    params.push_back(0.0);
    EXPECT_THROW(build(s, params), std::invalid_argument);
  }
}

TEST(Ansatz, RandomParametersInRange) {
  AnsatzSpec s;
  s.n_qubits = 5;
  s.depth = 3;
  std::mt19937_64 rng(1);
  for (double v : random_parameters(s, rng)) {
    EXPECT_GE(v, -std::numbers::pi);
    EXPECT_LE(v, std::numbers::pi);
  }
}

TEST(Pruning, GoldenLayoutFor110000) {
  PrunedLayout pl = prune_ineffective(brickwork_layers(6, 2), Bitstring{1, 1, 0, 0, 0, 0});
  const std::vector<EntanglerLayer> golden{
      {},                    // even, layer 1: (0,1)=11, (2,3)=00, (4,5)=00
      {{1, 2}},              // odd,  layer 1: (1,2)=10 kept, (3,4)=00
      {{0, 1}, {2, 3}},      // even, layer 2: (4,5) still 00
      {{1, 2}, {3, 4}},      // odd,  layer 2
  };
  EXPECT_EQ(pl.layers, golden);
  EXPECT_EQ(pl.effective_depth, 2);
}

TEST(Pruning, AllZerosRemovesEverything) {
  PrunedLayout pl = prune_ineffective(brickwork_layers(6, 3), Bitstring(6, 0));
  for (const auto& l : pl.layers) EXPECT_TRUE(l.empty());
  EXPECT_EQ(pl.effective_depth, 0);
  auto spec = pp_spec(6, 3, Bitstring(6, 0), true);
  EXPECT_EQ(parameter_count(spec), 0);
  EXPECT_TRUE(build(spec, {}).empty());
}

TEST(Pruning, AlternatingKeepsFirstLayer) {
  PrunedLayout pl = prune_ineffective(brickwork_layers(6, 1), Bitstring{1, 0, 1, 0, 1, 0});
  EXPECT_EQ(pl.layers[0], (EntanglerLayer{{0, 1}, {2, 3}, {4, 5}}));
}

TEST(Pruning, EqualPairEntanglerAbsent) {
  auto gates = build(pp_spec(4, 1, Bitstring{1, 1, 0, 1}, true),
                     std::vector<double>(static_cast<std::size_t>(parameter_count(pp_spec(4, 1, {1, 1, 0, 1}, true))), 0.3));
  for (const auto& g : gates) {
    if (g.kind == GateKind::givens) EXPECT_FALSE(g.q0 == 0 && g.q1 == 1);
  }
}

TEST(Pruning, PreservesHartreeFockState) {
  std::mt19937_64 rng(55);
  for (int k = 0; k < 40; ++k) {
    const int n = 3 + k % 6;
    Bitstring hf(static_cast<std::size_t>(n), 0);
    for (auto& b : hf) b = rng() & 1;
    const int depth = 1 + k % 3;
    auto full = pp_spec(n, depth, hf, false);
    auto pruned = pp_spec(n, depth, hf, true);
    auto pf = random_parameters(full, rng);
    // retained gates receive the angles they had in the unpruned circuit
    const auto all = brickwork_layers(n, depth);
    const auto kept = prune_ineffective(all, hf).layers;
    std::vector<double> pp;
    std::size_t idx = 0;
    for (std::size_t l = 0; l < all.size(); ++l) {
      for (auto pair : all[l]) {
        if (std::find(kept[l].begin(), kept[l].end(), pair) != kept[l].end()) {
          pp.push_back(pf[idx]);
          pp.push_back(pf[idx + 1]);
        }
        idx += 2;
      }
    }
    StateVector a = apply_circuit(StateVector(n), build(full, pf));
    StateVector b = apply_circuit(StateVector(n), build(pruned, pp));
    for (std::size_t i = 0; i < a.dimension(); ++i) ASSERT_LT(std::abs(a[i] - b[i]), 1e-12);
  }
}

TEST(ParticlePreserving, ConservesHammingWeight) {
  std::mt19937_64 rng(77);
  for (int k = 0; k < 50; ++k) {
    const int n = 2 + k % 7;
    Bitstring hf(static_cast<std::size_t>(n), 0);
    for (auto& b : hf) b = rng() & 1;
    const int w = static_cast<int>(std::count(hf.begin(), hf.end(), 1));
    auto spec = pp_spec(n, 1 + k % 3, hf, k % 2);
    StateVector s = apply_circuit(StateVector(n), build(spec, random_parameters(spec, rng)));
    for (std::size_t i = 0; i < s.dimension(); ++i) {
      if (std::popcount(i) != w) ASSERT_LT(std::abs(s[i]), 1e-12);
    }
  }
}

TEST(PermuteParameters, RelabeledCircuitGivesRelabeledState) {
  // Rotation angles follow the qubit; the CNOT ladder does not, so the
  // check is restricted to L = 0 where the circuit is a product.
  std::mt19937_64 rng(3);
  for (auto fam : {AnsatzFamily::ry, AnsatzFamily::ryrz}) {
    AnsatzSpec s;
    s.family = fam;
    s.n_qubits = 5;
    s.depth = 0;
    auto p = random_parameters(s, rng);
    Permutation perm({3, 0, 4, 1, 2});
    StateVector a = permute_state(apply_circuit(StateVector(5), build(s, p)), perm);
    StateVector b = apply_circuit(StateVector(5), build(s, permute_parameters(s, p, perm)));
    for (std::size_t i = 0; i < a.dimension(); ++i) EXPECT_LT(std::abs(a[i] - b[i]), 1e-12);
  }
}

TEST(PermuteParameters, LayoutAndParticlePreserving) {
  AnsatzSpec s;
  s.family = AnsatzFamily::ryrz;
  s.n_qubits = 3;
  s.depth = 1;
  std::vector<double> p{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  // layer-major, qubit, then (ry, rz)
  auto out = permute_parameters(s, p, Permutation({2, 0, 1}));
  EXPECT_EQ(out, (std::vector<double>{2, 3, 4, 5, 0, 1, 8, 9, 10, 11, 6, 7}));
  EXPECT_TRUE(permute_parameters(pp_spec(3, 1, {1, 0, 0}, false), std::vector<double>(4), Permutation::identity(3))
                  .empty());
}

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

#include "permvqe/ansatz.hpp"

#include <numbers>
#include <stdexcept>

#include "permvqe/error.hpp"

namespace permvqe {

std::string to_string(AnsatzFamily f) {
  switch (f) {
    case AnsatzFamily::ryrz: return "ryrz";
    case AnsatzFamily::ry: return "ry";
    case AnsatzFamily::particle_preserving: return "particle_preserving";
  }
  return "?";
}

AnsatzFamily parse_ansatz_family(const std::string& s) {
  if (s == "ryrz") return AnsatzFamily::ryrz;
  if (s == "ry") return AnsatzFamily::ry;
  if (s == "particle_preserving" || s == "pp") return AnsatzFamily::particle_preserving;
  throw std::invalid_argument("unknown ansatz family '" + s + "' (ryrz|ry|particle_preserving)");
}

std::string to_string(Entangler e) { return e == Entangler::cnot ? "cnot" : "cz"; }

Entangler parse_entangler(const std::string& s) {
  if (s == "cnot" || s == "cx") return Entangler::cnot;
  if (s == "cz") return Entangler::cz;
  throw std::invalid_argument("unknown entangler '" + s + "' (cnot|cz)");
}

void AnsatzSpec::validate() const {
  if (n_qubits <= 0 || n_qubits > kMaxSimulatorQubits) throw std::invalid_argument("ansatz width out of range");
  if (depth < 0) throw std::invalid_argument("ansatz depth must be nonnegative");
  if (family == AnsatzFamily::particle_preserving) {
    if (!hf_bits) throw std::invalid_argument("particle-preserving ansatz requires hf_bits");
    if (depth < 1) throw std::invalid_argument("particle-preserving ansatz requires depth >= 1");
  }
  if (hf_bits && static_cast<int>(hf_bits->size()) != n_qubits) {
    throw DimensionError("hf_bits length differs from the ansatz width");
  }
}

std::vector<EntanglerLayer> brickwork_layers(int n_qubits, int depth) {
  std::vector<EntanglerLayer> layers;
  for (int l = 0; l < depth; ++l) {
    for (int offset : {0, 1}) {
      EntanglerLayer sub;
      for (int a = offset; a + 1 < n_qubits; a += 2) sub.emplace_back(a, a + 1);
      layers.push_back(std::move(sub));
    }
  }
  return layers;
}

PrunedLayout prune_ineffective(const std::vector<EntanglerLayer>& layers, const Bitstring& hf_bits) {
  // 0 / 1 definite occupation, -1 indefinite.
  std::vector<int> occ(hf_bits.begin(), hf_bits.end());
  PrunedLayout out;
  bool full_layer_used = false;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    EntanglerLayer kept;
    for (auto [a, b] : layers[i]) {
      if (a < 0 || b < 0 || a >= static_cast<int>(occ.size()) || b >= static_cast<int>(occ.size())) {
        throw std::out_of_range("entangler qubit outside the HF register");
      }
      const int oa = occ[static_cast<std::size_t>(a)], ob = occ[static_cast<std::size_t>(b)];
      if (oa >= 0 && oa == ob) continue;
      occ[static_cast<std::size_t>(a)] = occ[static_cast<std::size_t>(b)] = -1;
      kept.emplace_back(a, b);
    }
    full_layer_used = full_layer_used || !kept.empty();
    out.layers.push_back(std::move(kept));
    if (i % 2 == 1 || i + 1 == layers.size()) {
      if (full_layer_used) ++out.effective_depth;
      full_layer_used = false;
    }
  }
  return out;
}

std::vector<EntanglerLayer> entangler_layout(const AnsatzSpec& spec) {
  spec.validate();
  if (spec.family != AnsatzFamily::particle_preserving) {
    std::vector<EntanglerLayer> ladders;
    for (int l = 0; l < spec.depth; ++l) {
      EntanglerLayer sub;
      for (int q = 0; q + 1 < spec.n_qubits; ++q) sub.emplace_back(q, q + 1);
      ladders.push_back(std::move(sub));
    }
    return ladders;
  }
  auto layers = brickwork_layers(spec.n_qubits, spec.depth);
  if (spec.prune) return prune_ineffective(layers, *spec.hf_bits).layers;
  return layers;
}

int parameter_count(const AnsatzSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case AnsatzFamily::ryrz: return 2 * spec.n_qubits * (spec.depth + 1);
    case AnsatzFamily::ry: return spec.n_qubits * (spec.depth + 1);
    case AnsatzFamily::particle_preserving: {
      int count = 0;
      for (const auto& sub : entangler_layout(spec)) count += 2 * static_cast<int>(sub.size());
      return count;
    }
  }
  return 0;
}

std::vector<Gate> build(const AnsatzSpec& spec, std::span<const double> params) {
  const int expected = parameter_count(spec);
  if (static_cast<int>(params.size()) != expected) {
    throw std::invalid_argument("ansatz expects " + std::to_string(expected) + " parameters, got " +
                                std::to_string(params.size()));
  }
  std::vector<Gate> gates;
  std::size_t k = 0;
  const int n = spec.n_qubits;
  if (spec.family == AnsatzFamily::particle_preserving) {
    for (int q = 0; q < n; ++q) {
      if ((*spec.hf_bits)[static_cast<std::size_t>(q)]) gates.push_back(Gate::x(q));
    }
    for (const auto& sub : entangler_layout(spec)) {
      for (auto [a, b] : sub) {
        gates.push_back(Gate::givens(a, b, params[k], params[k + 1]));
        k += 2;
      }
    }
    return gates;
  }
  const bool with_rz = spec.family == AnsatzFamily::ryrz;
  auto rotation_layer = [&]() {
    for (int q = 0; q < n; ++q) {
      gates.push_back(Gate::ry(q, params[k++]));
      if (with_rz) gates.push_back(Gate::rz(q, params[k++]));
    }
  };
  for (int l = 0; l < spec.depth; ++l) {
    rotation_layer();
    for (int q = 0; q + 1 < n; ++q) {
      gates.push_back(spec.entangler == Entangler::cnot ? Gate::cnot(q, q + 1) : Gate::cz(q, q + 1));
    }
  }
  rotation_layer();
  return gates;
}

ParameterVector random_parameters(const AnsatzSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  ParameterVector p(static_cast<std::size_t>(parameter_count(spec)));
  for (auto& v : p) v = angle(rng);
  return p;
}

ParameterVector permute_parameters(const AnsatzSpec& spec, std::span<const double> params, const Permutation& p) {
  if (spec.family == AnsatzFamily::particle_preserving) return {};
  if (static_cast<int>(params.size()) != parameter_count(spec)) {
    throw std::invalid_argument("parameter vector does not match the ansatz");
  }
  if (p.size() != spec.n_qubits) throw DimensionError("permutation width differs from the ansatz width");
  const std::size_t per_qubit = spec.family == AnsatzFamily::ryrz ? 2 : 1;
  const auto n = static_cast<std::size_t>(spec.n_qubits);
  ParameterVector out(params.size());
  for (std::size_t layer = 0; layer < static_cast<std::size_t>(spec.depth) + 1; ++layer) {
    for (std::size_t q = 0; q < n; ++q) {
      const std::size_t src = (layer * n + q) * per_qubit;
      const std::size_t dst = (layer * n + static_cast<std::size_t>(p(static_cast<int>(q)))) * per_qubit;
      for (std::size_t j = 0; j < per_qubit; ++j) out[dst + j] = params[src + j];
    }
  }
  return out;
}

}  // namespace permvqe

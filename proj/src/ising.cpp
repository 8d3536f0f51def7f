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

#include "permvqe/ising.hpp"

#include <charconv>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "permvqe/dense.hpp"
#include "permvqe/entanglement.hpp"

namespace permvqe {

namespace {

std::uint64_t mask(std::initializer_list<int> qubits) {
  std::uint64_t m = 0;
  for (int q : qubits) m |= std::uint64_t{1} << q;
  return m;
}

}  // namespace

PauliSum ising_model(int index) {
  PauliSum h(kIsingQubits);
  for (int q = 0; q < kIsingQubits; ++q) h.add(PauliTerm(kIsingQubits, 0, std::uint64_t{1} << q, 1.0));
  auto xx = [&](std::initializer_list<int> qs, double c) { h.add(PauliTerm(kIsingQubits, mask(qs), 0, c)); };
  switch (index) {
    case 1: xx({0, 5}, 1.0); break;
    case 2: xx({0, 5}, 1.0); xx({1, 4}, 1.0); break;
    case 3: xx({0, 2, 4}, 1.0); break;
    case 4: xx({0, 5}, 1.0); xx({0, 4}, 1.0); break;
    case 5: xx({0, 1, 4, 5}, 2.0); break;
    default: throw std::out_of_range("Ising model index must be 1..5");
  }
  return h.normalized();
}

std::string ising_model_label(int index) {
  static const std::vector<std::string> labels{"X0X5", "X0X5+X1X4", "X0X2X4", "X0X5+X0X4", "2*X0X1X4X5"};
  if (index < 1 || index > kIsingModelCount) throw std::out_of_range("Ising model index must be 1..5");
  return "sum Z + " + labels[static_cast<std::size_t>(index - 1)];
}

std::vector<IsingBenchRow> ising_bench(const VqeConfig& base, int max_depth, std::span<const int> models) {
  std::vector<IsingBenchRow> rows;
  for (int m : models) {
    IsingBenchRow row;
    row.model = m;
    row.label = ising_model_label(m);
    const PauliSum h = ising_model(m);
    VqeConfig cfg = base;
    cfg.ansatz.n_qubits = kIsingQubits;
    row.unpermuted = min_depth_to_exact(h, cfg, max_depth);
    const GroundState g = ground_state(h);
    row.ordering = brute_force_order(mutual_information_map(g.state), {}, kDefaultBruteForceCap, cfg.threads);
    row.permuted = min_depth_to_exact(apply_permutation(h, row.ordering.permutation), cfg, max_depth);
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

nlohmann::json depth_json(const std::optional<int>& d) { return d ? nlohmann::json(*d) : nlohmann::json(nullptr); }

std::string shortest(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

std::string ising_bench_json(const std::vector<IsingBenchRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j;
    j["model"] = r.model;
    j["label"] = r.label;
    j["exact_energy"] = r.unpermuted.exact_energy;
    j["unpermuted_depth"] = depth_json(r.unpermuted.depth);
    j["permuted_depth"] = depth_json(r.permuted.depth);
    j["unpermuted_errors"] = r.unpermuted.errors;
    j["permuted_errors"] = r.permuted.errors;
    j["ordering"] = nlohmann::json::parse(r.ordering.to_json());
    if (r.model >= 1 && r.model <= kIsingModelCount) {
      const auto& ref = kIsingReferenceDepths[static_cast<std::size_t>(r.model - 1)];
      j["reference_depths"] = {ref.first, ref.second};
    }
    out.push_back(std::move(j));
  }
  return out.dump();
}

std::string ising_bench_csv(const std::vector<IsingBenchRow>& rows) {
  std::string out = "model,label,unpermuted_depth,permuted_depth,reference_unpermuted,reference_permuted,exact_energy\n";
  for (const auto& r : rows) {
    const auto& ref = kIsingReferenceDepths[static_cast<std::size_t>(r.model - 1)];
    out += std::to_string(r.model) + ",\"" + r.label + "\"," +
           (r.unpermuted.depth ? std::to_string(*r.unpermuted.depth) : "") + "," +
           (r.permuted.depth ? std::to_string(*r.permuted.depth) : "") + "," + std::to_string(ref.first) + "," +
           std::to_string(ref.second) + "," + shortest(r.unpermuted.exact_energy) + "\n";
  }
  return out;
}

}  // namespace permvqe

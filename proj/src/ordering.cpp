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

#include "permvqe/ordering.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <numeric>
#include <thread>

#include "permvqe/error.hpp"

namespace permvqe {

std::string to_string(OrderingMethod m) {
  switch (m) {
    case OrderingMethod::brute_force: return "brute_force";
    case OrderingMethod::fiedler: return "fiedler";
    case OrderingMethod::automatic: return "auto";
  }
  return "?";
}

OrderingMethod parse_ordering_method(const std::string& s) {
  if (s == "brute_force" || s == "brute") return OrderingMethod::brute_force;
  if (s == "fiedler") return OrderingMethod::fiedler;
  if (s == "auto") return OrderingMethod::automatic;
  throw std::invalid_argument("unknown ordering method '" + s + "' (brute_force|fiedler|auto)");
}

std::string OrderingResult::to_json() const {
  nlohmann::json j;
  j["permutation"] = std::vector<int>(permutation.map().begin(), permutation.map().end());
  j["cost_before"] = cost_before;
  j["cost_after"] = cost_after;
  j["method"] = to_string(method);
  j["degenerate"] = degenerate;
  return j.dump();
}

namespace {

bool strictly_better(double candidate, double best) {
  if (std::isinf(best)) return candidate < best;
  return candidate < best - 1e-12 * std::max(1.0, std::abs(best));
}

struct PairWeight {
  int i, j;
  double value;
};

struct PartitionBest {
  double cost = std::numeric_limits<double>::infinity();
  std::vector<int> map;
};

PartitionBest search_prefix(int lead, int n, const std::vector<PairWeight>& pairs, const std::vector<double>& weight) {
  std::vector<int> perm;
  perm.push_back(lead);
  for (int v = 0; v < n; ++v) {
    if (v != lead) perm.push_back(v);
  }
  PartitionBest best;
  do {
    double c = 0.0;
    for (const auto& pw : pairs) {
      c += weight[static_cast<std::size_t>(perm[static_cast<std::size_t>(pw.i)] * n + perm[static_cast<std::size_t>(pw.j)])] * pw.value;
    }
    if (strictly_better(c, best.cost)) {
      best.cost = c;
      best.map = perm;
    }
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return best;
}

OrderingResult finish(const EntanglementMap& map, const ConnectivityDistance& conn, Permutation p, OrderingMethod m,
                      bool degenerate) {
  OrderingResult r;
  r.cost_before = cost(map, conn);
  r.cost_after = cost(permute_map(map, p), conn);
  r.permutation = std::move(p);
  r.method = m;
  r.degenerate = degenerate;
  return r;
}

}  // namespace

OrderingResult brute_force_order(const EntanglementMap& map, const ConnectivityDistance& conn, int cap, int threads) {
  conn.validate();
  const int n = map.n();
  if (n > cap) {
    throw LimitError("brute-force ordering of " + std::to_string(n) + " qubits exceeds the cap of " +
                     std::to_string(cap));
  }
  if (n <= 1) return finish(map, conn, Permutation::identity(n), OrderingMethod::brute_force, false);
  std::vector<PairWeight> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (map(i, j) != 0.0) pairs.push_back({i, j, map(i, j)});
    }
  }
  std::vector<double> weight(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) weight[static_cast<std::size_t>(a * n + b)] = conn.weight(a, b);
  }

  std::vector<PartitionBest> parts(static_cast<std::size_t>(n));
  const int workers = std::clamp(threads, 1, n);
  if (workers == 1) {
    for (int lead = 0; lead < n; ++lead) parts[static_cast<std::size_t>(lead)] = search_prefix(lead, n, pairs, weight);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int lead = w; lead < n; lead += workers) {
          parts[static_cast<std::size_t>(lead)] = search_prefix(lead, n, pairs, weight);
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  // Merge in lexicographic order of the leading index.
  PartitionBest best;
  for (const auto& part : parts) {
    if (strictly_better(part.cost, best.cost)) best = part;
  }
  return finish(map, conn, Permutation(best.map), OrderingMethod::brute_force, false);
}

Eigen::MatrixXd graph_laplacian(const EntanglementMap& map) {
  Eigen::MatrixXd lap = -map.values();
  for (int i = 0; i < map.n(); ++i) lap(i, i) = map.values().row(i).sum();
  return lap;
}

namespace {

// Sequence of qubits (position -> qubit) for one connected component.
std::vector<int> order_component(const EntanglementMap& map, const ConnectivityDistance& conn,
                                 const std::vector<int>& members, bool& degenerate) {
  const int m = static_cast<int>(members.size());
  if (m <= 2) return members;
  Eigen::MatrixXd sub(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) sub(a, b) = map(members[static_cast<std::size_t>(a)], members[static_cast<std::size_t>(b)]);
  }
  EntanglementMap submap(sub);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(graph_laplacian(submap));
  const auto& ev = es.eigenvalues();
  const double scale = std::max(1.0, std::abs(ev(m - 1)));
  if (m >= 3 && std::abs(ev(2) - ev(1)) < 1e-9 * scale) degenerate = true;
  Eigen::VectorXd fiedler = es.eigenvectors().col(1);

  auto sorted = [&](bool ascending) {
    std::vector<std::pair<long long, int>> keys;
    for (int a = 0; a < m; ++a) {
      // Quantize so that entries equal to rounding noise tie exactly.
      long long k = std::llround(fiedler(a) * 1e10);
      keys.emplace_back(ascending ? k : -k, a);
    }
    std::sort(keys.begin(), keys.end());
    std::vector<int> seq;
    for (const auto& [k, a] : keys) seq.push_back(a);
    return seq;
  };
  auto seq_cost = [&](const std::vector<int>& seq) {
    std::vector<int> pos(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) pos[static_cast<std::size_t>(seq[static_cast<std::size_t>(k)])] = k;
    return permuted_cost(submap, conn, Permutation(pos));
  };
  auto asc = sorted(true), desc = sorted(false);
  const auto& chosen = strictly_better(seq_cost(desc), seq_cost(asc)) ? desc : asc;
  std::vector<int> out;
  for (int a : chosen) out.push_back(members[static_cast<std::size_t>(a)]);
  return out;
}

}  // namespace

OrderingResult fiedler_order(const EntanglementMap& map, const ConnectivityDistance& conn) {
  conn.validate();
  const int n = map.n();
  if (n <= 1) return finish(map, conn, Permutation::identity(n), OrderingMethod::fiedler, false);

  // Connected components of the correlation graph.
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<std::vector<int>> components;
  for (int s = 0; s < n; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    std::vector<int> members{s}, stack{s};
    comp[static_cast<std::size_t>(s)] = static_cast<int>(components.size());
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; ++v) {
        if (comp[static_cast<std::size_t>(v)] < 0 && map(u, v) > kEntropyCutoff) {
          comp[static_cast<std::size_t>(v)] = comp[static_cast<std::size_t>(s)];
          members.push_back(v);
          stack.push_back(v);
        }
      }
    }
    std::sort(members.begin(), members.end());
    components.push_back(std::move(members));
  }
  bool degenerate = components.size() > 1;
  std::vector<std::pair<double, std::vector<int>>> ordered;
  for (const auto& members : components) {
    double w = 0.0;
    for (int a : members) {
      for (int b : members) {
        if (a < b) w += map(a, b);
      }
    }
    ordered.emplace_back(w, order_component(map, conn, members, degenerate));
  }
  // Descending weight; ties by smallest member (components are built in that order).
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<int> pos(static_cast<std::size_t>(n));
  int k = 0;
  for (const auto& [w, seq] : ordered) {
    for (int q : seq) pos[static_cast<std::size_t>(q)] = k++;
  }
  return finish(map, conn, Permutation(pos), OrderingMethod::fiedler, degenerate);
}

OrderingResult find_ordering(const EntanglementMap& map, const ConnectivityDistance& conn, OrderingMethod method,
                             int brute_force_cap, int threads) {
  switch (method) {
    case OrderingMethod::brute_force: return brute_force_order(map, conn, brute_force_cap, threads);
    case OrderingMethod::fiedler: return fiedler_order(map, conn);
    case OrderingMethod::automatic:
      if (map.n() <= brute_force_cap) return brute_force_order(map, conn, brute_force_cap, threads);
      return fiedler_order(map, conn);
  }
  return fiedler_order(map, conn);
}

}  // namespace permvqe

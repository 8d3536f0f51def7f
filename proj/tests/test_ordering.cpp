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

#include "oracles.hpp"
#include "permvqe/dense.hpp"
#include "permvqe/error.hpp"
#include "permvqe/ising.hpp"
#include "permvqe/ordering.hpp"

using namespace permvqe;

namespace {

EntanglementMap single_pair(int n, int a, int b, double v = 1.0) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  m(a, b) = m(b, a) = v;
  return EntanglementMap(m);
}

EntanglementMap path(int n) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = 1.0;
  return EntanglementMap(m);
}

}  // namespace

TEST(BruteForce, ZeroMapGivesIdentity) {
  OrderingResult r = brute_force_order(EntanglementMap::zeros(5), {});
  EXPECT_TRUE(r.permutation.is_identity());
  EXPECT_EQ(r.cost_after, 0.0);
}

TEST(BruteForce, SinglePairBecomesAdjacent) {
  OrderingResult r = brute_force_order(single_pair(6, 0, 5), {});
  EXPECT_EQ(std::abs(r.permutation(0) - r.permutation(5)), 1);
  EXPECT_DOUBLE_EQ(r.cost_before, 25.0);
  EXPECT_DOUBLE_EQ(r.cost_after, 1.0);
}

TEST(BruteForce, MatchesEnumerationOracle) {
  std::mt19937_64 rng(100);
  for (int k = 0; k < 100; ++k) {
    const int n = 2 + k % 6;
    EntanglementMap m(oracle::random_map(rng, n, k % 3 ? 1.0 : 0.4));
    OrderingResult r = brute_force_order(m, {});
    EXPECT_NEAR(r.cost_after, oracle::min_cost_enumeration(m.values(), 2.0), 1e-9) << "case " << k;
    EXPECT_LE(r.cost_after, r.cost_before + 1e-12);
    EXPECT_EQ(r.cost_after, cost(permute_map(m, r.permutation), {}));
  }
}

TEST(BruteForce, IsingH4GroundStateMap) {
  EntanglementMap m = mutual_information_map(ground_state(ising_model(4)).state);
  OrderingResult r = brute_force_order(m, {});
  EXPECT_NEAR(r.cost_after, oracle::min_cost_enumeration(m.values(), 2.0), 1e-9);
}

TEST(BruteForce, ThreadCountDoesNotChangeResult) {
  std::mt19937_64 rng(6);
  for (int k = 0; k < 10; ++k) {
    EntanglementMap m(oracle::random_map(rng, 7));
    OrderingResult a = brute_force_order(m, {}, kDefaultBruteForceCap, 1);
    OrderingResult b = brute_force_order(m, {}, kDefaultBruteForceCap, 4);
    EXPECT_EQ(a.permutation, b.permutation);
    EXPECT_EQ(a.cost_after, b.cost_after);
  }
}

TEST(BruteForce, TieBreakIsLexicographic) {
  // Path map: identity and reversal both optimal; identity is smaller.
  OrderingResult r = brute_force_order(path(5), {});
  EXPECT_TRUE(r.permutation.is_identity());
}

TEST(BruteForce, CapEnforced) {
  EXPECT_THROW(brute_force_order(EntanglementMap::zeros(11), {}), LimitError);
  EXPECT_THROW(brute_force_order(EntanglementMap::zeros(5), {}, 4), LimitError);
}

TEST(Laplacian, Basics) {
  EXPECT_EQ(graph_laplacian(EntanglementMap::zeros(3)), Eigen::MatrixXd::Zero(3, 3));
  Eigen::MatrixXd l2 = graph_laplacian(single_pair(2, 0, 1));
  Eigen::MatrixXd expect(2, 2);
  expect << 1, -1, -1, 1;
  EXPECT_EQ(l2, expect);

  std::mt19937_64 rng(7);
  EntanglementMap m(oracle::random_map(rng, 6));
  Eigen::MatrixXd l = graph_laplacian(m);
  EXPECT_LT(l.rowwise().sum().cwiseAbs().maxCoeff(), 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l);
  EXPECT_NEAR(es.eigenvalues()(0), 0.0, 1e-12);
  Eigen::VectorXd v0 = es.eigenvectors().col(0);
  EXPECT_LT((v0.cwiseAbs().array() - 1.0 / std::sqrt(6.0)).abs().maxCoeff(), 1e-10);
}

TEST(Laplacian, QuadraticFormIdentity) {
  std::mt19937_64 rng(71);
  std::normal_distribution<double> g;
  for (int k = 0; k < 50; ++k) {
    const int n = 2 + k % 8;
    EntanglementMap m(oracle::random_map(rng, n));
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = g(rng);
    double rhs = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) rhs += m(i, j) * (x(i) - x(j)) * (x(i) - x(j));
    }
    EXPECT_NEAR(x.dot(graph_laplacian(m) * x), rhs, 1e-9);
  }
}

TEST(Fiedler, PathGraphKeepsOrder) {
  OrderingResult r = fiedler_order(path(5), {});
  const bool ident = r.permutation.is_identity();
  const bool rev = r.permutation == Permutation({4, 3, 2, 1, 0});
  EXPECT_TRUE(ident || rev);
  EXPECT_DOUBLE_EQ(r.cost_after, r.cost_before);
  EXPECT_FALSE(r.degenerate);
}

TEST(Fiedler, MatchesBruteForceOnSinglePairMaps) {
  for (int n = 2; n <= 7; ++n) {
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        EntanglementMap m = single_pair(n, a, b, 0.8);
        OrderingResult f = fiedler_order(m, {});
        OrderingResult bf = brute_force_order(m, {});
        EXPECT_NEAR(f.cost_after, bf.cost_after, 1e-12) << n << ":" << a << "," << b;
        EXPECT_EQ(std::abs(f.permutation(a) - f.permutation(b)), 1);
      }
    }
  }
}

TEST(Fiedler, DominantPairWithWeakBackground) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 30; ++k) {
    const int n = 3 + k % 5;
    Eigen::MatrixXd v = 1e-4 * oracle::random_map(rng, n);
    const int a = static_cast<int>(rng() % n);
    int b = static_cast<int>(rng() % n);
    while (b == a) b = static_cast<int>(rng() % n);
    v(a, b) = v(b, a) = 1.0;
    EntanglementMap m(v);
    OrderingResult f = fiedler_order(m, {});
    EXPECT_EQ(std::abs(f.permutation(a) - f.permutation(b)), 1);
  }
}

TEST(Fiedler, NeverBeatsBruteForce) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 50; ++k) {
    EntanglementMap m(oracle::random_map(rng, 2 + k % 6));
    EXPECT_GE(fiedler_order(m, {}).cost_after, brute_force_order(m, {}).cost_after - 1e-12);
  }
}

TEST(Fiedler, DisconnectedIsDegenerate) {
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(6, 6);
  v(0, 3) = v(3, 0) = 1.0;
  v(1, 4) = v(4, 1) = 0.5;
  v(2, 5) = v(5, 2) = 0.2;
  OrderingResult r = fiedler_order(EntanglementMap(v), {});
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(std::abs(r.permutation(0) - r.permutation(3)), 1);
  EXPECT_EQ(std::abs(r.permutation(1) - r.permutation(4)), 1);
  EXPECT_EQ(std::abs(r.permutation(2) - r.permutation(5)), 1);
  EXPECT_NEAR(r.cost_after, 1.7, 1e-12);
}

TEST(FindOrdering, AutomaticSwitchesOnCap) {
  std::mt19937_64 rng(1);
  EntanglementMap m(oracle::random_map(rng, 6));
  EXPECT_EQ(find_ordering(m, {}).method, OrderingMethod::brute_force);
  EXPECT_EQ(find_ordering(m, {}, OrderingMethod::automatic, 5).method, OrderingMethod::fiedler);
  EXPECT_EQ(parse_ordering_method("brute"), OrderingMethod::brute_force);
  EXPECT_THROW(parse_ordering_method("random"), std::invalid_argument);
}

TEST(OrderingResult, Json) {
  OrderingResult r = brute_force_order(single_pair(3, 0, 2), {});
  const std::string j = r.to_json();
  EXPECT_NE(j.find("\"method\":\"brute_force\""), std::string::npos);
  EXPECT_NE(j.find("\"permutation\":["), std::string::npos);
}

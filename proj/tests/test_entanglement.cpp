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

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "permvqe/entanglement.hpp"
#include "permvqe/ordering.hpp"

using namespace permvqe;

namespace {

StateVector ghz(int n) {
  StateVector s(n);
  s.apply(Gate::ry(0, std::numbers::pi / 2));
  for (int q = 0; q + 1 < n; ++q) s.apply(Gate::cnot(q, q + 1));
  return s;
}

StateVector random_state(std::mt19937_64& rng, int n) { return StateVector(n, oracle::random_amplitudes(rng, n)); }

}  // namespace

TEST(Entropy, ClosedForms) {
  DensityMatrix pure = DensityMatrix::Zero(2, 2);
  pure(0, 0) = 1;
  EXPECT_NEAR(entropy(pure), 0.0, 1e-15);
  EXPECT_NEAR(entropy(0.5 * DensityMatrix::Identity(2, 2)), 1.0, 1e-12);
  DensityMatrix d = DensityMatrix::Zero(2, 2);
  d(0, 0) = 0.25;
  d(1, 1) = 0.75;
  EXPECT_NEAR(entropy(d), -(0.25 * std::log2(0.25) + 0.75 * std::log2(0.75)), 1e-12);
  EXPECT_NEAR(entropy(d), 0.811278, 1e-6);
  EXPECT_NEAR(entropy(0.5 * DensityMatrix::Identity(2, 2), LogBase::natural), std::log(2.0), 1e-12);
}

TEST(Entropy, RejectsBadTrace) {
  EXPECT_THROW(entropy(DensityMatrix::Identity(2, 2)), std::invalid_argument);
}

TEST(MutualInformation, AnalyticStates) {
  EntanglementMap bell = mutual_information_map(ghz(2));
  EXPECT_NEAR(bell(0, 1), 1.0, 1e-10);
  EXPECT_EQ(bell(0, 0), 0.0);

  EntanglementMap g3 = mutual_information_map(ghz(3));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(g3(i, j), i == j ? 0.0 : 0.5, 1e-10);
  }

  std::mt19937_64 rng(4);
  std::vector<Gate> product;
  std::uniform_real_distribution<double> a(-3, 3);
  for (int q = 0; q < 5; ++q) {
    product.push_back(Gate::ry(q, a(rng)));
    product.push_back(Gate::rz(q, a(rng)));
  }
  EntanglementMap pm = mutual_information_map(apply_circuit(StateVector(5), product));
  EXPECT_LT(pm.values().cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_EQ(pm.entangled_qubit_count(), 0);
}

TEST(MutualInformation, MatchesOracleAndBounds) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 20; ++k) {
    const int n = 2 + k % 5;
    StateVector s = random_state(rng, n);
    std::vector<oracle::cd> psi(s.amplitudes().begin(), s.amplitudes().end());
    EntanglementMap m = mutual_information_map(s);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double si = oracle::entropy_bits(oracle::partial_trace(psi, n, {i}));
        const double sj = oracle::entropy_bits(oracle::partial_trace(psi, n, {j}));
        const double sij = oracle::entropy_bits(oracle::partial_trace(psi, n, {i, j}));
        EXPECT_NEAR(m(i, j), 0.5 * (si + sj - sij), 1e-10);
        EXPECT_GE(m(i, j), -1e-10);
        EXPECT_LE(m(i, j), 1.0 + 1e-9);
        EXPECT_EQ(m(i, j), m(j, i));
      }
    }
  }
}

TEST(MutualInformation, RelabelingConsistency) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 10; ++k) {
    const int n = 3 + k % 4;
    StateVector s = random_state(rng, n);
    Permutation p = oracle::random_permutation(rng, n);
    EntanglementMap a = mutual_information_map(permute_state(s, p));
    EntanglementMap b = permute_map(mutual_information_map(s), p);
    EXPECT_LT((a.values() - b.values()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(EntanglementMap, Validation) {
  Eigen::MatrixXd asym = Eigen::MatrixXd::Zero(2, 2);
  asym(0, 1) = 0.3;
  EXPECT_THROW(EntanglementMap{asym}, std::invalid_argument);
  Eigen::MatrixXd diag = Eigen::MatrixXd::Identity(2, 2);
  EXPECT_THROW(EntanglementMap{diag}, std::invalid_argument);
  EXPECT_THROW(EntanglementMap{Eigen::MatrixXd::Zero(2, 3)}, std::invalid_argument);
}

TEST(EntanglementMap, ExportFormats) {
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(2, 2);
  v(0, 1) = v(1, 0) = 0.5;
  EntanglementMap m(v);
  const std::string json = m.to_json();
  EXPECT_NE(json.find("\"n\":2"), std::string::npos);
  EXPECT_NE(json.find("\"log_base\":2"), std::string::npos);
  EXPECT_EQ(m.to_csv(), "0,0.5\n0.5,0\n");
}

TEST(Cost, Arithmetic) {
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(6, 6);
  v(0, 5) = v(5, 0) = 1.0;
  EXPECT_DOUBLE_EQ(cost(EntanglementMap(v), {}), 25.0);
  EXPECT_DOUBLE_EQ(cost(EntanglementMap::zeros(6), {}), 0.0);
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(4, 4);
  for (int i = 0; i + 1 < 4; ++i) t(i, i + 1) = t(i + 1, i) = 1.0;
  EXPECT_DOUBLE_EQ(cost(EntanglementMap(t), {}), 3.0);
  EXPECT_THROW((ConnectivityDistance{ConnectivityDistance::Kind::linear, 0.0}.validate()), std::invalid_argument);
}

TEST(Cost, MonotoneInBeta) {
  std::mt19937_64 rng(19);
  for (int k = 0; k < 20; ++k) {
    EntanglementMap m(oracle::random_map(rng, 2 + k % 6));
    double prev = -1;
    for (double beta : {0.5, 1.0, 1.5, 2.0, 3.0}) {
      const double c = cost(m, {ConnectivityDistance::Kind::linear, beta});
      EXPECT_GE(c, prev - 1e-12);
      prev = c;
    }
  }
}

TEST(Cost, PermutedCostAgreesWithPermutedMap) {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 20; ++k) {
    const int n = 2 + k % 6;
    EntanglementMap m(oracle::random_map(rng, n));
    Permutation p = oracle::random_permutation(rng, n);
    EXPECT_NEAR(permuted_cost(m, {}, p), cost(permute_map(m, p), {}), 1e-12);
  }
}

TEST(Cost, ArgminInvariantUnderLogBase) {
  std::mt19937_64 rng(33);
  for (int k = 0; k < 5; ++k) {
    StateVector s = random_state(rng, 5);
    EntanglementMap m2 = mutual_information_map(s, LogBase::two);
    EntanglementMap me = mutual_information_map(s, LogBase::natural);
    EXPECT_LT((me.values() - std::log(2.0) * m2.values()).cwiseAbs().maxCoeff(), 1e-10);
    OrderingResult a = brute_force_order(m2, {});
    OrderingResult b = brute_force_order(me, {});
    // the argmin set is scale-invariant: each minimizer is near-optimal in the other metric
    EXPECT_NEAR(permuted_cost(me, {}, a.permutation), b.cost_after, 1e-9);
    EXPECT_NEAR(permuted_cost(m2, {}, b.permutation), a.cost_after, 1e-9);
  }
}

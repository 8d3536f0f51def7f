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
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "permvqe/dense.hpp"
#include "permvqe/error.hpp"
#include "permvqe/ising.hpp"
#include "permvqe/pauli.hpp"

using namespace permvqe;

namespace {

int parse_error_line(const std::string& text) {
  try {
    parse_pauli_string(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST(Permutation, RejectsNonBijection) {
  EXPECT_THROW(Permutation({0, 0, 1}), std::invalid_argument);
  EXPECT_THROW(Permutation({0, 3}), std::invalid_argument);
  EXPECT_NO_THROW(Permutation({2, 0, 1}));
}

TEST(Permutation, InverseAndCompose) {
  Permutation p({2, 0, 3, 1});
  EXPECT_TRUE(compose(p, p.inverse()).is_identity());
  EXPECT_TRUE(compose(p.inverse(), p).is_identity());
  Permutation q({1, 2, 3, 0});
  // compose(outer, inner)(i) = outer(inner(i))
  for (int i = 0; i < 4; ++i) EXPECT_EQ(compose(p, q)(i), p(q(i)));
}

TEST(PauliTerm, WordAndLetters) {
  PauliTerm t("XIYZ", 0.5);
  EXPECT_EQ(t.letter(0), PauliLetter::X);
  EXPECT_EQ(t.letter(1), PauliLetter::I);
  EXPECT_EQ(t.letter(2), PauliLetter::Y);
  EXPECT_EQ(t.letter(3), PauliLetter::Z);
  EXPECT_EQ(t.weight(), 3);
  EXPECT_EQ(t.y_count(), 1);
  EXPECT_EQ(t.word_string(), "XIYZ");
}

TEST(ApplyPermutation, ReversesThreeQubitWord) {
  // X0 Y1 Z2 with 0->2, 1->1, 2->0 gives Z0 Y1 X2.
  PauliSum h(3);
  h.add(PauliTerm("XYZ", 1.25));
  PauliSum out = apply_permutation(h, Permutation({2, 1, 0}));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out.terms()[0].word_string(), "ZYX");
  EXPECT_DOUBLE_EQ(out.terms()[0].coefficient(), 1.25);
}

TEST(ApplyPermutation, IdentityLeavesSumUnchanged) {
  std::mt19937_64 rng(7);
  PauliSum h = oracle::random_sum(rng, 5, 12);
  EXPECT_TRUE(apply_permutation(h, Permutation::identity(5)).approx_equal(h, 0.0));
}

TEST(ApplyPermutation, IsingH1SwapMovesCoupling) {
  PauliSum h = ising_model(1);
  // swap qubits 1 <-> 5 (1-based labels 2 <-> 6)
  PauliSum out = apply_permutation(h, Permutation({0, 5, 2, 3, 4, 1}));
  bool found = false;
  for (const auto& t : out.terms()) {
    if (t.word_string() == "XXIIII") found = true;
  }
  EXPECT_TRUE(found);
  EXPECT_LT(oracle::max_abs_diff(oracle::spectrum(oracle::dense(h)), oracle::spectrum(oracle::dense(out))), 1e-9);
}

TEST(ApplyPermutation, DimensionMismatchThrows) {
  PauliSum h(3);
  h.add(PauliTerm("ZII", 1.0));
  EXPECT_THROW(apply_permutation(h, Permutation::identity(4)), DimensionError);
}

TEST(ApplyPermutation, IsospectralOnRandomSums) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> width(1, 8);
  for (int k = 0; k < 200; ++k) {
    const int n = width(rng);
    PauliSum h = oracle::random_sum(rng, n, 1 + k % 10);
    Permutation p = oracle::random_permutation(rng, n);
    const auto a = oracle::spectrum(oracle::dense(h));
    const auto b = oracle::spectrum(oracle::dense(apply_permutation(h, p)));
    ASSERT_LT(oracle::max_abs_diff(a, b), 1e-9) << "case " << k;
  }
}

TEST(ApplyPermutation, InverseRoundTrip) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 50; ++k) {
    const int n = 1 + k % 8;
    PauliSum h = oracle::random_sum(rng, n, 8);
    Permutation p = oracle::random_permutation(rng, n);
    EXPECT_TRUE(apply_permutation(apply_permutation(h, p), p.inverse()).approx_equal(h, 1e-15));
  }
}

TEST(Normalization, MergesAndIsIdempotent) {
  PauliSum h(2);
  h.add(PauliTerm("XZ", 0.5));
  h.add(PauliTerm("XZ", 0.25));
  h.add(PauliTerm("ZZ", 1e-14));
  h.add(PauliTerm("II", 2.0));
  PauliSum n1 = h.normalized();
  EXPECT_EQ(n1.size(), 2u);
  EXPECT_DOUBLE_EQ(n1.constant(), 2.0);
  PauliSum n2 = n1.normalized();
  EXPECT_EQ(to_pauli_string(n1), to_pauli_string(n2));

  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    PauliSum r = oracle::random_sum(rng, 4, 30).normalized();
    EXPECT_EQ(to_pauli_string(r), to_pauli_string(r.normalized()));
  }
}

TEST(Dense, SmallMatrices) {
  PauliSum z(1);
  z.add(PauliTerm("Z", 1.0));
  Eigen::MatrixXcd dz = to_dense(z);
  EXPECT_EQ(dz(0, 0), std::complex<double>(1.0));
  EXPECT_EQ(dz(1, 1), std::complex<double>(-1.0));
  EXPECT_EQ(dz(0, 1), std::complex<double>(0.0));

  PauliSum xx(2);
  xx.add(PauliTerm("XX", 1.0));
  Eigen::MatrixXcd dxx = to_dense(xx);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) EXPECT_EQ(dxx(i, j), std::complex<double>(i + j == 3 ? 1.0 : 0.0));
  }
}

TEST(Dense, MatchesKroneckerOracle) {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 40; ++k) {
    const int n = 1 + k % 6;
    PauliSum h = oracle::random_sum(rng, n, 6);
    EXPECT_LT((to_dense(h) - oracle::dense(h)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Dense, Linearity) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 20; ++k) {
    const int n = 1 + k % 6;
    PauliSum a = oracle::random_sum(rng, n, 5);
    PauliSum b = oracle::random_sum(rng, n, 5);
    const double s = 0.7, t = -1.3;
    Eigen::MatrixXcd lhs = to_dense(s * a + t * b);
    Eigen::MatrixXcd rhs = s * to_dense(a) + t * to_dense(b);
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Dense, CapEnforced) {
  PauliSum h(15);
  h.add_constant(1.0);
  EXPECT_THROW(to_dense(h), LimitError);
  EXPECT_THROW(to_dense(h, 14), LimitError);
}

TEST(GroundState, IsingH1) {
  GroundState g = ground_state(ising_model(1));
  EXPECT_NEAR(g.energy, -4.0 - std::sqrt(5.0), 1e-10);
  EXPECT_NEAR(g.state.norm(), 1.0, 1e-12);
}

TEST(GroundState, SumOfZ) {
  PauliSum h(6);
  for (int q = 0; q < 6; ++q) h.add(PauliTerm(6, 0, std::uint64_t{1} << q, 1.0));
  GroundState g = ground_state(h);
  EXPECT_NEAR(g.energy, -6.0, 1e-12);
  EXPECT_NEAR(std::abs(g.state[63]), 1.0, 1e-10);
}

TEST(GroundState, MatchesOracleOnIsingModels) {
  for (int m = 1; m <= kIsingModelCount; ++m) {
    const auto spec = oracle::spectrum(oracle::dense(ising_model(m)));
    EXPECT_NEAR(ground_state(ising_model(m)).energy, spec(0), 1e-10) << ising_model_label(m);
  }
}

TEST(GroundState, LanczosAgreesWithDense) {
  std::mt19937_64 rng(17);
  PauliSum h = oracle::random_sum(rng, 8, 25);
  GroundStateOptions opts;
  opts.dense_limit = 4;
  const double lanczos = ground_state(h, opts).energy;
  EXPECT_NEAR(lanczos, oracle::spectrum(oracle::dense(h))(0), 1e-8);
}

TEST(PauliText, SingleTermWithImplicitIdentity) {
  PauliSum h = parse_pauli_string("qubits 2\n1.0 Z0\n");
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h.terms()[0].word_string(), "ZI");
  EXPECT_DOUBLE_EQ(h.terms()[0].coefficient(), 1.0);
}

TEST(PauliText, HeaderOnly) {
  PauliSum h = parse_pauli_string("# nothing here\nqubits 3\n");
  EXPECT_EQ(h.n_qubits(), 3);
  EXPECT_EQ(h.size(), 0u);
}

TEST(PauliText, CommentsAndConstants) {
  PauliSum h = parse_pauli_string("qubits 4 # width\n\n-0.5\n0.5 X0 Z3 # trailing\n");
  EXPECT_EQ(h.size(), 2u);
  EXPECT_DOUBLE_EQ(h.normalized().constant(), -0.5);
}

TEST(PauliText, ErrorsCarryLineNumbers) {
  EXPECT_EQ(parse_error_line("qubits 2\n1.0 Q0\n"), 2);
  EXPECT_EQ(parse_error_line("qubits 2\n1.0 Z0\n1.0 X2\n"), 3);
  EXPECT_EQ(parse_error_line("qubits 2\nabc Z0\n"), 2);
  EXPECT_EQ(parse_error_line("qubits 2\n# c\n1.0 Z0 X0\n"), 3);
  EXPECT_EQ(parse_error_line("1.0 Z0\n"), 1);
  EXPECT_THROW(parse_pauli_string(""), ParseError);
}

TEST(PauliText, FileErrorsMentionPath) {
  const std::string path = ::testing::TempDir() + "bad.pauli";
  {
    std::ofstream out(path);
    out << "qubits 2\n1.0 Y7\n";
  }
  try {
    load_pauli_file(path);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_NE(std::string(e.what()).find(path), std::string::npos);
  }
  EXPECT_THROW(load_pauli_file(path + ".missing"), std::runtime_error);
}

TEST(PauliText, RoundTripRandom) {
  std::mt19937_64 rng(123);
  for (int k = 0; k < 30; ++k) {
    PauliSum h = oracle::random_sum(rng, 1 + k % 10, 10).normalized();
    const std::string text = to_pauli_string(h);
    PauliSum back = parse_pauli_string(text);
    EXPECT_TRUE(back.approx_equal(h, 0.0));
    EXPECT_EQ(to_pauli_string(back), text);
  }
}

TEST(PauliText, ShippedFixturesAreCanonical) {
  for (const char* name : {"h2_sto3g_jw.pauli", "ising_h1.pauli"}) {
    const std::string path = oracle::test_data_dir() + "/fixtures/" + name;
    std::ifstream in(path);
    ASSERT_TRUE(in) << path;
    std::stringstream raw;
    raw << in.rdbuf();
    EXPECT_EQ(to_pauli_string(load_pauli_file(path)), raw.str()) << name;
  }
}

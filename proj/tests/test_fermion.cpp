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

#include <sstream>

#include "oracles.hpp"
#include "permvqe/dense.hpp"
#include "permvqe/error.hpp"
#include "permvqe/fermion.hpp"
#include "permvqe/simulator.hpp"

using namespace permvqe;

namespace {

const Encoding kEncodings[] = {Encoding::jordan_wigner, Encoding::bravyi_kitaev, Encoding::parity};

std::string fixture(const std::string& name) { return oracle::test_data_dir() + "/fixtures/" + name; }

int fcidump_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_fcidump(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

// Closed-shell RHF energy in the spatial-orbital form.
double rhf_energy(const IntegralSet& ints) {
  const int nocc = ints.n_electrons() / 2;
  double e = ints.core_energy;
  for (int i = 0; i < nocc; ++i) e += 2.0 * ints.one_body(i, i);
  for (int i = 0; i < nocc; ++i) {
    for (int j = 0; j < nocc; ++j) e += 2.0 * ints.two_body(i, i, j, j) - ints.two_body(i, j, j, i);
  }
  return e;
}

}  // namespace

TEST(Fcidump, H2Fixture) {
  IntegralSet ints = load_fcidump(fixture("h2_sto3g.fcidump"));
  EXPECT_EQ(ints.n_spatial(), 2);
  EXPECT_EQ(ints.n_electrons(), 2);
  ASSERT_TRUE(ints.e_hf && ints.e_fci);
  EXPECT_LT(ints.symmetry_violation(), 1e-12);
  EXPECT_NEAR(rhf_energy(ints), *ints.e_hf, 1e-8);
  EXPECT_NEAR(hartree_fock_energy(ints), *ints.e_hf, 1e-8);
}

TEST(Fcidump, LiHActiveSpace) {
  IntegralSet ints = load_fcidump(fixture("lih_sto3g_cas5.fcidump"));
  EXPECT_EQ(ints.n_spatial(), 5);
  EXPECT_EQ(ints.n_spin_orbitals(), 10);
  EXPECT_EQ(ints.n_electrons(), 2);
  EXPECT_NEAR(rhf_energy(ints), *ints.e_hf, 1e-8);
}

TEST(Fcidump, AllFixturesReproduceHartreeFock) {
  for (const char* name : {"h2_631g.fcidump", "h2_dimer_sto3g.fcidump", "h4_square_sto3g.fcidump",
                           "h3plus_sto3g.fcidump"}) {
    IntegralSet ints = load_fcidump(fixture(name));
    ASSERT_TRUE(ints.e_hf) << name;
    EXPECT_NEAR(rhf_energy(ints), *ints.e_hf, 1e-8) << name;
  }
}

TEST(Fcidump, ZeroIntegralsGiveConstant) {
  IntegralSet ints = load_fcidump(fixture("zero_integrals.fcidump"));
  for (Encoding e : kEncodings) {
    PauliSum h = encode(ints, SpinOrbitalOrdering::blocked, e);
    ASSERT_EQ(h.size(), 1u);
    EXPECT_TRUE(h.terms()[0].is_identity());
    EXPECT_DOUBLE_EQ(h.constant(), 0.75);
  }
}

TEST(Fcidump, SpecHeaderStyle) {
  std::istringstream in(
      "NORB=1 NELEC=2 CORE=0.5 EHF=-1.0\n"
      "0.25 1 1 1 1\n"
      "-1.0 1 1 0 0\n");
  IntegralSet ints = parse_fcidump(in);
  EXPECT_DOUBLE_EQ(ints.core_energy, 0.5);
  EXPECT_DOUBLE_EQ(ints.two_body(0, 0, 0, 0), 0.25);
  EXPECT_NEAR(hartree_fock_energy(ints), 0.5 - 2.0 + 0.25, 1e-15);
}

TEST(Fcidump, ErrorsCarryLineNumbers) {
  EXPECT_EQ(fcidump_error_line("NELEC=2\n0.1 1 1 0 0\n"), 2);
  EXPECT_EQ(fcidump_error_line("NORB=2 NELEC=2\n0.1 1 3 0 0\n"), 2);
  EXPECT_EQ(fcidump_error_line("NORB=2 NELEC=2\n0.1 1 2 0 0\n0.2 2 1 0 0\n"), 3);
  EXPECT_EQ(fcidump_error_line("NORB=2 NELEC=2\n0.1 1 2 1 1\n0.3 1 1 2 1\n"), 3);
  EXPECT_EQ(fcidump_error_line("NORB=2 NELEC=2\nx 1 1 0 0\n"), 2);
  EXPECT_EQ(fcidump_error_line("NORB=2 NELEC=2\n0.1 1 1 0\n"), 2);
}

TEST(Fcidump, MissingFileMentionsPath) {
  try {
    load_fcidump("/nonexistent/file.fcidump");
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/file.fcidump"), std::string::npos);
  }
}

TEST(Ordering, SpinOrbitalIndex) {
  EXPECT_EQ(spin_orbital_index(1, 0, 3, SpinOrbitalOrdering::blocked), 1);
  EXPECT_EQ(spin_orbital_index(1, 1, 3, SpinOrbitalOrdering::blocked), 4);
  EXPECT_EQ(spin_orbital_index(1, 0, 3, SpinOrbitalOrdering::interleaved), 2);
  EXPECT_EQ(spin_orbital_index(1, 1, 3, SpinOrbitalOrdering::interleaved), 3);
}

TEST(Encoder, NumberOperators) {
  PauliSum jw = FermionEncoder(1, Encoding::jordan_wigner).number(0);
  PauliSum expect_jw(1);
  expect_jw.add(PauliTerm("I", 0.5));
  expect_jw.add(PauliTerm("Z", -0.5));
  EXPECT_TRUE(jw.approx_equal(expect_jw));

  PauliSum par = FermionEncoder(2, Encoding::parity).number(1);
  PauliSum expect_par(2);
  expect_par.add(PauliTerm("II", 0.5));
  expect_par.add(PauliTerm("ZZ", -0.5));
  EXPECT_TRUE(par.approx_equal(expect_par));
  EXPECT_LT(oracle::max_abs_diff(oracle::spectrum(oracle::dense(par)),
                                 oracle::spectrum(oracle::dense(FermionEncoder(2, Encoding::jordan_wigner).number(1)))),
            1e-12);
}

TEST(Encoder, JordanWignerNumberIsLocal) {
  FermionEncoder enc(6, Encoding::jordan_wigner);
  for (int s = 0; s < 6; ++s) {
    for (const auto& t : enc.number(s).terms()) {
      EXPECT_EQ((t.x_mask() | t.z_mask()) & ~(std::uint64_t{1} << s), 0u);
    }
  }
}

TEST(Encoder, CanonicalAnticommutation) {
  for (Encoding e : kEncodings) {
    for (int n : {3, 5, 6}) {
      FermionEncoder enc(n, e);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          // {a_i, a_j^dagger} = delta_ij
          ComplexPauliSum ac = enc.annihilation(i) * enc.creation(j);
          ac += enc.creation(j) * enc.annihilation(i);
          PauliSum r = ac.to_real();
          PauliSum expect(n);
          if (i == j) expect.add_constant(1.0);
          EXPECT_TRUE(r.approx_equal(expect, 1e-12)) << to_string(e) << " " << i << "," << j;
          // {a_i, a_j} = 0
          ComplexPauliSum aa = enc.annihilation(i) * enc.annihilation(j);
          aa += enc.annihilation(j) * enc.annihilation(i);
          EXPECT_EQ(aa.to_real().size(), 0u);
        }
      }
    }
  }
}

TEST(Encode, JordanWignerMatchesFockSpaceOracle) {
  std::mt19937_64 rng(41);
  for (int ns = 1; ns <= 3; ++ns) {
    for (auto ord : {SpinOrbitalOrdering::blocked, SpinOrbitalOrdering::interleaved}) {
      IntegralSet ints = oracle::random_integrals(rng, ns, ns);
      Eigen::MatrixXd ref = oracle::fock_hamiltonian(ints, ord);
      Eigen::MatrixXcd got = to_dense(encode(ints, ord, Encoding::jordan_wigner));
      EXPECT_LT((got - ref.cast<std::complex<double>>()).cwiseAbs().maxCoeff(), 1e-12) << ns;
    }
  }
}

TEST(Encode, SpectraAgreeAcrossEncodings) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 12; ++k) {
    const int ns = 1 + k % 3;
    IntegralSet ints = oracle::random_integrals(rng, ns, 1 + k % (2 * ns));
    const auto ord = k % 2 ? SpinOrbitalOrdering::interleaved : SpinOrbitalOrdering::blocked;
    const Eigen::VectorXd ref = oracle::spectrum(oracle::fock_hamiltonian(ints, ord).cast<std::complex<double>>());
    for (Encoding e : kEncodings) {
      EXPECT_LT(oracle::max_abs_diff(ref, oracle::spectrum(oracle::dense(encode(ints, ord, e)))), 1e-9)
          << to_string(e) << " case " << k;
    }
  }
}

TEST(Encode, H2FixtureSpectrum) {
  IntegralSet ints = load_fcidump(fixture("h2_sto3g.fcidump"));
  const PauliSum jw = encode(ints, SpinOrbitalOrdering::blocked, Encoding::jordan_wigner);
  EXPECT_EQ(jw.n_qubits(), 4);
  const Eigen::VectorXd ref = oracle::spectrum(oracle::dense(jw));
  EXPECT_NEAR(ref(0), *ints.e_fci, 1e-8);
  for (Encoding e : {Encoding::bravyi_kitaev, Encoding::parity}) {
    EXPECT_LT(oracle::max_abs_diff(ref, oracle::spectrum(oracle::dense(encode(ints, SpinOrbitalOrdering::blocked, e)))),
              1e-9);
  }
}

TEST(Encode, JordanWignerConservesParticleNumber) {
  IntegralSet ints = load_fcidump(fixture("h2_631g.fcidump"));
  const Eigen::MatrixXcd h = oracle::dense(encode(ints, SpinOrbitalOrdering::blocked, Encoding::jordan_wigner));
  Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(h.rows(), h.cols());
  for (Eigen::Index k = 0; k < h.rows(); ++k) n(k, k) = std::popcount(static_cast<std::uint64_t>(k));
  EXPECT_LT((h * n - n * h).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Encode, HartreeFockExpectation) {
  for (const char* name : {"h2_sto3g.fcidump", "h2_631g.fcidump", "h3plus_sto3g.fcidump", "lih_sto3g_cas5.fcidump"}) {
    IntegralSet ints = load_fcidump(fixture(name));
    for (auto ord : {SpinOrbitalOrdering::blocked, SpinOrbitalOrdering::interleaved}) {
      for (Encoding e : kEncodings) {
        PauliSum h = encode(ints, ord, e);
        Bitstring hf = hartree_fock_bitstring(ints.n_electrons(), ints.n_spatial(), ord,
                                              Permutation::identity(h.n_qubits()), e);
        EXPECT_NEAR(expectation(StateVector::from_bits(hf), h), rhf_energy(ints), 1e-8)
            << name << " " << to_string(e);
      }
    }
  }
}

TEST(HartreeFock, Bitstrings) {
  auto id4 = Permutation::identity(4);
  EXPECT_EQ(hartree_fock_bitstring(2, 2, SpinOrbitalOrdering::blocked, id4), (Bitstring{1, 0, 1, 0}));
  EXPECT_EQ(hartree_fock_bitstring(2, 2, SpinOrbitalOrdering::interleaved, id4), (Bitstring{1, 1, 0, 0}));
  // spin-orbital 1 occupied, sent to qubit 5
  Bitstring b = hartree_fock_bitstring(2, 3, SpinOrbitalOrdering::interleaved, Permutation({0, 5, 1, 2, 3, 4}));
  EXPECT_EQ(b, (Bitstring{1, 0, 0, 0, 0, 1}));
  EXPECT_THROW(hartree_fock_bitstring(2, 2, SpinOrbitalOrdering::blocked, Permutation::identity(3)), DimensionError);
  EXPECT_THROW(hartree_fock_bitstring(5, 2, SpinOrbitalOrdering::blocked, id4), std::invalid_argument);
}

TEST(HartreeFock, EncodedOccupationsArePlusOneEigenstatesOfNumber) {
  for (Encoding e : kEncodings) {
    FermionEncoder enc(6, e);
    Bitstring occ{1, 0, 1, 1, 0, 0};
    StateVector s = StateVector::from_bits(enc.encode_occupations(occ));
    for (int j = 0; j < 6; ++j) EXPECT_NEAR(expectation(s, enc.number(j)), occ[static_cast<std::size_t>(j)], 1e-12);
  }
}

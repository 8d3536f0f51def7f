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
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permvqe/pauli.hpp"

namespace permvqe {

using Bitstring = std::vector<std::uint8_t>;

/// Active-space electronic-structure integrals in chemists' notation.
/// All energies are in Hartree.
class IntegralSet {
 public:
  IntegralSet() = default;
  IntegralSet(int n_spatial, int n_electrons);

  int n_spatial() const noexcept { return n_spatial_; }
  int n_electrons() const noexcept { return n_electrons_; }
  int n_spin_orbitals() const noexcept { return 2 * n_spatial_; }

  double core_energy = 0.0;
  /// Reference energies copied from the file header, when present.
  std::optional<double> e_hf;
  std::optional<double> e_fci;

  double one_body(int p, int q) const { return h1_(p, q); }
  /// (pq|rs).
  double two_body(int p, int q, int r, int s) const { return h2_[index(p, q, r, s)]; }

  /// Sets h_pq and h_qp.
  void set_one_body(int p, int q, double v);
  /// Sets (pq|rs) and its seven symmetry partners.
  void set_two_body(int p, int q, int r, int s, double v);

  /// Largest deviation from the declared index symmetries.
  double symmetry_violation() const;

 private:
  std::size_t index(int p, int q, int r, int s) const {
    const auto n = static_cast<std::size_t>(n_spatial_);
    return ((static_cast<std::size_t>(p) * n + static_cast<std::size_t>(q)) * n + static_cast<std::size_t>(r)) * n +
           static_cast<std::size_t>(s);
  }

  int n_spatial_ = 0;
  int n_electrons_ = 0;
  Eigen::MatrixXd h1_;
  std::vector<double> h2_;
};

/// FCIDUMP-style text: KEY=VALUE header tokens (NORB, NELEC required; CORE,
/// EHF, EFCI optional; `&FCI` / `&END` / `/` accepted), then
/// `<value> p q r s` lines with 1-based indices. r = s = 0 marks one-body
/// entries and p = q = r = s = 0 the core energy.
IntegralSet parse_fcidump(std::istream& in);
IntegralSet load_fcidump(const std::string& path);

enum class SpinOrbitalOrdering { blocked, interleaved };
enum class Encoding { jordan_wigner, bravyi_kitaev, parity };

std::string to_string(SpinOrbitalOrdering o);
std::string to_string(Encoding e);
SpinOrbitalOrdering parse_ordering(const std::string& s);
Encoding parse_encoding(const std::string& s);

/// Spin-orbital index of spatial orbital `q` with spin 0 (alpha) or 1 (beta).
int spin_orbital_index(int q, int spin, int n_spatial, SpinOrbitalOrdering ordering);

/// Sum of complex-weighted Pauli words; scratch algebra for the encoders.
class ComplexPauliSum {
 public:
  explicit ComplexPauliSum(int n_qubits) : n_qubits_(n_qubits) {}

  int n_qubits() const noexcept { return n_qubits_; }
  const auto& terms() const noexcept { return terms_; }

  void add(std::uint64_t x, std::uint64_t z, std::complex<double> c);
  ComplexPauliSum& operator+=(const ComplexPauliSum& o);
  ComplexPauliSum& operator*=(std::complex<double> s);
  friend ComplexPauliSum operator*(const ComplexPauliSum& a, const ComplexPauliSum& b);

  /// Drops |c| < tol and converts to a real sum. Throws std::domain_error
  /// if any surviving coefficient has an imaginary part above `imag_tol`.
  PauliSum to_real(double tol = kDefaultDropTolerance, double imag_tol = 1e-10) const;

 private:
  int n_qubits_;
  // (x, z) -> coefficient of the Hermitian word i^{|x&z|} X^x Z^z.
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::complex<double>> terms_;
};

/// Ladder operators on `n_modes` fermionic modes under one encoding.
///
/// Each encoding is a lower-unitriangular GF(2) matrix A with qubit bits
/// b = A f for occupations f. The update, parity and flip sets follow from
/// A and its inverse, and a_j^dagger = ½ X_U (X_j Z_P - i Y_j Z_{P Δ F}).
class FermionEncoder {
 public:
  FermionEncoder(int n_modes, Encoding encoding);

  int n_modes() const noexcept { return n_; }
  Encoding encoding() const noexcept { return encoding_; }

  std::uint64_t update_set(int j) const { return update_[static_cast<std::size_t>(j)]; }
  std::uint64_t parity_set(int j) const { return parity_[static_cast<std::size_t>(j)]; }
  std::uint64_t flip_set(int j) const { return flip_[static_cast<std::size_t>(j)]; }

  ComplexPauliSum creation(int j) const;
  ComplexPauliSum annihilation(int j) const;
  /// a_j^dagger a_j.
  PauliSum number(int j) const;

  /// Qubit basis state encoding the occupation vector.
  Bitstring encode_occupations(const Bitstring& occupations) const;

 private:
  int n_;
  Encoding encoding_;
  std::vector<std::uint64_t> rows_;  // rows of A as bitmasks over modes
  std::vector<std::uint64_t> update_, parity_, flip_;
};

/// Qubit Hamiltonian on 2 n_spatial qubits; the constant term holds the core
/// energy.
PauliSum encode(const IntegralSet& ints, SpinOrbitalOrdering ordering, Encoding encoding);

/// Occupation bits of the aufbau determinant: alpha then beta spin of each
/// spatial orbital in turn (n_alpha = ceil(N/2)), in spin-orbital order.
Bitstring hartree_fock_occupations(int n_electrons, int n_spatial, SpinOrbitalOrdering ordering);

/// HF reference as a qubit bitstring: the bit for spin-orbital s sits at
/// qubit p(encoded index). Under Jordan-Wigner this is bit p(s).
Bitstring hartree_fock_bitstring(int n_electrons, int n_spatial, SpinOrbitalOrdering ordering,
                                 const Permutation& p, Encoding encoding = Encoding::jordan_wigner);

/// <HF|H|HF> evaluated directly from the integrals.
double hartree_fock_energy(const IntegralSet& ints);

}  // namespace permvqe

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

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace permvqe {

inline constexpr int kMaxPauliQubits = 64;
inline constexpr double kDefaultDropTolerance = 1e-12;

enum class PauliLetter : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(PauliLetter letter);
PauliLetter pauli_letter_from_char(char c);

/// Bijection on {0, ..., n-1}; `map()[i]` is the image of index i.
class Permutation {
 public:
  Permutation() = default;
  /// Throws std::invalid_argument unless `map` is a bijection.
  explicit Permutation(std::vector<int> map);

  static Permutation identity(int n);

  int size() const noexcept { return static_cast<int>(map_.size()); }
  int operator()(int i) const { return map_.at(static_cast<std::size_t>(i)); }
  std::span<const int> map() const noexcept { return map_; }

  Permutation inverse() const;
  bool is_identity() const noexcept;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> map_;
};

/// (outer ∘ inner)(i) = outer(inner(i)).
Permutation compose(const Permutation& outer, const Permutation& inner);

/// A real-weighted tensor product of single-qubit Paulis.
///
/// The word is stored in symplectic form: qubit q carries X if bit q of `x`
/// is set, Z if bit q of `z` is set, and Y if both are. Qubit 0 is the
/// leftmost letter of `word_string()`.
class PauliTerm {
 public:
  PauliTerm() = default;
  PauliTerm(int n_qubits, std::uint64_t x, std::uint64_t z, double coefficient);
  /// `word` is read left to right as qubits 0, 1, ...; length must equal n.
  PauliTerm(std::string_view word, double coefficient);

  int n_qubits() const noexcept { return n_qubits_; }
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }
  double coefficient() const noexcept { return coefficient_; }

  PauliLetter letter(int qubit) const;
  int weight() const noexcept;
  int y_count() const noexcept;
  bool is_identity() const noexcept { return (x_ | z_) == 0; }
  std::string word_string() const;

  PauliTerm with_coefficient(double c) const { return {n_qubits_, x_, z_, c}; }
  bool same_word(const PauliTerm& o) const noexcept { return x_ == o.x_ && z_ == o.z_; }

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;

 private:
  int n_qubits_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  double coefficient_ = 0.0;
};

/// Σ c_k P_k over a fixed register. Terms are kept in insertion order until
/// `normalized()` merges equal words, drops small coefficients and sorts.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(int n_qubits);
  PauliSum(int n_qubits, std::vector<PauliTerm> terms);

  int n_qubits() const noexcept { return n_qubits_; }
  std::span<const PauliTerm> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  void add(const PauliTerm& term);
  void add_constant(double c);

  /// Coefficient of the identity word (0 when absent); assumes normalized.
  double constant() const noexcept;

  PauliSum normalized(double drop_tolerance = kDefaultDropTolerance) const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(double s);
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator*(double s, PauliSum a) { return a *= s; }

  /// Word-for-word equality after normalizing both sides.
  bool approx_equal(const PauliSum& other, double tol = 1e-12) const;

 private:
  int n_qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

/// Moves the letter on qubit i to qubit p(i) in every term.
PauliTerm apply_permutation(const PauliTerm& term, const Permutation& p);
PauliSum apply_permutation(const PauliSum& h, const Permutation& p);

/// Text format: `qubits <n>` then `<coefficient> <L><index> ...` per term.
PauliSum parse_pauli_text(std::istream& in);
PauliSum parse_pauli_string(std::string_view text);
PauliSum load_pauli_file(const std::string& path);

/// Writes the normalized sum; coefficients use shortest round-trip form.
void write_pauli_text(std::ostream& out, const PauliSum& h);
std::string to_pauli_string(const PauliSum& h);
void save_pauli_file(const std::string& path, const PauliSum& h);

}  // namespace permvqe

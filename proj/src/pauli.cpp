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

#include "permvqe/pauli.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "permvqe/error.hpp"

namespace permvqe {

char to_char(PauliLetter letter) {
  static constexpr char kChars[] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(letter)];
}

PauliLetter pauli_letter_from_char(char c) {
  switch (c) {
    case 'I': return PauliLetter::I;
    case 'X': return PauliLetter::X;
    case 'Y': return PauliLetter::Y;
    case 'Z': return PauliLetter::Z;
    default: throw std::invalid_argument(std::string("not a Pauli letter: '") + c + "'");
  }
}

// --- Permutation -----------------------------------------------------------

Permutation::Permutation(std::vector<int> map) : map_(std::move(map)) {
  std::vector<char> seen(map_.size(), 0);
  for (int v : map_) {
    if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("permutation map is not a bijection");
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  if (n < 0) throw std::invalid_argument("negative permutation size");
  std::vector<int> m(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = i;
  return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(map_.size());
  for (int i = 0; i < size(); ++i) inv[static_cast<std::size_t>(map_[static_cast<std::size_t>(i)])] = i;
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const noexcept {
  for (int i = 0; i < size(); ++i) {
    if (map_[static_cast<std::size_t>(i)] != i) return false;
  }
  return true;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  if (outer.size() != inner.size()) {
    throw DimensionError("cannot compose permutations of different sizes");
  }
  std::vector<int> m(static_cast<std::size_t>(inner.size()));
  for (int i = 0; i < inner.size(); ++i) m[static_cast<std::size_t>(i)] = outer(inner(i));
  return Permutation(std::move(m));
}

// --- PauliTerm -------------------------------------------------------------

namespace {

std::uint64_t register_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

void check_register(int n) {
  if (n <= 0 || n > kMaxPauliQubits) {
    throw std::invalid_argument("qubit count must be in [1, 64], got " + std::to_string(n));
  }
}

}  // namespace

PauliTerm::PauliTerm(int n_qubits, std::uint64_t x, std::uint64_t z, double coefficient)
    : n_qubits_(n_qubits), x_(x), z_(z), coefficient_(coefficient) {
  check_register(n_qubits);
  if (((x | z) & ~register_mask(n_qubits)) != 0) {
    throw std::invalid_argument("Pauli word acts outside the register");
  }
  if (!std::isfinite(coefficient)) throw std::invalid_argument("Pauli coefficient is not finite");
}

PauliTerm::PauliTerm(std::string_view word, double coefficient)
    : n_qubits_(static_cast<int>(word.size())), coefficient_(coefficient) {
  check_register(n_qubits_);
  if (!std::isfinite(coefficient)) throw std::invalid_argument("Pauli coefficient is not finite");
  for (int q = 0; q < n_qubits_; ++q) {
    auto l = static_cast<std::uint8_t>(pauli_letter_from_char(word[static_cast<std::size_t>(q)]));
    // I=00, X=x, Y=xz, Z=z.
    if (l == 1 || l == 2) x_ |= std::uint64_t{1} << q;
    if (l == 2 || l == 3) z_ |= std::uint64_t{1} << q;
  }
}

PauliLetter PauliTerm::letter(int qubit) const {
  if (qubit < 0 || qubit >= n_qubits_) throw std::out_of_range("qubit index out of range");
  bool xb = (x_ >> qubit) & 1U;
  bool zb = (z_ >> qubit) & 1U;
  if (xb && zb) return PauliLetter::Y;
  if (xb) return PauliLetter::X;
  if (zb) return PauliLetter::Z;
  return PauliLetter::I;
}

int PauliTerm::weight() const noexcept { return std::popcount(x_ | z_); }
int PauliTerm::y_count() const noexcept { return std::popcount(x_ & z_); }

std::string PauliTerm::word_string() const {
  std::string s(static_cast<std::size_t>(n_qubits_), 'I');
  for (int q = 0; q < n_qubits_; ++q) s[static_cast<std::size_t>(q)] = to_char(letter(q));
  return s;
}

// --- PauliSum --------------------------------------------------------------

PauliSum::PauliSum(int n_qubits) : n_qubits_(n_qubits) { check_register(n_qubits); }

PauliSum::PauliSum(int n_qubits, std::vector<PauliTerm> terms) : PauliSum(n_qubits) {
  terms_.reserve(terms.size());
  for (const auto& t : terms) add(t);
}

void PauliSum::add(const PauliTerm& term) {
  if (term.n_qubits() != n_qubits_) {
    throw DimensionError("term on " + std::to_string(term.n_qubits()) +
                         " qubits added to a sum on " + std::to_string(n_qubits_));
  }
  terms_.push_back(term);
}

void PauliSum::add_constant(double c) { add(PauliTerm(n_qubits_, 0, 0, c)); }

double PauliSum::constant() const noexcept {
  double c = 0.0;
  for (const auto& t : terms_) {
    if (t.is_identity()) c += t.coefficient();
  }
  return c;
}

PauliSum PauliSum::normalized(double drop_tolerance) const {
  // Canonical order: by weight, then by letters from qubit 0 upward.
  auto key = [this](const PauliTerm& t) {
    std::string letters;
    letters.reserve(static_cast<std::size_t>(n_qubits_));
    for (int q = 0; q < n_qubits_; ++q) {
      // Order I < X < Y < Z per position.
      letters.push_back(static_cast<char>('0' + static_cast<int>(t.letter(q))));
    }
    return std::make_pair(t.weight(), letters);
  };
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> merged;
  for (const auto& t : terms_) merged[{t.x_mask(), t.z_mask()}] += t.coefficient();
  std::vector<PauliTerm> out;
  out.reserve(merged.size());
  for (const auto& [word, c] : merged) {
    if (std::abs(c) < drop_tolerance) continue;
    out.emplace_back(n_qubits_, word.first, word.second, c);
  }
  std::vector<std::pair<std::pair<int, std::string>, std::size_t>> keys;
  keys.reserve(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) keys.emplace_back(key(out[i]), i);
  std::sort(keys.begin(), keys.end());
  PauliSum result(n_qubits_);
  result.terms_.reserve(out.size());
  for (const auto& k : keys) result.terms_.push_back(out[k.second]);
  return result;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.n_qubits_ != n_qubits_) throw DimensionError("cannot add Pauli sums of different widths");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

PauliSum& PauliSum::operator*=(double s) {
  for (auto& t : terms_) t = t.with_coefficient(t.coefficient() * s);
  return *this;
}

bool PauliSum::approx_equal(const PauliSum& other, double tol) const {
  if (other.n_qubits_ != n_qubits_) return false;
  PauliSum a = normalized();
  PauliSum b = other.normalized();
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a.terms_[i].same_word(b.terms_[i])) return false;
    if (std::abs(a.terms_[i].coefficient() - b.terms_[i].coefficient()) > tol) return false;
  }
  return true;
}

// --- Permutation action ----------------------------------------------------

namespace {

std::uint64_t permute_bits(std::uint64_t bits, const Permutation& p) {
  std::uint64_t out = 0;
  while (bits != 0) {
    int q = std::countr_zero(bits);
    bits &= bits - 1;
    out |= std::uint64_t{1} << p(q);
  }
  return out;
}

}  // namespace

PauliTerm apply_permutation(const PauliTerm& term, const Permutation& p) {
  if (p.size() != term.n_qubits()) {
    throw DimensionError("permutation on " + std::to_string(p.size()) +
                         " indices applied to a term on " + std::to_string(term.n_qubits()) + " qubits");
  }
  return {term.n_qubits(), permute_bits(term.x_mask(), p), permute_bits(term.z_mask(), p),
          term.coefficient()};
}

PauliSum apply_permutation(const PauliSum& h, const Permutation& p) {
  if (p.size() != h.n_qubits()) {
    throw DimensionError("permutation on " + std::to_string(p.size()) +
                         " indices applied to a sum on " + std::to_string(h.n_qubits()) + " qubits");
  }
  PauliSum out(h.n_qubits());
  for (const auto& t : h.terms()) out.add(apply_permutation(t, p));
  return out;
}

// --- Text format -----------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_double(std::string_view tok, double& out) {
  // from_chars rejects a leading '+'.
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

bool parse_int(std::string_view tok, int& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

}  // namespace

PauliSum parse_pauli_text(std::istream& in) {
  std::string raw;
  int line_no = 0;
  int n = 0;
  PauliSum sum;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto tokens = split_ws(line);
    if (n == 0) {
      if (tokens.size() != 2 || tokens[0] != "qubits" || !parse_int(tokens[1], n) || n <= 0 ||
          n > kMaxPauliQubits) {
        throw ParseError("expected header 'qubits <n>' with 1 <= n <= 64", line_no);
      }
      sum = PauliSum(n);
      continue;
    }
    double coefficient = 0.0;
    if (!parse_double(tokens[0], coefficient) || !std::isfinite(coefficient)) {
      throw ParseError("non-numeric coefficient '" + std::string(tokens[0]) + "'", line_no);
    }
    std::uint64_t x = 0, z = 0, used = 0;
    for (std::size_t k = 1; k < tokens.size(); ++k) {
      auto tok = tokens[k];
      char c = tok.front();
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
        throw ParseError("bad Pauli letter in '" + std::string(tok) + "'", line_no);
      }
      int q = -1;
      if (tok.size() < 2 || !parse_int(tok.substr(1), q) || q < 0) {
        throw ParseError("bad qubit index in '" + std::string(tok) + "'", line_no);
      }
      if (q >= n) {
        throw ParseError("qubit index " + std::to_string(q) + " >= " + std::to_string(n), line_no);
      }
      std::uint64_t bit = std::uint64_t{1} << q;
      if (used & bit) throw ParseError("qubit " + std::to_string(q) + " repeated", line_no);
      used |= bit;
      if (c == 'X' || c == 'Y') x |= bit;
      if (c == 'Y' || c == 'Z') z |= bit;
    }
    sum.add(PauliTerm(n, x, z, coefficient));
  }
  if (n == 0) throw ParseError("missing 'qubits <n>' header");
  return sum;
}

PauliSum parse_pauli_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_pauli_text(in);
}

PauliSum load_pauli_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open Pauli file '" + path + "'");
  try {
    return parse_pauli_text(in);
  } catch (const ParseError& e) {
    throw ParseError(path, e);
  }
}

void write_pauli_text(std::ostream& out, const PauliSum& h) {
  PauliSum canon = h.normalized();
  out << "qubits " << canon.n_qubits() << '\n';
  char buf[64];
  for (const auto& t : canon.terms()) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), t.coefficient());
    out.write(buf, ptr - buf);
    for (int q = 0; q < canon.n_qubits(); ++q) {
      PauliLetter l = t.letter(q);
      if (l != PauliLetter::I) out << ' ' << to_char(l) << q;
    }
    out << '\n';
  }
}

std::string to_pauli_string(const PauliSum& h) {
  std::ostringstream out;
  write_pauli_text(out, h);
  return out.str();
}

void save_pauli_file(const std::string& path, const PauliSum& h) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write Pauli file '" + path + "'");
  write_pauli_text(out, h);
}

}  // namespace permvqe

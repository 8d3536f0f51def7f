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

#include "permvqe/fermion.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "permvqe/error.hpp"

namespace permvqe {

// --- IntegralSet -----------------------------------------------------------

IntegralSet::IntegralSet(int n_spatial, int n_electrons) : n_spatial_(n_spatial), n_electrons_(n_electrons) {
  if (n_spatial <= 0 || 2 * n_spatial > kMaxPauliQubits) {
    throw std::invalid_argument("NORB must be in [1, 32]");
  }
  if (n_electrons <= 0 || n_electrons > 2 * n_spatial) {
    throw std::invalid_argument("NELEC must be in [1, 2*NORB]");
  }
  h1_ = Eigen::MatrixXd::Zero(n_spatial, n_spatial);
  const auto n = static_cast<std::size_t>(n_spatial);
  h2_.assign(n * n * n * n, 0.0);
}

void IntegralSet::set_one_body(int p, int q, double v) {
  h1_(p, q) = v;
  h1_(q, p) = v;
}

void IntegralSet::set_two_body(int p, int q, int r, int s, double v) {
  // (pq|rs) = (qp|rs) = (pq|sr) = (qp|sr) = (rs|pq) = (sr|pq) = (rs|qp) = (sr|qp)
  for (auto [a, b, c, d] : {std::array{p, q, r, s}, std::array{q, p, r, s}, std::array{p, q, s, r},
                            std::array{q, p, s, r}, std::array{r, s, p, q}, std::array{s, r, p, q},
                            std::array{r, s, q, p}, std::array{s, r, q, p}}) {
    h2_[index(a, b, c, d)] = v;
  }
}

double IntegralSet::symmetry_violation() const {
  double worst = (h1_ - h1_.transpose()).cwiseAbs().maxCoeff();
  const int n = n_spatial_;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double v = two_body(p, q, r, s);
          for (double w : {two_body(q, p, r, s), two_body(p, q, s, r), two_body(r, s, p, q)}) {
            worst = std::max(worst, std::abs(v - w));
          }
        }
  return worst;
}

// --- FCIDUMP ---------------------------------------------------------------

namespace {

constexpr double kSymmetryTolerance = 1e-10;

bool to_double(const std::string& tok, double& out) {
  std::string t = tok;
  // Fortran-style exponents.
  std::replace(t.begin(), t.end(), 'D', 'E');
  std::replace(t.begin(), t.end(), 'd', 'e');
  std::string_view v = t;
  if (!v.empty() && v.front() == '+') v.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  return ec == std::errc() && ptr == v.data() + v.size();
}

bool to_int(const std::string& tok, int& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

IntegralSet parse_fcidump(std::istream& in) {
  std::map<std::string, std::string> header;
  std::string raw;
  int line_no = 0;
  bool in_header = true;
  std::optional<IntegralSet> ints;
  std::vector<char> seen1, seen2;

  auto make_set = [&]() {
    auto norb = header.find("NORB");
    auto nelec = header.find("NELEC");
    if (norb == header.end()) throw ParseError("FCIDUMP header lacks NORB", line_no);
    if (nelec == header.end()) throw ParseError("FCIDUMP header lacks NELEC", line_no);
    int n = 0, ne = 0;
    if (!to_int(norb->second, n) || !to_int(nelec->second, ne)) {
      throw ParseError("NORB/NELEC must be integers", line_no);
    }
    try {
      ints.emplace(n, ne);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line_no);
    }
    for (auto [key, dst] : {std::pair{"CORE", &ints->core_energy}}) {
      if (auto it = header.find(key); it != header.end()) {
        if (!to_double(it->second, *dst)) throw ParseError(std::string(key) + " is not a number", line_no);
      }
    }
    for (auto [key, dst] : {std::pair{"EHF", &ints->e_hf}, std::pair{"EFCI", &ints->e_fci}}) {
      if (auto it = header.find(key); it != header.end()) {
        double v = 0.0;
        if (!to_double(it->second, v)) throw ParseError(std::string(key) + " is not a number", line_no);
        *dst = v;
      }
    }
    const auto sz = static_cast<std::size_t>(n);
    seen1.assign(sz * sz, 0);
    seen2.assign(sz * sz * sz * sz, 0);
  };

  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::string line = raw;
    for (auto& c : line) {
      if (c == ',') c = ' ';
    }
    std::istringstream tokens(line);
    std::vector<std::string> tok;
    for (std::string t; tokens >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (in_header) {
      const bool header_line = line.find('=') != std::string::npos || tok[0][0] == '&' || tok[0] == "/";
      if (header_line) {
        // Normalize "KEY= VALUE" and "KEY =VALUE" into a flat KEY VALUE list.
        std::string flat;
        for (char c : line) {
          if (c == '=') {
            flat += " = ";
          } else {
            flat += c;
          }
        }
        std::istringstream fs(flat);
        std::vector<std::string> ft;
        for (std::string t; fs >> t;) ft.push_back(t);
        for (std::size_t i = 0; i + 2 < ft.size(); ++i) {
          if (ft[i + 1] == "=") header[upper(ft[i])] = ft[i + 2];
        }
        continue;
      }
      in_header = false;
      make_set();
    }

    if (tok.size() != 5) throw ParseError("integral line needs '<value> p q r s'", line_no);
    double v = 0.0;
    int idx[4];
    if (!to_double(tok[0], v)) throw ParseError("non-numeric integral value '" + tok[0] + "'", line_no);
    for (int k = 0; k < 4; ++k) {
      if (!to_int(tok[static_cast<std::size_t>(k) + 1], idx[k])) throw ParseError("bad orbital index", line_no);
      if (idx[k] < 0 || idx[k] > ints->n_spatial()) {
        throw ParseError("orbital index " + std::to_string(idx[k]) + " out of range 0.." +
                             std::to_string(ints->n_spatial()),
                         line_no);
      }
    }
    const int n = ints->n_spatial();
    auto [p, q, r, s] = idx;
    if (p == 0 && q == 0 && r == 0 && s == 0) {
      ints->core_energy = v;
      continue;
    }
    if (r == 0 && s == 0) {
      if (p == 0 || q == 0) throw ParseError("one-body entry needs p, q >= 1", line_no);
      --p;
      --q;
      auto& flag_pq = seen1[static_cast<std::size_t>(p * n + q)];
      if (flag_pq && std::abs(ints->one_body(p, q) - v) > kSymmetryTolerance) {
        throw ParseError("one-body entry (" + std::to_string(p + 1) + "," + std::to_string(q + 1) +
                             ") conflicts with its symmetric partner",
                         line_no);
      }
      ints->set_one_body(p, q, v);
      flag_pq = 1;
      seen1[static_cast<std::size_t>(q * n + p)] = 1;
      continue;
    }
    if (p == 0 || q == 0 || r == 0 || s == 0) throw ParseError("two-body entry needs all indices >= 1", line_no);
    --p, --q, --r, --s;
    auto flat = [n](int a, int b, int c, int d) { return static_cast<std::size_t>(((a * n + b) * n + c) * n + d); };
    if (seen2[flat(p, q, r, s)] && std::abs(ints->two_body(p, q, r, s) - v) > kSymmetryTolerance) {
      throw ParseError("two-body entry violates the 8-fold index symmetry", line_no);
    }
    ints->set_two_body(p, q, r, s, v);
    for (auto [a, b, c, d] : {std::array{p, q, r, s}, std::array{q, p, r, s}, std::array{p, q, s, r},
                              std::array{q, p, s, r}, std::array{r, s, p, q}, std::array{s, r, p, q},
                              std::array{r, s, q, p}, std::array{s, r, q, p}}) {
      seen2[flat(a, b, c, d)] = 1;
    }
  }
  if (!ints) {
    if (header.empty()) throw ParseError("empty FCIDUMP");
    make_set();
  }
  return std::move(*ints);
}

IntegralSet load_fcidump(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open FCIDUMP '" + path + "'");
  try {
    return parse_fcidump(in);
  } catch (const ParseError& e) {
    throw ParseError(path, e);
  }
}

// --- Enums -----------------------------------------------------------------

std::string to_string(SpinOrbitalOrdering o) { return o == SpinOrbitalOrdering::blocked ? "blocked" : "interleaved"; }

std::string to_string(Encoding e) {
  switch (e) {
    case Encoding::jordan_wigner: return "jw";
    case Encoding::bravyi_kitaev: return "bk";
    case Encoding::parity: return "parity";
  }
  return "?";
}

SpinOrbitalOrdering parse_ordering(const std::string& s) {
  if (s == "blocked") return SpinOrbitalOrdering::blocked;
  if (s == "interleaved") return SpinOrbitalOrdering::interleaved;
  throw std::invalid_argument("unknown spin-orbital ordering '" + s + "' (blocked|interleaved)");
}

Encoding parse_encoding(const std::string& s) {
  if (s == "jw" || s == "jordan_wigner") return Encoding::jordan_wigner;
  if (s == "bk" || s == "bravyi_kitaev") return Encoding::bravyi_kitaev;
  if (s == "parity") return Encoding::parity;
  throw std::invalid_argument("unknown encoding '" + s + "' (jw|bk|parity)");
}

int spin_orbital_index(int q, int spin, int n_spatial, SpinOrbitalOrdering ordering) {
  return ordering == SpinOrbitalOrdering::blocked ? q + spin * n_spatial : 2 * q + spin;
}

// --- ComplexPauliSum -------------------------------------------------------

void ComplexPauliSum::add(std::uint64_t x, std::uint64_t z, std::complex<double> c) { terms_[{x, z}] += c; }

ComplexPauliSum& ComplexPauliSum::operator+=(const ComplexPauliSum& o) {
  for (const auto& [w, c] : o.terms_) terms_[w] += c;
  return *this;
}

ComplexPauliSum& ComplexPauliSum::operator*=(std::complex<double> s) {
  for (auto& [w, c] : terms_) c *= s;
  return *this;
}

ComplexPauliSum operator*(const ComplexPauliSum& a, const ComplexPauliSum& b) {
  if (a.n_qubits_ != b.n_qubits_) throw DimensionError("operator widths differ");
  ComplexPauliSum out(a.n_qubits_);
  static const std::complex<double> kPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      const auto [x1, z1] = wa;
      const auto [x2, z2] = wb;
      const std::uint64_t x3 = x1 ^ x2, z3 = z1 ^ z2;
      // W1 W2 = i^{y1 + y2 - y3} (-1)^{|z1 & x2|} W3.
      int k = std::popcount(x1 & z1) + std::popcount(x2 & z2) - std::popcount(x3 & z3) +
              2 * std::popcount(z1 & x2);
      k = ((k % 4) + 4) % 4;
      out.terms_[{x3, z3}] += ca * cb * kPow[k];
    }
  }
  return out;
}

PauliSum ComplexPauliSum::to_real(double tol, double imag_tol) const {
  PauliSum out(n_qubits_);
  for (const auto& [w, c] : terms_) {
    if (std::abs(c) < tol) continue;
    if (std::abs(c.imag()) > imag_tol) {
      throw std::domain_error("operator has a complex coefficient on a Pauli word; it is not Hermitian");
    }
    out.add(PauliTerm(n_qubits_, w.first, w.second, c.real()));
  }
  return out.normalized(tol);
}

// --- FermionEncoder --------------------------------------------------------

FermionEncoder::FermionEncoder(int n_modes, Encoding encoding) : n_(n_modes), encoding_(encoding) {
  if (n_modes <= 0 || n_modes > kMaxPauliQubits) throw std::invalid_argument("mode count must be in [1, 64]");
  const auto n = static_cast<std::size_t>(n_modes);
  rows_.assign(n, 0);
  for (int i = 0; i < n_; ++i) {
    std::uint64_t row = 0;
    switch (encoding) {
      case Encoding::jordan_wigner: row = std::uint64_t{1} << i; break;
      case Encoding::parity:
        for (int k = 0; k <= i; ++k) row |= std::uint64_t{1} << k;
        break;
      case Encoding::bravyi_kitaev: {
        // Fenwick tree: qubit i stores the parity of modes (i - lowbit(i+1), i].
        const int j = i + 1;
        const int low = j & -j;
        for (int k = j - low; k < j; ++k) row |= std::uint64_t{1} << k;
        break;
      }
    }
    rows_[static_cast<std::size_t>(i)] = row;
  }
  // Forward substitution for A^{-1}: f_i = b_i xor sum_{k<i, A_ik} f_k.
  std::vector<std::uint64_t> inv(n, 0);
  for (int i = 0; i < n_; ++i) {
    std::uint64_t r = std::uint64_t{1} << i;
    for (int k = 0; k < i; ++k) {
      if ((rows_[static_cast<std::size_t>(i)] >> k) & 1U) r ^= inv[static_cast<std::size_t>(k)];
    }
    inv[static_cast<std::size_t>(i)] = r;
  }
  update_.assign(n, 0);
  parity_.assign(n, 0);
  flip_.assign(n, 0);
  std::uint64_t prefix = 0;  // qubits whose parity gives sum_{k<j} f_k
  for (int j = 0; j < n_; ++j) {
    const std::uint64_t bit = std::uint64_t{1} << j;
    for (int i = 0; i < n_; ++i) {
      if (i != j && (rows_[static_cast<std::size_t>(i)] & bit)) update_[static_cast<std::size_t>(j)] |= std::uint64_t{1} << i;
    }
    parity_[static_cast<std::size_t>(j)] = prefix;
    flip_[static_cast<std::size_t>(j)] = inv[static_cast<std::size_t>(j)] & ~bit;
    prefix ^= inv[static_cast<std::size_t>(j)];
  }
}

ComplexPauliSum FermionEncoder::creation(int j) const {
  if (j < 0 || j >= n_) throw std::out_of_range("mode index out of range");
  const std::uint64_t bit = std::uint64_t{1} << j;
  ComplexPauliSum flip(n_), sign(n_), projector(n_);
  flip.add(update_set(j) | bit, 0, 1.0);
  sign.add(0, parity_set(j), 1.0);
  projector.add(0, 0, 0.5);
  projector.add(0, flip_set(j) | bit, 0.5);
  return flip * sign * projector;
}

ComplexPauliSum FermionEncoder::annihilation(int j) const {
  ComplexPauliSum c = creation(j);
  ComplexPauliSum out(n_);
  for (const auto& [w, coeff] : c.terms()) out.add(w.first, w.second, std::conj(coeff));
  return out;
}

PauliSum FermionEncoder::number(int j) const { return (creation(j) * annihilation(j)).to_real(); }

Bitstring FermionEncoder::encode_occupations(const Bitstring& occupations) const {
  if (static_cast<int>(occupations.size()) != n_) throw DimensionError("occupation vector width differs");
  std::uint64_t f = 0;
  for (int k = 0; k < n_; ++k) {
    if (occupations[static_cast<std::size_t>(k)]) f |= std::uint64_t{1} << k;
  }
  Bitstring b(occupations.size(), 0);
  for (int i = 0; i < n_; ++i) b[static_cast<std::size_t>(i)] = std::popcount(rows_[static_cast<std::size_t>(i)] & f) & 1;
  return b;
}

// --- Hamiltonian encoding --------------------------------------------------

PauliSum encode(const IntegralSet& ints, SpinOrbitalOrdering ordering, Encoding encoding) {
  const int ns = ints.n_spatial();
  const int n = 2 * ns;
  FermionEncoder enc(n, encoding);
  std::vector<ComplexPauliSum> cre, ann;
  for (int j = 0; j < n; ++j) {
    cre.push_back(enc.creation(j));
    ann.push_back(enc.annihilation(j));
  }
  auto so = [&](int q, int spin) { return spin_orbital_index(q, spin, ns, ordering); };

  // E[P][Q] = a^dagger_P a_Q
  std::vector<std::vector<std::optional<ComplexPauliSum>>> excitation(
      static_cast<std::size_t>(n), std::vector<std::optional<ComplexPauliSum>>(static_cast<std::size_t>(n)));
  auto E = [&](int P, int Q) -> const ComplexPauliSum& {
    auto& slot = excitation[static_cast<std::size_t>(P)][static_cast<std::size_t>(Q)];
    if (!slot) slot = cre[static_cast<std::size_t>(P)] * ann[static_cast<std::size_t>(Q)];
    return *slot;
  };

  ComplexPauliSum h(n);
  h.add(0, 0, ints.core_energy);
  constexpr double kSkip = 1e-14;
  // Effective one-body: h_pq - ½ Σ_r (pr|rq) from normal ordering.
  for (int sigma = 0; sigma < 2; ++sigma) {
    for (int p = 0; p < ns; ++p) {
      for (int q = 0; q < ns; ++q) {
        double v = ints.one_body(p, q);
        for (int r = 0; r < ns; ++r) v -= 0.5 * ints.two_body(p, r, r, q);
        if (std::abs(v) < kSkip) continue;
        ComplexPauliSum t = E(so(p, sigma), so(q, sigma));
        t *= v;
        h += t;
      }
    }
  }
  // ½ Σ (pq|rs) E_pq E_rs over spin-conserving index pairs.
  for (int s1 = 0; s1 < 2; ++s1) {
    for (int s2 = 0; s2 < 2; ++s2) {
      for (int p = 0; p < ns; ++p) {
        for (int q = 0; q < ns; ++q) {
          const ComplexPauliSum& epq = E(so(p, s1), so(q, s1));
          ComplexPauliSum acc(n);
          bool any = false;
          for (int r = 0; r < ns; ++r) {
            for (int s = 0; s < ns; ++s) {
              const double v = ints.two_body(p, q, r, s);
              if (std::abs(v) < kSkip) continue;
              ComplexPauliSum t = E(so(r, s2), so(s, s2));
              t *= 0.5 * v;
              acc += t;
              any = true;
            }
          }
          if (any) h += epq * acc;
        }
      }
    }
  }
  return h.to_real();
}

Bitstring hartree_fock_occupations(int n_electrons, int n_spatial, SpinOrbitalOrdering ordering) {
  if (n_electrons < 0 || n_electrons > 2 * n_spatial) {
    throw std::invalid_argument("electron count exceeds the number of spin-orbitals");
  }
  Bitstring occ(static_cast<std::size_t>(2 * n_spatial), 0);
  for (int e = 0; e < n_electrons; ++e) {
    occ[static_cast<std::size_t>(spin_orbital_index(e / 2, e % 2, n_spatial, ordering))] = 1;
  }
  return occ;
}

Bitstring hartree_fock_bitstring(int n_electrons, int n_spatial, SpinOrbitalOrdering ordering,
                                 const Permutation& p, Encoding encoding) {
  if (p.size() != 2 * n_spatial) {
    throw DimensionError("permutation on " + std::to_string(p.size()) + " indices for " +
                         std::to_string(2 * n_spatial) + " spin-orbitals");
  }
  const Bitstring occ = hartree_fock_occupations(n_electrons, n_spatial, ordering);
  const Bitstring encoded = FermionEncoder(2 * n_spatial, encoding).encode_occupations(occ);
  Bitstring out(encoded.size(), 0);
  for (int i = 0; i < p.size(); ++i) out[static_cast<std::size_t>(p(i))] = encoded[static_cast<std::size_t>(i)];
  return out;
}

double hartree_fock_energy(const IntegralSet& ints) {
  // Occupied (spatial, spin) pairs in aufbau order.
  std::vector<std::pair<int, int>> occ;
  for (int e = 0; e < ints.n_electrons(); ++e) occ.emplace_back(e / 2, e % 2);
  double e = ints.core_energy;
  for (auto [p, sp] : occ) e += ints.one_body(p, p);
  for (auto [p, sp] : occ) {
    for (auto [r, sr] : occ) {
      e += 0.5 * ints.two_body(p, p, r, r);
      if (sp == sr) e -= 0.5 * ints.two_body(p, r, r, p);
    }
  }
  return e;
}

}  // namespace permvqe

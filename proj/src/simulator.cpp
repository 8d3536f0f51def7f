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

#include "permvqe/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "permvqe/error.hpp"

namespace permvqe {

namespace {

constexpr cdouble kI{0.0, 1.0};

cdouble i_power(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

double parity_sign(std::uint64_t v) { return (std::popcount(v) & 1) ? -1.0 : 1.0; }

}  // namespace

std::string to_string(const Gate& g) {
  std::ostringstream out;
  switch (g.kind) {
    case GateKind::ry: out << "ry(" << g.theta << ") q" << g.q0; break;
    case GateKind::rz: out << "rz(" << g.theta << ") q" << g.q0; break;
    case GateKind::x: out << "x q" << g.q0; break;
    case GateKind::cnot: out << "cnot q" << g.q0 << " q" << g.q1; break;
    case GateKind::cz: out << "cz q" << g.q0 << " q" << g.q1; break;
    case GateKind::givens:
      out << "givens(" << g.theta << ", " << g.phi << ") q" << g.q0 << " q" << g.q1;
      break;
  }
  return out.str();
}

// --- StateVector -----------------------------------------------------------

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits <= 0 || n_qubits > kMaxSimulatorQubits) {
    throw LimitError("statevector width must be in [1, " + std::to_string(kMaxSimulatorQubits) +
                     "], got " + std::to_string(n_qubits));
  }
  amps_.assign(std::size_t{1} << n_qubits, cdouble{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, std::vector<cdouble> amplitudes) : StateVector(n_qubits) {
  if (amplitudes.size() != amps_.size()) {
    throw DimensionError("amplitude vector has length " + std::to_string(amplitudes.size()) +
                         ", expected " + std::to_string(amps_.size()));
  }
  amps_ = std::move(amplitudes);
  if (std::abs(norm() - 1.0) > 1e-10) throw std::invalid_argument("state is not normalized");
}

StateVector StateVector::basis_state(int n_qubits, std::uint64_t index) {
  StateVector s(n_qubits);
  if (index >= s.dimension()) throw std::out_of_range("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::from_bits(std::span<const std::uint8_t> bits) {
  std::uint64_t index = 0;
  for (std::size_t q = 0; q < bits.size(); ++q) {
    if (bits[q]) index |= std::uint64_t{1} << q;
  }
  return basis_state(static_cast<int>(bits.size()), index);
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::check_qubit(int q) const {
  if (q < 0 || q >= n_qubits_) {
    throw std::out_of_range("qubit " + std::to_string(q) + " outside a " + std::to_string(n_qubits_) +
                            "-qubit register");
  }
}

void StateVector::apply(const Gate& g) {
  check_qubit(g.q0);
  if (g.two_qubit()) {
    check_qubit(g.q1);
    if (g.q0 == g.q1) throw std::invalid_argument("two-qubit gate on a repeated qubit");
  }
  const std::size_t dim = amps_.size();
  const std::size_t m0 = std::size_t{1} << g.q0;
  switch (g.kind) {
    case GateKind::ry: {
      const double c = std::cos(0.5 * g.theta), s = std::sin(0.5 * g.theta);
      for (std::size_t k = 0; k < dim; ++k) {
        if (k & m0) continue;
        cdouble a0 = amps_[k], a1 = amps_[k | m0];
        amps_[k] = c * a0 - s * a1;
        amps_[k | m0] = s * a0 + c * a1;
      }
      break;
    }
    case GateKind::rz: {
      const cdouble e0 = std::polar(1.0, -0.5 * g.theta), e1 = std::polar(1.0, 0.5 * g.theta);
      for (std::size_t k = 0; k < dim; ++k) amps_[k] *= (k & m0) ? e1 : e0;
      break;
    }
    case GateKind::x: {
      for (std::size_t k = 0; k < dim; ++k) {
        if (!(k & m0)) std::swap(amps_[k], amps_[k | m0]);
      }
      break;
    }
    case GateKind::cnot: {
      const std::size_t m1 = std::size_t{1} << g.q1;
      for (std::size_t k = 0; k < dim; ++k) {
        if ((k & m0) && !(k & m1)) std::swap(amps_[k], amps_[k | m1]);
      }
      break;
    }
    case GateKind::cz: {
      const std::size_t both = m0 | (std::size_t{1} << g.q1);
      for (std::size_t k = 0; k < dim; ++k) {
        if ((k & both) == both) amps_[k] = -amps_[k];
      }
      break;
    }
    case GateKind::givens: {
      // |01> means q0 = 0, q1 = 1.
      const std::size_t m1 = std::size_t{1} << g.q1;
      const double c = std::cos(g.theta), s = std::sin(g.theta);
      const cdouble ep = std::polar(s, g.phi), em = std::polar(s, -g.phi);
      for (std::size_t k = 0; k < dim; ++k) {
        if ((k & m0) || (k & m1)) continue;
        const std::size_t k01 = k | m1, k10 = k | m0;
        cdouble v01 = amps_[k01], v10 = amps_[k10];
        amps_[k01] = c * v01 + ep * v10;
        amps_[k10] = em * v01 - c * v10;
      }
      break;
    }
  }
}

void StateVector::apply(std::span<const Gate> gates) {
  for (const auto& g : gates) apply(g);
}

void StateVector::apply_pauli(int q, PauliLetter letter) {
  check_qubit(q);
  const std::size_t m = std::size_t{1} << q;
  const std::size_t dim = amps_.size();
  switch (letter) {
    case PauliLetter::I: break;
    case PauliLetter::X:
      for (std::size_t k = 0; k < dim; ++k) {
        if (!(k & m)) std::swap(amps_[k], amps_[k | m]);
      }
      break;
    case PauliLetter::Y:
      // Y|0> = i|1>, Y|1> = -i|0>.
      for (std::size_t k = 0; k < dim; ++k) {
        if (k & m) continue;
        cdouble a0 = amps_[k], a1 = amps_[k | m];
        amps_[k] = -kI * a1;
        amps_[k | m] = kI * a0;
      }
      break;
    case PauliLetter::Z:
      for (std::size_t k = 0; k < dim; ++k) {
        if (k & m) amps_[k] = -amps_[k];
      }
      break;
  }
}

StateVector apply_circuit(StateVector state, std::span<const Gate> gates) {
  state.apply(gates);
  return state;
}

StateVector permute_state(const StateVector& state, const Permutation& p) {
  if (p.size() != state.n_qubits()) throw DimensionError("permutation width differs from state width");
  std::vector<cdouble> out(state.dimension());
  for (std::size_t k = 0; k < state.dimension(); ++k) {
    std::size_t dst = 0;
    for (int q = 0; q < state.n_qubits(); ++q) {
      if ((k >> q) & 1U) dst |= std::size_t{1} << p(q);
    }
    out[dst] = state[k];
  }
  return StateVector(state.n_qubits(), std::move(out));
}

// --- Expectation values ----------------------------------------------------

namespace {

// <psi| i^{y} X^x Z^z |psi> where Z acts first.
cdouble raw_word_expectation(std::span<const cdouble> psi, std::uint64_t x, std::uint64_t z) {
  cdouble acc{0.0, 0.0};
  for (std::size_t k = 0; k < psi.size(); ++k) {
    double sign = parity_sign(k & z);
    acc += std::conj(psi[k ^ x]) * psi[k] * sign;
  }
  return acc * i_power(std::popcount(x & z));
}

}  // namespace

double word_expectation(const StateVector& state, const PauliTerm& word) {
  if (word.n_qubits() != state.n_qubits()) throw DimensionError("word width differs from state width");
  return raw_word_expectation(state.amplitudes(), word.x_mask(), word.z_mask()).real();
}

double expectation(const StateVector& state, const PauliSum& h) {
  if (h.n_qubits() != state.n_qubits()) {
    throw DimensionError("Hamiltonian on " + std::to_string(h.n_qubits()) + " qubits, state on " +
                         std::to_string(state.n_qubits()));
  }
  cdouble acc{0.0, 0.0};
  for (const auto& t : h.terms()) {
    acc += t.coefficient() * raw_word_expectation(state.amplitudes(), t.x_mask(), t.z_mask());
  }
  return acc.real();
}

CompiledHamiltonian::CompiledHamiltonian(const PauliSum& h) : n_qubits_(h.n_qubits()) {
  if (n_qubits_ > kMaxSimulatorQubits) throw LimitError("Hamiltonian too wide to compile");
  const std::size_t dim = std::size_t{1} << n_qubits_;
  constant_diag_.assign(dim, 0.0);
  std::map<std::uint64_t, std::size_t> index;
  const PauliSum merged = h.normalized();
  for (const auto& t : merged.terms()) {
    if (t.x_mask() == 0) {
      for (std::size_t k = 0; k < dim; ++k) constant_diag_[k] += t.coefficient() * parity_sign(k & t.z_mask());
      continue;
    }
    auto [it, inserted] = index.try_emplace(t.x_mask(), groups_.size());
    if (inserted) groups_.push_back({t.x_mask(), std::vector<cdouble>(dim, cdouble{0.0, 0.0})});
    auto& diag = groups_[it->second].diag;
    const cdouble phase = t.coefficient() * i_power(t.y_count());
    for (std::size_t k = 0; k < dim; ++k) diag[k] += phase * parity_sign(k & t.z_mask());
  }
}

double CompiledHamiltonian::expectation(std::span<const cdouble> psi) const {
  if (psi.size() != constant_diag_.size()) throw DimensionError("state width differs from Hamiltonian width");
  double acc = 0.0;
  for (std::size_t k = 0; k < psi.size(); ++k) acc += constant_diag_[k] * std::norm(psi[k]);
  for (const auto& g : groups_) {
    // Real part of sum_k conj(psi[k^x]) d[k] psi[k].
    double part = 0.0;
    const cdouble* d = g.diag.data();
    for (std::size_t k = 0; k < psi.size(); ++k) {
      const cdouble a = std::conj(psi[k ^ g.x]) * psi[k];
      part += a.real() * d[k].real() - a.imag() * d[k].imag();
    }
    acc += part;
  }
  return acc;
}

void CompiledHamiltonian::apply(std::span<const cdouble> psi, std::span<cdouble> out) const {
  if (psi.size() != constant_diag_.size() || out.size() != psi.size()) {
    throw DimensionError("state width differs from Hamiltonian width");
  }
  for (std::size_t k = 0; k < psi.size(); ++k) out[k] = constant_diag_[k] * psi[k];
  for (const auto& g : groups_) {
    for (std::size_t k = 0; k < psi.size(); ++k) out[k ^ g.x] += g.diag[k] * psi[k];
  }
}

// --- Reduced density matrices ---------------------------------------------

DensityMatrix reduced_density_matrix(const StateVector& state, std::span<const int> qubits) {
  const int n = state.n_qubits();
  for (int q : qubits) {
    if (q < 0 || q >= n) throw std::out_of_range("RDM qubit index out of range");
  }
  if (qubits.size() == 1) {
    const std::size_t m = std::size_t{1} << qubits[0];
    DensityMatrix rho = DensityMatrix::Zero(2, 2);
    for (std::size_t k = 0; k < state.dimension(); ++k) {
      if (k & m) continue;
      cdouble a0 = state[k], a1 = state[k | m];
      rho(0, 0) += a0 * std::conj(a0);
      rho(0, 1) += a0 * std::conj(a1);
      rho(1, 1) += a1 * std::conj(a1);
    }
    rho(1, 0) = std::conj(rho(0, 1));
    return rho;
  }
  if (qubits.size() == 2) {
    if (qubits[0] == qubits[1]) throw std::invalid_argument("RDM qubits must be distinct");
    const std::size_t ma = std::size_t{1} << qubits[0], mb = std::size_t{1} << qubits[1];
    const std::size_t offs[4] = {0, ma, mb, ma | mb};
    DensityMatrix rho = DensityMatrix::Zero(4, 4);
    for (std::size_t k = 0; k < state.dimension(); ++k) {
      if ((k & ma) || (k & mb)) continue;
      cdouble a[4];
      for (int i = 0; i < 4; ++i) a[i] = state[k | offs[i]];
      for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) rho(i, j) += a[i] * std::conj(a[j]);
      }
    }
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < i; ++j) rho(i, j) = std::conj(rho(j, i));
    }
    return rho;
  }
  throw std::invalid_argument("RDM supports one or two qubits");
}

// --- Noisy estimation ------------------------------------------------------

void NoiseModel::validate() const {
  if (!(p1 >= 0.0 && p1 <= 1.0) || !(p2 >= 0.0 && p2 <= 1.0)) {
    throw std::invalid_argument("noise probabilities must lie in [0, 1]");
  }
  if (shots <= 0) throw std::invalid_argument("shots must be positive");
}

namespace {

struct ErrorSite {
  std::uint32_t gate;
  int qubit;
};

// Error pattern: sorted entries site * 4 + letter (letter in 1..3).
using ErrorPattern = std::vector<std::uint32_t>;

struct PatternHash {
  std::size_t operator()(const ErrorPattern& p) const noexcept {
    std::size_t h = p.size();
    for (auto v : p) h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

class TrajectorySampler {
 public:
  TrajectorySampler(int n_qubits, std::span<const Gate> gates, const NoiseModel& noise)
      : n_qubits_(n_qubits), gates_(gates.begin(), gates.end()), noise_(noise) {
    for (std::uint32_t g = 0; g < gates_.size(); ++g) {
      const auto& gate = gates_[g];
      auto& cls = gate.two_qubit() ? two_ : one_;
      cls.push_back(static_cast<std::uint32_t>(sites_.size()));
      sites_.push_back({g, gate.q0});
      if (gate.two_qubit()) {
        cls.push_back(static_cast<std::uint32_t>(sites_.size()));
        sites_.push_back({g, gate.q1});
      }
    }
    StateVector s(n_qubits_);
    prefix_.reserve(gates_.size() + 1);
    prefix_.push_back(s);
    for (const auto& g : gates_) {
      s.apply(g);
      prefix_.push_back(s);
    }
  }

  const StateVector& ideal() const { return prefix_.back(); }

  template <class Rng>
  void sample(Rng& rng, ErrorPattern& out) const {
    out.clear();
    sample_class(rng, one_, noise_.p1, out);
    sample_class(rng, two_, noise_.p2, out);
    std::sort(out.begin(), out.end());
  }

  StateVector evolve(const ErrorPattern& pattern) const {
    const std::uint32_t first_gate = sites_[pattern.front() >> 2].gate;
    StateVector s = prefix_[first_gate + 1];
    std::size_t e = 0;
    for (std::uint32_t g = first_gate; g < gates_.size(); ++g) {
      if (g != first_gate) s.apply(gates_[g]);
      while (e < pattern.size() && sites_[pattern[e] >> 2].gate == g) {
        s.apply_pauli(sites_[pattern[e] >> 2].qubit, static_cast<PauliLetter>(pattern[e] & 3U));
        ++e;
      }
    }
    return s;
  }

 private:
  template <class Rng>
  static void sample_class(Rng& rng, const std::vector<std::uint32_t>& sites, double p, ErrorPattern& out) {
    if (p <= 0.0 || sites.empty()) return;
    std::uniform_int_distribution<std::uint32_t> letter(1, 3);
    if (p >= 1.0) {
      for (auto s : sites) out.push_back(s * 4 + letter(rng));
      return;
    }
    std::geometric_distribution<std::int64_t> gap(p);
    std::int64_t pos = -1;
    while (true) {
      pos += gap(rng) + 1;
      if (pos >= static_cast<std::int64_t>(sites.size())) break;
      out.push_back(sites[static_cast<std::size_t>(pos)] * 4 + letter(rng));
    }
  }

  int n_qubits_;
  std::vector<Gate> gates_;
  NoiseModel noise_;
  std::vector<ErrorSite> sites_;
  std::vector<std::uint32_t> one_, two_;  // site indices by gate class
  std::vector<StateVector> prefix_;       // ideal state after each gate
};

}  // namespace

NoisyEstimate noisy_expectation(int n_qubits, std::span<const Gate> state_prep, const PauliSum& h,
                                const NoiseModel& noise) {
  noise.validate();
  if (h.n_qubits() != n_qubits) throw DimensionError("Hamiltonian width differs from circuit width");
  TrajectorySampler sampler(n_qubits, state_prep, noise);
  const PauliSum canon = h.normalized();

  // Single-error trajectories dominate at low error rates; cache their states.
  std::unordered_map<ErrorPattern, StateVector, PatternHash> single_cache;

  NoisyEstimate est;
  double variance = 0.0;
  ErrorPattern pattern;
  std::uint64_t word_index = 0;
  for (const auto& term : canon.terms()) {
    if (term.is_identity()) {
      est.mean += term.coefficient();
      continue;
    }
    std::seed_seq seq{static_cast<std::uint32_t>(noise.seed), static_cast<std::uint32_t>(noise.seed >> 32),
                      static_cast<std::uint32_t>(word_index), static_cast<std::uint32_t>(word_index >> 32)};
    ++word_index;
    std::mt19937_64 rng(seq);

    std::unordered_map<ErrorPattern, int, PatternHash> counts;
    int clean = 0;
    for (int shot = 0; shot < noise.shots; ++shot) {
      sampler.sample(rng, pattern);
      if (pattern.empty()) {
        ++clean;
      } else {
        ++counts[pattern];
      }
    }
    // Deterministic iteration order for the binomial draws.
    std::vector<std::pair<ErrorPattern, int>> ordered(counts.begin(), counts.end());
    std::sort(ordered.begin(), ordered.end());

    std::int64_t plus = 0;
    auto draw = [&](const StateVector& s, int count) {
      double e = word_expectation(s, term);
      double p_plus = std::clamp(0.5 * (1.0 + e), 0.0, 1.0);
      std::binomial_distribution<int> outcome(count, p_plus);
      plus += outcome(rng);
    };
    if (clean > 0) draw(sampler.ideal(), clean);
    for (const auto& [pat, count] : ordered) {
      if (pat.size() == 1) {
        auto it = single_cache.find(pat);
        if (it == single_cache.end()) it = single_cache.emplace(pat, sampler.evolve(pat)).first;
        draw(it->second, count);
      } else {
        draw(sampler.evolve(pat), count);
      }
    }
    const double shots = static_cast<double>(noise.shots);
    const double mean = (2.0 * static_cast<double>(plus) - shots) / shots;
    est.mean += term.coefficient() * mean;
    variance += term.coefficient() * term.coefficient() * (1.0 - mean * mean) / shots;
  }
  est.standard_error = std::sqrt(std::max(0.0, variance));
  return est;
}

}  // namespace permvqe

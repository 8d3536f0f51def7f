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

#include "permvqe/dense.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <limits>
#include <random>

#include "permvqe/error.hpp"

namespace permvqe {

namespace {

cdouble word_phase(const PauliTerm& t, std::uint64_t k) {
  // i^{y} (-1)^{|k & z|}
  int power = t.y_count() + 2 * (std::popcount(k & t.z_mask()) & 1);
  switch (power & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void check_cap(const PauliSum& h, int cap) {
  if (h.n_qubits() > cap) {
    throw LimitError("dense realization of " + std::to_string(h.n_qubits()) +
                     " qubits exceeds the cap of " + std::to_string(cap));
  }
}

bool is_real_symmetric(const PauliSum& h) {
  for (const auto& t : h.terms()) {
    if (t.y_count() & 1) return false;
  }
  return true;
}

std::vector<std::uint64_t> sector_basis(int n, std::optional<int> weight) {
  std::vector<std::uint64_t> basis;
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t k = 0; k < dim; ++k) {
    if (!weight || std::popcount(k) == *weight) basis.push_back(k);
  }
  return basis;
}

// Restricted matrix <b_i|H|b_j> over the listed basis states.
template <class Matrix>
Matrix restricted_matrix(const PauliSum& h, const std::vector<std::uint64_t>& basis) {
  const std::size_t m = basis.size();
  const std::uint64_t dim = std::uint64_t{1} << h.n_qubits();
  std::vector<std::int64_t> position(dim, -1);
  for (std::size_t i = 0; i < m; ++i) position[basis[i]] = static_cast<std::int64_t>(i);
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (const auto& t : h.terms()) {
    for (std::size_t j = 0; j < m; ++j) {
      const std::uint64_t k = basis[j];
      const std::int64_t row = position[k ^ t.x_mask()];
      if (row < 0) continue;
      const cdouble v = t.coefficient() * word_phase(t, k);
      if constexpr (std::is_same_v<typename Matrix::Scalar, double>) {
        out(row, static_cast<Eigen::Index>(j)) += v.real();
      } else {
        out(row, static_cast<Eigen::Index>(j)) += v;
      }
    }
  }
  return out;
}

template <class Vec>
GroundState package(const PauliSum& h, const std::vector<std::uint64_t>& basis, double e0, double e1,
                    const Vec& v, double degeneracy_gap) {
  std::vector<cdouble> amps(std::size_t{1} << h.n_qubits(), cdouble{0.0, 0.0});
  double norm = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) norm += std::norm(cdouble(v(static_cast<Eigen::Index>(i))));
  norm = std::sqrt(norm);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    amps[basis[i]] = cdouble(v(static_cast<Eigen::Index>(i))) / norm;
  }
  GroundState gs{e0, StateVector(h.n_qubits(), std::move(amps)), e1 - e0, false};
  gs.degenerate = gs.gap < degeneracy_gap;
  return gs;
}

// Lanczos with full reorthogonalization over the full register, projected
// onto the requested sector each step.
GroundState lanczos_ground_state(const PauliSum& h, const std::vector<std::uint64_t>& basis,
                                 const GroundStateOptions& options) {
  CompiledHamiltonian op(h);
  const std::size_t dim = std::size_t{1} << h.n_qubits();
  std::vector<char> in_sector(dim, 0);
  for (auto k : basis) in_sector[k] = 1;
  auto project = [&](std::vector<cdouble>& v) {
    for (std::size_t k = 0; k < dim; ++k) {
      if (!in_sector[k]) v[k] = 0.0;
    }
  };
  auto dot = [&](const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
    cdouble s{0.0, 0.0};
    for (std::size_t k = 0; k < dim; ++k) s += std::conj(a[k]) * b[k];
    return s;
  };

  const int max_iter = static_cast<int>(std::min<std::size_t>(basis.size(), 400));
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> gauss;
  std::vector<std::vector<cdouble>> q;
  std::vector<cdouble> v(dim);
  for (auto& a : v) a = gauss(rng);
  project(v);
  double nv = std::sqrt(dot(v, v).real());
  for (auto& a : v) a /= nv;
  q.push_back(v);
  std::vector<double> alpha, beta;
  std::vector<cdouble> w(dim);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_iter; ++it) {
    op.apply(q.back(), w);
    project(w);
    double a = dot(q.back(), w).real();
    alpha.push_back(a);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& qk : q) {
        cdouble c = dot(qk, w);
        for (std::size_t k = 0; k < dim; ++k) w[k] -= c * qk[k];
      }
    }
    double b = std::sqrt(dot(w, w).real());
    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      t(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    tri.compute(t);
    double e0 = tri.eigenvalues()(0);
    bool converged = std::abs(b * tri.eigenvectors()(m - 1, 0)) < 1e-11 || std::abs(e0 - prev) < 1e-14;
    prev = e0;
    if (converged || b < 1e-12 || it + 1 == max_iter) break;
    beta.push_back(b);
    for (auto& x : w) x /= b;
    q.push_back(w);
  }
  const auto m = static_cast<Eigen::Index>(alpha.size());
  std::vector<cdouble> psi(dim, cdouble{0.0, 0.0});
  for (Eigen::Index i = 0; i < m; ++i) {
    const double c = tri.eigenvectors()(i, 0);
    const auto& qi = q[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < dim; ++k) psi[k] += c * qi[k];
  }
  double norm = std::sqrt(dot(psi, psi).real());
  for (auto& a : psi) a /= norm;
  const double e0 = tri.eigenvalues()(0);
  const double e1 = m > 1 ? tri.eigenvalues()(1) : std::numeric_limits<double>::infinity();
  GroundState gs{e0, StateVector(h.n_qubits(), std::move(psi)), e1 - e0, false};
  gs.degenerate = gs.gap < options.degeneracy_gap;
  return gs;
}

}  // namespace

Eigen::MatrixXcd to_dense(const PauliSum& h, int cap) {
  check_cap(h, cap);
  const std::uint64_t dim = std::uint64_t{1} << h.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& t : h.terms()) {
    for (std::uint64_t k = 0; k < dim; ++k) {
      m(static_cast<Eigen::Index>(k ^ t.x_mask()), static_cast<Eigen::Index>(k)) += t.coefficient() * word_phase(t, k);
    }
  }
  return m;
}

Eigen::VectorXd dense_spectrum(const PauliSum& h, int cap) {
  check_cap(h, cap);
  const PauliSum canon = h.normalized();
  const auto basis = sector_basis(h.n_qubits(), std::nullopt);
  if (is_real_symmetric(canon)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(restricted_matrix<Eigen::MatrixXd>(canon, basis),
                                                       Eigen::EigenvaluesOnly);
    return es.eigenvalues();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_dense(canon, cap), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

GroundState ground_state(const PauliSum& h, const GroundStateOptions& options) {
  check_cap(h, options.cap);
  const PauliSum canon = h.normalized();
  const auto basis = sector_basis(h.n_qubits(), options.hamming_weight);
  if (basis.empty()) throw std::invalid_argument("requested Hamming-weight sector is empty");
  const double inf = std::numeric_limits<double>::infinity();
  if (basis.size() > (std::size_t{1} << options.dense_limit)) {
    return lanczos_ground_state(canon, basis, options);
  }
  if (is_real_symmetric(canon)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(restricted_matrix<Eigen::MatrixXd>(canon, basis));
    const auto& ev = es.eigenvalues();
    return package(canon, basis, ev(0), ev.size() > 1 ? ev(1) : inf, es.eigenvectors().col(0),
                   options.degeneracy_gap);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(restricted_matrix<Eigen::MatrixXcd>(canon, basis));
  const auto& ev = es.eigenvalues();
  return package(canon, basis, ev(0), ev.size() > 1 ? ev(1) : inf, es.eigenvectors().col(0),
                 options.degeneracy_gap);
}

}  // namespace permvqe

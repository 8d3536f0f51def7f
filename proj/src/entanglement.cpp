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

#include "permvqe/entanglement.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

#include "permvqe/error.hpp"

namespace permvqe {

double entropy(const DensityMatrix& rho, LogBase base) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix must be square");
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-8) {
    throw std::invalid_argument("density matrix trace is " + std::to_string(tr) + ", expected 1");
  }
  Eigen::SelfAdjointEigenSolver<DensityMatrix> es(rho, Eigen::EigenvaluesOnly);
  const double scale = base == LogBase::two ? 1.0 / std::log(2.0) : 1.0;
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l > kEntropyCutoff) s -= l * std::log(l);
  }
  return std::max(0.0, s * scale);
}

EntanglementMap::EntanglementMap(Eigen::MatrixXd values, LogBase base) : values_(std::move(values)), base_(base) {
  if (values_.rows() != values_.cols()) throw std::invalid_argument("entanglement map must be square");
  for (Eigen::Index i = 0; i < values_.rows(); ++i) {
    if (values_(i, i) != 0.0) throw std::invalid_argument("entanglement map diagonal must be zero");
    for (Eigen::Index j = 0; j < i; ++j) {
      if (std::abs(values_(i, j) - values_(j, i)) > 1e-12) {
        throw std::invalid_argument("entanglement map must be symmetric");
      }
    }
  }
}

EntanglementMap EntanglementMap::zeros(int n) { return EntanglementMap(Eigen::MatrixXd::Zero(n, n)); }

int EntanglementMap::entangled_qubit_count(double threshold) const {
  int count = 0;
  for (Eigen::Index i = 0; i < values_.rows(); ++i) {
    if (values_.row(i).maxCoeff() > threshold) ++count;
  }
  return count;
}

std::string EntanglementMap::to_json() const {
  nlohmann::json j;
  j["n"] = n();
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(n()));
  for (int i = 0; i < n(); ++i) {
    for (int k = 0; k < n(); ++k) rows[static_cast<std::size_t>(i)].push_back(values_(i, k));
  }
  j["I"] = rows;
  j["log_base"] = base_ == LogBase::two ? nlohmann::json(2) : nlohmann::json("e");
  return j.dump();
}

std::string EntanglementMap::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  for (int i = 0; i < n(); ++i) {
    for (int k = 0; k < n(); ++k) out << (k ? "," : "") << values_(i, k);
    out << '\n';
  }
  return out.str();
}

EntanglementMap mutual_information_map(const StateVector& state, LogBase base) {
  const int n = state.n_qubits();
  std::vector<double> single(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int q[1] = {i};
    single[static_cast<std::size_t>(i)] = entropy(reduced_density_matrix(state, q), base);
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int q[2] = {i, j};
      const double sij = entropy(reduced_density_matrix(state, q), base);
      const double v = std::max(0.0, 0.5 * (single[static_cast<std::size_t>(i)] + single[static_cast<std::size_t>(j)] - sij));
      m(i, j) = m(j, i) = v;
    }
  }
  return EntanglementMap(std::move(m), base);
}

EntanglementMap permute_map(const EntanglementMap& map, const Permutation& p) {
  if (p.size() != map.n()) throw DimensionError("permutation width differs from map width");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(map.n(), map.n());
  for (int i = 0; i < map.n(); ++i) {
    for (int j = 0; j < map.n(); ++j) m(p(i), p(j)) = map(i, j);
  }
  return EntanglementMap(std::move(m), map.log_base());
}

double ConnectivityDistance::weight(int i, int j) const {
  const double d = distance(i, j);
  if (beta == 2.0) return d * d;
  return std::pow(d, beta);
}

void ConnectivityDistance::validate() const {
  if (!(beta > 0.0)) throw std::invalid_argument("connectivity exponent beta must be positive");
}

double cost(const EntanglementMap& map, const ConnectivityDistance& conn) {
  conn.validate();
  double c = 0.0;
  for (int i = 0; i < map.n(); ++i) {
    for (int j = i + 1; j < map.n(); ++j) c += conn.weight(i, j) * map(i, j);
  }
  return c;
}

double permuted_cost(const EntanglementMap& map, const ConnectivityDistance& conn, const Permutation& p) {
  if (p.size() != map.n()) throw DimensionError("permutation width differs from map width");
  conn.validate();
  double c = 0.0;
  for (int i = 0; i < map.n(); ++i) {
    for (int j = i + 1; j < map.n(); ++j) c += conn.weight(p(i), p(j)) * map(i, j);
  }
  return c;
}

}  // namespace permvqe

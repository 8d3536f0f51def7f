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


// Thin pybind11 layer. Structured results cross the boundary as the
// library's JSON serializations and are decoded on the Python side.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "permvqe/ansatz.hpp"
#include "permvqe/dense.hpp"
#include "permvqe/entanglement.hpp"
#include "permvqe/error.hpp"
#include "permvqe/fermion.hpp"
#include "permvqe/ising.hpp"
#include "permvqe/ordering.hpp"
#include "permvqe/pauli.hpp"
#include "permvqe/vqe.hpp"

namespace py = pybind11;
using namespace permvqe;

namespace {

StateVector to_state(const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& a) {
  const auto n = static_cast<std::size_t>(a.size());
  int q = 0;
  while ((std::size_t{1} << q) < n) ++q;
  std::vector<cdouble> amps(a.data(), a.data() + n);
  return StateVector(q, std::move(amps));
}

py::array_t<std::complex<double>> to_array(const StateVector& s) {
  const auto amps = s.amplitudes();
  return py::array_t<std::complex<double>>(static_cast<py::ssize_t>(amps.size()), amps.data());
}

VqeConfig make_config(const PauliSum& h, const std::string& ansatz, int depth, int trials, int max_evals,
                      std::uint64_t seed, const std::string& entangler, const std::optional<std::vector<int>>& hf_bits,
                      bool prune, int threads) {
  VqeConfig c;
  c.ansatz.family = parse_ansatz_family(ansatz);
  c.ansatz.n_qubits = h.n_qubits();
  c.ansatz.depth = depth;
  c.ansatz.entangler = parse_entangler(entangler);
  c.ansatz.prune = prune;
  if (hf_bits) c.ansatz.hf_bits = Bitstring(hf_bits->begin(), hf_bits->end());
  c.trials = trials;
  c.max_evals = max_evals;
  c.seed = seed;
  c.threads = threads;
  c.validate();
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Entanglement-guided qubit relabeling for VQE (C++ core)";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<LimitError>(m, "LimitError", PyExc_RuntimeError);

  py::class_<PauliSum>(m, "PauliSum")
      .def_static("parse", [](const std::string& text) { return parse_pauli_string(text); })
      .def_static("load", &load_pauli_file)
      .def("save", [](const PauliSum& h, const std::string& path) { save_pauli_file(path, h); })
      .def_property_readonly("n_qubits", &PauliSum::n_qubits)
      .def_property_readonly("constant", &PauliSum::constant)
      .def("__len__", &PauliSum::size)
      .def("__str__", [](const PauliSum& h) { return to_pauli_string(h); })
      .def("terms", [](const PauliSum& h) {
        std::vector<std::pair<std::string, double>> out;
        for (const auto& t : h.terms()) out.emplace_back(t.word_string(), t.coefficient());
        return out;
      })
      .def("permuted", [](const PauliSum& h, std::vector<int> p) { return apply_permutation(h, Permutation(std::move(p))); },
           py::arg("permutation"), "Relabels qubit q as p[q].")
      .def("approx_equal", &PauliSum::approx_equal, py::arg("other"), py::arg("tol") = 1e-12);

  py::class_<IntegralSet>(m, "IntegralSet")
      .def_static("load", &load_fcidump)
      .def_property_readonly("n_spatial", &IntegralSet::n_spatial)
      .def_property_readonly("n_electrons", &IntegralSet::n_electrons)
      .def_readonly("core_energy", &IntegralSet::core_energy)
      .def_readonly("e_hf", &IntegralSet::e_hf)
      .def_readonly("e_fci", &IntegralSet::e_fci)
      .def("hartree_fock_energy", [](const IntegralSet& i) { return hartree_fock_energy(i); });

  m.def(
      "encode",
      [](const IntegralSet& ints, const std::string& ordering, const std::string& encoding) {
        return encode(ints, parse_ordering(ordering), parse_encoding(encoding));
      },
      py::arg("ints"), py::arg("ordering") = "blocked", py::arg("encoding") = "jw");

  m.def(
      "hartree_fock_bits",
      [](const IntegralSet& ints, const std::string& ordering, const std::string& encoding) {
        const auto b = hartree_fock_bitstring(ints.n_electrons(), ints.n_spatial(), parse_ordering(ordering),
                                              Permutation::identity(ints.n_spin_orbitals()), parse_encoding(encoding));
        return std::vector<int>(b.begin(), b.end());
      },
      py::arg("ints"), py::arg("ordering") = "blocked", py::arg("encoding") = "jw");

  m.def("ising_model", &ising_model, py::arg("index"));
  m.def("spectrum", [](const PauliSum& h) { return dense_spectrum(h); }, py::arg("h"));

  m.def(
      "ground_state",
      [](const PauliSum& h, std::optional<int> sector) {
        GroundStateOptions o;
        o.hamming_weight = sector;
        const GroundState gs = ground_state(h, o);
        return py::make_tuple(gs.energy, to_array(gs.state));
      },
      py::arg("h"), py::arg("sector") = py::none(), "Returns (energy, amplitudes).");

  m.def("expectation", [](const py::array_t<std::complex<double>>& psi, const PauliSum& h) {
    return expectation(to_state(psi), h);
  });

  m.def(
      "mutual_information_map",
      [](const py::array_t<std::complex<double>>& psi) { return mutual_information_map(to_state(psi)).values(); },
      py::arg("amplitudes"));

  m.def(
      "_find_ordering",
      [](const Eigen::MatrixXd& map, const std::string& method, double beta, int cap) {
        ConnectivityDistance conn;
        conn.beta = beta;
        return find_ordering(EntanglementMap(map), conn, parse_ordering_method(method), cap).to_json();
      },
      py::arg("map"), py::arg("method") = "auto", py::arg("beta") = 2.0, py::arg("cap") = kDefaultBruteForceCap);

  m.def(
      "_minimize",
      [](const PauliSum& h, const std::string& ansatz, int depth, int trials, int max_evals, std::uint64_t seed,
         const std::string& entangler, std::optional<std::vector<int>> hf_bits, bool prune, int threads) {
        const VqeConfig c = make_config(h, ansatz, depth, trials, max_evals, seed, entangler, hf_bits, prune, threads);
        py::gil_scoped_release release;
        return minimize(h, c).to_json();
      },
      py::arg("h"), py::arg("ansatz") = "ryrz", py::arg("depth") = 1, py::arg("trials") = 1,
      py::arg("max_evals") = 10000, py::arg("seed") = 0, py::arg("entangler") = "cnot",
      py::arg("hf_bits") = py::none(), py::arg("prune") = false, py::arg("threads") = 1);

  m.def(
      "_permvqe",
      [](const PauliSum& h, const std::string& ansatz, int depth, int trials, int max_evals, std::uint64_t seed,
         const std::string& entangler, std::optional<std::vector<int>> hf_bits, bool prune, int threads,
         int max_outer) {
        const VqeConfig c = make_config(h, ansatz, depth, trials, max_evals, seed, entangler, hf_bits, prune, threads);
        PermVqeOptions o;
        o.max_outer = max_outer;
        py::gil_scoped_release release;
        return permvqe::permvqe(h, c, o).to_json();
      },
      py::arg("h"), py::arg("ansatz") = "ryrz", py::arg("depth") = 1, py::arg("trials") = 1,
      py::arg("max_evals") = 10000, py::arg("seed") = 0, py::arg("entangler") = "cnot",
      py::arg("hf_bits") = py::none(), py::arg("prune") = false, py::arg("threads") = 1, py::arg("max_outer") = 3);

  m.attr("KCAL_PER_HARTREE") = kKcalPerHartree;
}

# Copyright 2026 The permvqe Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import os
from functools import reduce
from pathlib import Path

import numpy as np
import pytest

import permvqe

DATA = Path(os.environ.get("PERMVQE_DATA_DIR", Path(__file__).resolve().parents[2] / "data")) / "fixtures"

PAULI = {
    "I": np.eye(2),
    "X": np.array([[0, 1], [1, 0]]),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.diag([1, -1]),
}


def dense(h):
    """Kronecker-product matrix; qubit 0 is the least significant bit."""
    n = h.n_qubits
    total = np.zeros((2**n, 2**n), dtype=complex)
    for word, c in h.terms():
        total += c * reduce(np.kron, [PAULI[ch] for ch in reversed(word)])
    return total


def test_parse_round_trip_and_permutation_spectrum():
    h = permvqe.PauliSum.parse("qubits 3\n0.5 X0 Z2\n-1.25 Y1\n0.3\n")
    assert h.n_qubits == 3 and len(h) == 3 and h.constant == pytest.approx(0.3)
    assert permvqe.PauliSum.parse(str(h)).approx_equal(h)
    p = h.permuted([2, 0, 1])
    np.testing.assert_allclose(np.linalg.eigvalsh(dense(p)), np.linalg.eigvalsh(dense(h)), atol=1e-12)
    np.testing.assert_allclose(permvqe.spectrum(h), np.linalg.eigvalsh(dense(h)), atol=1e-12)


def test_h2_encodings_reach_fci_header():
    ints = permvqe.IntegralSet.load(str(DATA / "h2_sto3g.fcidump"))
    for enc in ["jw", "bk", "parity"]:
        h = permvqe.encode(ints, "blocked", enc)
        assert np.linalg.eigvalsh(dense(h))[0] == pytest.approx(ints.e_fci, abs=1e-8)
    bits = permvqe.hartree_fock_bits(ints)
    assert bits == [1, 0, 1, 0]


def test_bell_state_map():
    psi = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    m = permvqe.mutual_information_map(psi)
    assert m.shape == (2, 2) and m[0, 1] == pytest.approx(1.0, abs=1e-12)


def test_ground_state_map_and_ordering_on_ising():
    h = permvqe.ising_model(1)
    e0, psi = permvqe.ground_state(h)
    assert e0 == pytest.approx(-4 - np.sqrt(5), abs=1e-10)
    assert np.vdot(psi, dense(h) @ psi).real == pytest.approx(e0, abs=1e-10)
    m = permvqe.mutual_information_map(psi)
    i, j = np.unravel_index(np.argmax(m), m.shape)
    assert {int(i), int(j)} == {0, 5}
    r = permvqe.find_ordering(m, method="brute_force")
    pos = r["permutation"]
    assert abs(pos[0] - pos[5]) == 1 and r["cost_after"] < r["cost_before"]


def test_minimize_is_deterministic_and_variational():
    h = permvqe.ising_model(3)
    a = permvqe.minimize(h, depth=1, trials=2, max_evals=1500, seed=4)
    b = permvqe.minimize(h, depth=1, trials=2, max_evals=1500, seed=4)
    assert a == b
    assert a["energy"] >= np.linalg.eigvalsh(dense(h))[0] - 1e-9


def test_permvqe_from_product_state_stops_immediately():
    h = permvqe.PauliSum.parse("qubits 4\n1 Z0\n1 Z1\n1 Z2\n1 Z3\n")
    r = permvqe.permvqe(h, depth=1, trials=1, max_evals=2000)
    assert len(r["iterations"]) == 1
    assert r["final"]["energy"] == pytest.approx(-4, abs=1e-6)


def test_errors_map_to_python_exceptions(tmp_path):
    bad = tmp_path / "bad.pauli"
    bad.write_text("qubits 2\n1.0 Q0\n")
    with pytest.raises(permvqe.ParseError):
        permvqe.PauliSum.load(str(bad))
    with pytest.raises(permvqe.DimensionError):
        permvqe.ising_model(1).permuted([0, 1])

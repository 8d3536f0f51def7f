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

"""Entanglement-guided qubit relabeling for variational ground-state searches."""

import json as _json

from ._core import (
    KCAL_PER_HARTREE,
    DimensionError,
    IntegralSet,
    LimitError,
    ParseError,
    PauliSum,
    encode,
    expectation,
    ground_state,
    hartree_fock_bits,
    ising_model,
    mutual_information_map,
    spectrum,
)
from . import _core

__all__ = [
    "KCAL_PER_HARTREE",
    "DimensionError",
    "IntegralSet",
    "LimitError",
    "ParseError",
    "PauliSum",
    "encode",
    "expectation",
    "find_ordering",
    "ground_state",
    "hartree_fock_bits",
    "ising_model",
    "minimize",
    "mutual_information_map",
    "permvqe",
    "spectrum",
]


def find_ordering(map, method="auto", beta=2.0, cap=10):
    """Relabeling minimizing sum_ij |p(i) - p(j)|^beta I_ij; returns a dict."""
    return _json.loads(_core._find_ordering(map, method, beta, cap))


def minimize(h, **kwargs):
    """Best-of-trials VQE; keyword arguments mirror the CLI (ansatz, depth, trials, ...)."""
    return _json.loads(_core._minimize(h, **kwargs))


def permvqe(h, **kwargs):
    """VQE -> entanglement map -> relabeling loop; returns the full iteration record."""
    return _json.loads(_core._permvqe(h, **kwargs))

#!/usr/bin/env python3
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
"""Regenerate the FCIDUMP fixtures in data/fixtures with PySCF.

Each file carries its geometry, basis, active space and the PySCF version in
comment lines, and EHF / EFCI reference energies (Hartree, including the
core energy) in the namelist header.

    python3 scripts/make_fixtures.py [outdir]
"""

import math
import sys
from pathlib import Path

import numpy as np
import pyscf
from pyscf import ao2mo, fci, gto, mcscf, scf
from scipy.optimize import minimize_scalar

ANGSTROM_NOTE = "coordinates in Angstrom"


def rhf(atoms, basis, charge=0):
    mol = gto.M(atom=atoms, basis=basis, charge=charge, spin=0, unit="Angstrom", verbose=0)
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.kernel()
    assert mf.converged
    return mol, mf


def full_space(atoms, basis, charge=0):
    mol, mf = rhf(atoms, basis, charge)
    c = mf.mo_coeff
    h1 = c.T @ mf.get_hcore() @ c
    norb = c.shape[1]
    eri = ao2mo.restore(1, ao2mo.kernel(mol, c), norb)
    nelec = mol.nelectron
    efci, _ = fci.direct_spin1.kernel(h1, eri, norb, nelec, ecore=mol.energy_nuc(), conv_tol=1e-12)
    return dict(h1=h1, eri=eri, core=mol.energy_nuc(), norb=norb, nelec=nelec, ehf=mf.e_tot, efci=efci)


def active_space(atoms, basis, ncas, nelecas, charge=0):
    mol, mf = rhf(atoms, basis, charge)
    mc = mcscf.CASCI(mf, ncas, nelecas)
    mc.fcisolver.conv_tol = 1e-12
    h1, core = mc.get_h1eff()
    eri = ao2mo.restore(1, mc.get_h2eff(), ncas)
    efci = mc.kernel()[0]
    return dict(h1=h1, eri=eri, core=core, norb=ncas, nelec=nelecas, ehf=mf.e_tot, efci=efci)


def write_fcidump(path, ints, notes):
    norb = ints["norb"]
    lines = [f"# {n}" for n in notes]
    lines.append(f"# generated by scripts/make_fixtures.py with PySCF {pyscf.__version__}")
    lines.append(
        f" &FCI NORB={norb}, NELEC={ints['nelec']}, MS2=0, "
        f"EHF={ints['ehf']:.16e}, EFCI={ints['efci']:.16e},"
    )
    lines.append(" ORBSYM=" + ",".join("1" for _ in range(norb)) + ",")
    lines.append(" ISYM=1,")
    lines.append(" &END")
    eri, h1 = ints["eri"], ints["h1"]
    for p in range(norb):
        for q in range(p + 1):
            for r in range(norb):
                for s in range(r + 1):
                    if p * (p + 1) // 2 + q < r * (r + 1) // 2 + s:
                        continue
                    v = eri[p, q, r, s]
                    if abs(v) > 1e-12:
                        lines.append(f"{v: .16e} {p + 1} {q + 1} {r + 1} {s + 1}")
    for p in range(norb):
        for q in range(p + 1):
            if abs(h1[p, q]) > 1e-12:
                lines.append(f"{h1[p, q]: .16e} {p + 1} {q + 1} 0 0")
    lines.append(f"{ints['core']: .16e} 0 0 0 0")
    Path(path).write_text("\n".join(lines) + "\n")
    print(f"{path}: norb={norb} nelec={ints['nelec']} EHF={ints['ehf']:.10f} EFCI={ints['efci']:.10f}")


def optimized_side(build, basis, lo, hi, charge=0):
    """Side length (Angstrom) minimizing the FCI energy of a symmetric shape."""
    res = minimize_scalar(
        lambda a: full_space(build(a), basis, charge)["efci"],
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": 1e-6},
    )
    return float(res.x)


def square_h4(a):
    return f"H 0 0 0; H {a} 0 0; H {a} {a} 0; H 0 {a} 0"


def triangle_h3(a):
    return f"H 0 0 0; H {a} 0 0; H {a / 2} {a * math.sqrt(3) / 2} 0"


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data" / "fixtures")
    out.mkdir(parents=True, exist_ok=True)

    h2 = "H 0 0 0; H 0 0 0.735"
    write_fcidump(out / "h2_sto3g.fcidump", full_space(h2, "sto-3g"),
                  ["H2, sto-3g, R = 0.735 A, full space (2 orbitals, 2 electrons)", ANGSTROM_NOTE])
    write_fcidump(out / "h2_631g.fcidump", full_space(h2, "6-31g"),
                  ["H2, 6-31G, R = 0.735 A, full space (4 orbitals, 2 electrons)", ANGSTROM_NOTE])

    # T-shaped van der Waals complex: monomer axis perpendicular to the
    # line joining the centers, 3.4 A apart.
    t_shape = "H 0 0 -0.37; H 0 0 0.37; H 0 3.4 0; H 0 4.14 0"
    write_fcidump(out / "h2_dimer_sto3g.fcidump", full_space(t_shape, "sto-3g"),
                  ["(H2)2 T-shaped, sto-3g, r(HH) = 0.74 A, center separation 3.4 A", ANGSTROM_NOTE])

    a4 = optimized_side(square_h4, "sto-3g", 0.8, 1.6)
    write_fcidump(out / "h4_square_sto3g.fcidump", full_space(square_h4(a4), "sto-3g"),
                  [f"H4 square (D4h) saddle point, sto-3g, side {a4:.6f} A (FCI-optimized side)",
                   "stationary by symmetry; higher-order saddle of the H4 surface", ANGSTROM_NOTE])

    a3 = optimized_side(triangle_h3, "sto-3g", 0.6, 1.2, charge=1)
    write_fcidump(out / "h3plus_sto3g.fcidump", full_space(triangle_h3(a3), "sto-3g", charge=1),
                  [f"H3+ equilateral (D3h), sto-3g, side {a3:.6f} A (FCI-optimized side)", ANGSTROM_NOTE])

    lih = "Li 0 0 0; H 0 0 1.548"
    write_fcidump(out / "lih_sto3g_cas5.fcidump", active_space(lih, "sto-3g", 5, 2),
                  ["LiH, sto-3g, R = 1.548 A, Li 1s frozen; active space 5 orbitals, 2 electrons",
                   "core energy includes the frozen orbital", ANGSTROM_NOTE])

    zero = dict(h1=np.zeros((2, 2)), eri=np.zeros((2, 2, 2, 2)), core=0.75, norb=2, nelec=2,
                ehf=0.75, efci=0.75)
    write_fcidump(out / "zero_integrals.fcidump", zero, ["all integrals zero; core energy 0.75"])


if __name__ == "__main__":
    main()

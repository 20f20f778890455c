#!/usr/bin/env python3
# Copyright 2026 The uccvqe Authors
# SPDX-License-Identifier: Apache-2.0
"""Generate the committed STO-3G FCIDUMP fixtures under data/.

Writes data/<molecule>/<index>_<length>.fcidump with a .meta.json sidecar
holding reference energies from PySCF, plus data/manifest.csv. Only needed
to regenerate the fixtures; the C++ build and tests do not depend on it.
"""
import csv
import json
import math
import pathlib

import numpy as np
import pyscf
from pyscf import ao2mo, fci, gto, mp, scf
from pyscf.tools import fcidump

ROOT = pathlib.Path(__file__).resolve().parent.parent / "data"

# Radius of the circle the H4 rectangle is inscribed in (Angstrom). The
# scan variable is the shorter rectangle side.
H4_RING_RADIUS = 1.75


def grid(lo, hi, n=12):
    return [round(x, 4) for x in np.linspace(lo, hi, n)]


def chain(n, d):
    return [("H", (i * d, 0.0, 0.0)) for i in range(n)]


def water(r):
    half = math.radians(104.5 / 2)
    return [("O", (0.0, 0.0, 0.0)),
            ("H", (r * math.sin(half), 0.0, r * math.cos(half))),
            ("H", (-r * math.sin(half), 0.0, r * math.cos(half)))]


def h4_ring(d):
    h = math.sqrt(H4_RING_RADIUS ** 2 - (d / 2) ** 2)
    return [("H", (sx * d / 2, sy * h, 0.0))
            for sx, sy in ((1, 1), (-1, 1), (-1, -1), (1, -1))]


MOLECULES = {
    "H2": (lambda r: chain(2, r), grid(0.5, 2.7)),
    "H4_linear": (lambda r: chain(4, r), grid(0.5, 3.2)),
    "H4_ring": (h4_ring, grid(0.5, 2.4)),
    "H6": (lambda r: chain(6, r), grid(0.5, 3.2)),
    "LiH": (lambda r: [("Li", (0.0, 0.0, 0.0)), ("H", (0.0, 0.0, r))],
            grid(0.8, 4.0)),
    "H2O": (water, grid(0.65, 1.70)),
}

EXTRA = {"H2": [0.7414]}


def generate(name, builder, length, index, rows):
    atoms = builder(length)
    mol = gto.M(atom=atoms, basis="sto-3g", unit="Angstrom", verbose=0)
    mf = scf.RHF(mol)
    mf.conv_tol = 1e-12
    mf.conv_tol_grad = 1e-8
    mf.max_cycle = 500
    mf.kernel()
    if not mf.converged:
        mf = mf.newton()
        mf.kernel()
    if not mf.converged:
        raise RuntimeError(f"SCF did not converge for {name} at {length}: {atoms}")
    # Check stability so stretched geometries land on the lowest RHF solution.
    for _ in range(5):
        mo_new = mf.stability()[0]
        if np.allclose(mo_new, mf.mo_coeff):
            break
        dm = mf.make_rdm1(mo_new, mf.mo_occ)
        mf.kernel(dm0=dm)
    c = mf.mo_coeff
    h1 = c.T @ mf.get_hcore() @ c
    eri = ao2mo.restore(1, ao2mo.full(mol, c), c.shape[1])
    nmo = c.shape[1]
    out = ROOT / name / f"{index:02d}_{length:.4f}.fcidump"
    out.parent.mkdir(parents=True, exist_ok=True)
    fcidump.from_integrals(str(out), h1, eri, nmo, mol.nelectron,
                           mol.energy_nuc(), 0, tol=1e-14, float_format=" %.17g")
    e_fci = fci.FCI(mf).kernel()[0]
    e_mp2 = mp.MP2(mf).kernel()[0]
    meta = {
        "molecule": name,
        "bond_length": length,
        "basis": "sto-3g",
        "geometry": [[a, list(x)] for a, x in atoms],
        "e_hf": mf.e_tot,
        "e_nuc": mol.energy_nuc(),
        "e_mp2_corr": e_mp2,
        "e_fci": e_fci,
        "norb": nmo,
        "nelec": mol.nelectron,
        "package": f"pyscf {pyscf.__version__}",
    }
    out.with_suffix(".meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    rows.append((name, length, str(out.relative_to(ROOT))))


def main():
    rows = []
    for name, (builder, lengths) in MOLECULES.items():
        for index, length in enumerate(lengths):
            generate(name, builder, length, index, rows)
        for length in EXTRA.get(name, []):
            generate(name, builder, length, 99, rows)
    with open(ROOT / "manifest.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["label", "bond_length", "fcidump_path"])
        w.writerows(rows)


if __name__ == "__main__":
    main()

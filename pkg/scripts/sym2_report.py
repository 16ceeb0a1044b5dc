"""Decompose Sym^2 H^2 for K3^[2]-type under a polarization and report the pieces.

    python scripts/sym2_report.py --h 1,1
"""
from __future__ import annotations

import argparse
import time

from hkepw import hkinvariants as hk
from hkepw.hklattice import k3n_lattice


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--h", default="1,1", help="leading coordinates of h; the rest are zero")
    args = ap.parse_args()

    L = k3n_lattice(2)
    h = [int(x) for x in args.h.split(",")]
    h += [0] * (L.rank - len(h))
    t0 = time.perf_counter()
    model = hk.sym2_model(L.gram, 1)
    dec = hk.decompose_h4(model, h)
    dt = time.perf_counter() - t0
    print(f"q(h) = {L.qform(h)}")
    print(f"dim Sym^2 = {model.dim}")
    print(f"summand dims = {dec.dims}")
    print(f"B(q_dual, q_dual) = {model.pair(model.q_dual, model.q_dual)}")
    print(f"built in {dt:.2f}s")


if __name__ == "__main__":
    main()

"""List the walls crossed between two ample candidates for every shipped Picard fixture.

    python scripts/wall_survey.py
"""
from __future__ import annotations

import json
from importlib import resources

from hkepw import hklattice as hl


def load_fixtures():
    text = (resources.files("hkepw") / "data" / "picard_fixtures.json").read_text()
    return json.loads(text)


def sublattice(f) -> hl.EmbeddedSublattice:
    if "gram" in f:
        return hl.EmbeddedSublattice.whole(hl.IntegralLattice(tuple(tuple(r) for r in f["gram"])))
    ambient = hl.k3n_lattice(2) if f["ambient"] == "k3n2" else hl.IntegralLattice.from_json(f["ambient"])
    return hl.EmbeddedSublattice(ambient, tuple(tuple(r) for r in f["basis"]))


def main():
    for name, f in sorted(load_fixtures().items()):
        P = sublattice(f)
        walls = hl.separating_walls(P, f["h0"], f["h1"])
        verdict = hl.ht_ample_verdict(P, f["h0"], f["h1"])
        print(f"{name}: rank {P.rank}, {len(walls)} wall(s), h1 ample by criterion: {verdict.ample_by_HT}")
        for alpha, kind in walls:
            print(f"    {kind:12s} alpha = {list(alpha)}")


if __name__ == "__main__":
    main()

"""Sample graph Lagrangians, extract their sextics and tally genericity labels.

    python scripts/epw_campaign.py --trials 20 --seed 3 --jobs 4
"""
from __future__ import annotations

import argparse
import collections
import time
from concurrent.futures import ProcessPoolExecutor

from hkepw import epw
from hkepw.seeding import random_symmetric, random_vector, task_rng
from hkepw.symplag import graph_lagrangian, intersection_dim


def run_trial(task):
    seed, i = task
    rng = task_rng(seed, "campaign", i)
    A = graph_lagrangian(random_symmetric(rng))
    t0 = time.perf_counter()
    S = epw.sextic(A)
    elapsed = time.perf_counter() - t0
    # fraction of random points where the sextic and the incidence test agree
    agree = sum((S(v) == 0) == (intersection_dim(A, v) >= 1) for v in (random_vector(rng) for _ in range(50)))
    rep = epw.apparent_genericity(A, seed=rng.getrandbits(63))
    return i, len(S.poly.terms), elapsed, agree, rep.label


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    tasks = [(args.seed, i) for i in range(args.trials)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(run_trial, tasks))
    else:
        rows = [run_trial(t) for t in tasks]

    print("trial\tterms\tseconds\tagree/50\tlabel")
    for i, terms, dt, agree, label in rows:
        print(f"{i}\t{terms}\t{dt:.3f}\t{agree}\t{label}")
    labels = collections.Counter(r[4] for r in rows)
    print("labels:", dict(sorted(labels.items())))


if __name__ == "__main__":
    main()

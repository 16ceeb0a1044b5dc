"""Command line: ``hkepw {epw,lattice,hk,period} <subcommand> ...``.

Exit codes: 0 success, 1 input error, 2 mathematically degenerate input.
Randomized subcommands depend only on --seed; --jobs never changes output.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable, Sequence

from . import epw, hkinvariants, hklattice, periods
from .linalg import Q, format_rational
from .seeding import random_symmetric, task_rng
from .symplag import LagrangianSubspace, graph_lagrangian


class Degenerate(Exception):
    pass


# ---------------------------------------------------------------- io helpers


def _resolve(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    shipped = resources.files("hkepw") / "data" / path
    if shipped.is_file():
        return Path(str(shipped))
    raise FileNotFoundError(f"no such file: {path}")


def _load_json(path: str):
    with open(_resolve(path)) as fh:
        return json.load(fh)


def _emit(args, payload) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, separators=(",", ":"))
    if getattr(args, "out", None):
        Path(args.out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _rational_list(s: str) -> list[Fraction]:
    return [Q(x) for x in s.split(",")]


def _int_list(s: str) -> list[int]:
    return [int(x) for x in s.split(",")]


def _lattice(spec: str) -> hklattice.IntegralLattice:
    if spec == "k3n2":
        return hklattice.k3n_lattice(2)
    if spec.startswith("k3n:"):
        return hklattice.k3n_lattice(int(spec[4:]))
    if spec.startswith("sum:"):
        return hklattice.build_lattice(spec[4:].split(","))
    return hklattice.IntegralLattice.from_json(_load_json(spec))


def _run_ordered(fn: Callable, items: Sequence, jobs: int) -> list:
    if jobs <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------- epw


def _load_lagrangian(args) -> LagrangianSubspace:
    return LagrangianSubspace.from_json(_load_json(args.inp))


def epw_sextic(args):
    form = epw.sextic(_load_lagrangian(args))
    if form.whole_space:
        raise Degenerate("Y_A = P(V)")
    _emit(args, form.to_json())


def epw_stratify(args):
    rep = epw.stratify_point(_load_lagrangian(args), _rational_list(args.v))
    _emit(args, {"k": rep.k, "stratum": rep.stratum, "tau_corank": rep.tau_corank})


def epw_classify(args):
    _emit(args, epw.classify_point(_load_lagrangian(args), _rational_list(args.v)).to_json())


def epw_witness_delta(args):
    w = epw.delta_witness(args.seed, args.index)
    _emit(args, {"lagrangian": w.A.to_json(), "point": [format_rational(x) for x in w.point], "k": w.k,
                 "certificate": "rank: dim(A ∩ F_w) = 3"})


def epw_witness_sigma(args):
    w = epw.sigma_witness(args.seed, args.index)
    _emit(args, {"lagrangian": w.A.to_json(), "W": [[format_rational(x) for x in r] for r in w.W],
                 "contains_wedge3": epw.contains_wedge3(w.A, w.W)})


def _genericity_seed(seed: int, i: int) -> int:
    return task_rng(seed, "genericity-seed", i).getrandbits(63)


def _sample_one(task: tuple[int, int]) -> dict:
    seed, i = task
    A = graph_lagrangian(random_symmetric(task_rng(seed, "sample", i)))
    rep = epw.apparent_genericity(A, seed=_genericity_seed(seed, i))
    return {"index": i, "lagrangian": A.to_json(), "label": rep.label, "max_k": rep.max_k,
            "decomposable_found": rep.decomposable_found}


def epw_sample(args):
    rows = _run_ordered(_sample_one, [(args.seed, i) for i in range(args.trials)], args.jobs)
    _emit(args, "\n".join(json.dumps(r, separators=(",", ":")) for r in rows))


# ---------------------------------------------------------------- lattice


def lattice_build(args):
    if args.summands:
        L = hklattice.build_lattice(args.summands.split(","))
    elif args.n is not None:
        L = hklattice.k3n_lattice(args.n)
    else:
        L = _lattice(args.lattice)
    p, m = L.signature()
    _emit(args, {"gram": [list(r) for r in L.gram], "rank": L.rank, "det": L.det(), "signature": [p, m],
                 "even": L.is_even})


def lattice_q(args):
    _emit(args, str(_lattice(args.lattice).qform(_int_list(args.v))))


def lattice_div(args):
    _emit(args, str(hklattice.divisibility(_lattice(args.lattice), _int_list(args.v))))


def lattice_orbit(args):
    _emit(args, "true" if hklattice.same_orbit_k3sq(_lattice(args.lattice), _int_list(args.v), _int_list(args.w)) else "false")


def _sublattice(args) -> hklattice.EmbeddedSublattice:
    obj = _load_json(args.inp)
    if "basis" in obj:
        return hklattice.EmbeddedSublattice.from_json(obj)
    return hklattice.EmbeddedSublattice.whole(hklattice.IntegralLattice.from_json(obj))


def lattice_walls(args):
    walls = hklattice.separating_walls(_sublattice(args), _int_list(args.h0), _int_list(args.h1))
    _emit(args, [{"alpha": list(a), "type": t} for a, t in walls])


def lattice_ample(args):
    _emit(args, hklattice.ht_ample_verdict(_sublattice(args), _int_list(args.h0), _int_list(args.L)).to_json())


# ---------------------------------------------------------------- hk


def hk_fujiki(args):
    L = _lattice(args.lattice)
    classes = [_rational_list(c) for c in args.classes.split(";")]
    _emit(args, format_rational(hkinvariants.fujiki_product(L.gram, Q(args.c), *classes)))


def hk_chi(args):
    _emit(args, str(hkinvariants.chi_k3sq(Q(args.q))))


def hk_salamon(args):
    res = hkinvariants.salamon_check(hkinvariants.BettiTable(tuple(_int_list(args.table))))
    _emit(args, f"holds\t{res.lhs}\t{res.rhs}" if res.holds else f"violated\t{res.lhs}\t{res.rhs}")


def hk_guan(args):
    if args.table:
        lines = ["b2\tb3\tb4"] + [f"{a}\t{b}\t{c}" for a, b, c in hkinvariants.guan_scan(args.max_b2)]
        _emit(args, "\n".join(lines))
    else:
        _emit(args, hkinvariants.guan_summary(args.max_b2))


def hk_betti(args):
    _emit(args, str(hkinvariants.betti_b2(args.klass)))


def hk_sym2(args):
    L = _lattice(args.lattice)
    model = hkinvariants.sym2_model(L.gram, Q(args.c))
    dec = hkinvariants.decompose_h4(model, _rational_list(args.h))
    d0, d2, d4 = dec.dims
    lines = ["summand\tdim", f"level0\t{d0}", f"level2\t{d2}", f"level4\t{d4}", f"total\t{d0 + d2 + d4}",
             f"B(q_dual,q_dual)\t{format_rational(model.pair(model.q_dual, model.q_dual))}"]
    _emit(args, "\n".join(lines))


# ---------------------------------------------------------------- period


def period_check(args):
    chk = periods.is_period(_lattice(args.lattice), _rational_list(args.x), _rational_list(args.y))
    _emit(args, {"is_period": chk.ok, "failing": list(chk.failing)})


def period_picard(args):
    p = periods.PeriodPoint.from_json(_load_json(args.inp))
    P = periods.picard_of_period(p)
    _emit(args, {"rank": P.rank, **P.to_json()})


def period_make(args):
    p = periods.period_orthogonal_to(_lattice(args.lattice), _int_list(args.alpha), max_height=args.bound)
    _emit(args, p.to_json())


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hkepw", description=__doc__.splitlines()[0])
    top = ap.add_subparsers(dest="group", required=True)

    def add(group, name, fn, *opts):
        p = group.add_parser(name)
        p.set_defaults(fn=fn)
        p.add_argument("--out")
        for names, kw in opts:
            p.add_argument(*names, **kw)
        return p

    inp = (("--in",), {"dest": "inp", "required": True})
    point = (("--v",), {"required": True, "help": "comma-separated rationals"})
    seed = (("--seed",), {"type": int, "default": 0})
    index = (("--index",), {"type": int, "default": 0})
    lat = (("--lattice",), {"default": "k3n2", "help": "k3n2, k3n:N, sum:U,E8(-1),<m>,... or a JSON file"})

    g = top.add_parser("epw").add_subparsers(dest="cmd", required=True)
    add(g, "sextic", epw_sextic, inp)
    add(g, "stratify", epw_stratify, inp, point)
    add(g, "classify", epw_classify, inp, point)
    add(g, "witness-delta", epw_witness_delta, seed, index)
    add(g, "witness-sigma", epw_witness_sigma, seed, index)
    add(g, "sample", epw_sample, seed, (("--trials",), {"type": int, "default": 10}),
        (("--jobs",), {"type": int, "default": 1}))

    g = top.add_parser("lattice").add_subparsers(dest="cmd", required=True)
    add(g, "build", lattice_build, lat, (("--summands",), {}), (("--n",), {"type": int}))
    add(g, "q", lattice_q, lat, point)
    add(g, "div", lattice_div, lat, point)
    add(g, "orbit", lattice_orbit, lat, point, (("--w",), {"required": True}))
    add(g, "walls", lattice_walls, inp, (("--h0",), {"required": True}), (("--h1",), {"required": True}))
    add(g, "ample", lattice_ample, inp, (("--h0",), {"required": True}), (("--L",), {"required": True}))

    g = top.add_parser("hk").add_subparsers(dest="cmd", required=True)
    add(g, "fujiki", hk_fujiki, lat, (("--c",), {"default": "1"}),
        (("--classes",), {"required": True, "help": "semicolon-separated classes"}))
    add(g, "chi", hk_chi, (("--q",), {"required": True}))
    add(g, "salamon", hk_salamon, (("--table",), {"required": True}))
    add(g, "guan", hk_guan, (("--max-b2",), {"type": int, "default": 30}), (("--table",), {"action": "store_true"}))
    add(g, "betti", hk_betti, (("--class",), {"dest": "klass", "required": True}))
    add(g, "sym2", hk_sym2, lat, (("--c",), {"default": "1"}), (("--h",), {"required": True}))

    g = top.add_parser("period").add_subparsers(dest="cmd", required=True)
    add(g, "check", period_check, lat, (("--x",), {"required": True}), (("--y",), {"required": True}))
    add(g, "picard", period_picard, inp)
    add(g, "make", period_make, lat, (("--alpha",), {"required": True}), (("--bound",), {"type": int, "default": 2}))
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; here 2 means degenerate input
        return 1 if exc.code else 0
    try:
        args.fn(args)
    except Degenerate as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except (epw.ChartError, epw.SexticError, periods.PeriodSearchError) as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except (ValueError, TypeError, KeyError, OSError, json.JSONDecodeError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

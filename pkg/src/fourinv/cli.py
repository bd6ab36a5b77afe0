"""Command-line front end.

Exit status: 0 on success, 1 on malformed input (including unknown suites
and bad flags), 2 when a mathematical hypothesis fails, 3 when a verified
identity fails or a report finds disagreeing values.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Sequence

from .coeffs import CoeffTable
from .errors import PreconditionError
from .invariants import (InvariantQuery, cobordism_invariant_blown, main_theorem_check,
                         witten_invariant)
from .io import (InputError, dumps, frac_str, load_manifold, manifold_to_json,
                 parse_class_spec, parse_hclass)
from .lattice import neg
from .manifold import blow_up, example_classes, example_xqn, is_scst
from .suites import SUITES, run_suite


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def _add_query_flags(p: argparse.ArgumentParser, need_lambda: bool) -> None:
    p.add_argument("--manifest", required=True, help="manifold JSON file")
    p.add_argument("--w", required=True, help="class spec for w")
    p.add_argument("--lambda", dest="lam", required=need_lambda, help="class spec for Λ")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--h", required=True, help='"r1,...,rn" or a class spec')
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--seeds", type=int, default=1, help="number of consecutive table seeds")
    p.add_argument("--max-delta", type=int, default=60)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="fourinv", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="evaluate the Donaldson invariant")
    _add_query_flags(p, need_lambda=False)
    p.add_argument("--mode", choices=["witten", "cobordism", "both"], default="witten")

    p = sub.add_parser("report", help="full main-theorem report over several seeds")
    _add_query_flags(p, need_lambda=True)
    p.add_argument("--no-strict", action="store_true",
                   help="do not require superconformal simple type")

    p = sub.add_parser("blowup", help="emit the blow-up of a manifold")
    p.add_argument("--manifest", required=True)

    p = sub.add_parser("check-scst", help="superconformal simple type test")
    p.add_argument("--manifest", required=True)
    p.add_argument("--w", required=True)

    p = sub.add_parser("examples", help="emit the X_q(n) model")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, default=0)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite_pos", nargs="?", metavar="SUITE")
    p.add_argument("--suite", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seeds", type=int, default=None)
    return ap


def _query(args, x, classes):
    rank = x.lattice.rank
    if args.delta > args.max_delta:
        raise PreconditionError("δ ≤ max-delta", f"δ={args.delta}, max-delta={args.max_delta}")
    w = parse_class_spec(args.w, classes, rank)
    h = parse_hclass(args.h, classes, rank)
    lam = parse_class_spec(args.lam, classes, rank) if args.lam else None
    return InvariantQuery(w, args.delta, args.m, h), lam


def _query_json(q: InvariantQuery, lam) -> dict:
    out = {"w": list(q.w), "delta": q.delta, "m": q.m, "h": [frac_str(a) for a in q.h]}
    if lam is not None:
        out["lambda"] = list(lam)
    return out


def cmd_compute(args) -> int:
    x, classes = load_manifold(args.manifest)
    q, lam = _query(args, x, classes)
    seeds = list(range(args.seed, args.seed + args.seeds))
    report: dict = {"query": _query_json(q, lam), "witten": None, "cobordism": []}
    values: list[Fraction] = []
    if args.mode in ("witten", "both"):
        wv = witten_invariant(x, q)
        report["witten"] = frac_str(wv)
        values.append(wv)
    if args.mode in ("cobordism", "both"):
        if lam is None:
            raise InputError("--lambda is required for the cobordism formula")
        lam_sq = x.lattice.pair(lam, lam)
        for s in seeds:
            t = CoeffTable(x.chi_h, x.c1sq - 1, lam_sq, q.m, seed=s)
            v = cobordism_invariant_blown(x, q, lam, t)
            report["cobordism"].append({"seed": s, "value": frac_str(v)})
            values.append(v)
    report["equal"] = len(set(values)) <= 1
    print(dumps(report))
    return 0


def cmd_report(args) -> int:
    x, classes = load_manifold(args.manifest)
    q, lam = _query(args, x, classes)
    seeds = list(range(args.seed, args.seed + args.seeds))
    rep = main_theorem_check(x, q, lam, seeds, strict=not args.no_strict)
    out = {
        "query": _query_json(q, lam),
        "witten": frac_str(rep.witten),
        "cobordism": [{"seed": s, "value": frac_str(v)} for s, v in rep.cobordism.items()],
        "equal": all(rep.equal_per_seed.values()),
        "seed_independent": rep.seed_independent,
    }
    print(dumps(out))
    return 0 if rep.ok else 3


def cmd_blowup(args) -> int:
    x, classes = load_manifold(args.manifest)
    xt = blow_up(x)
    named = {k: tuple(v) + (0,) for k, v in classes.items()}
    u = 1
    while f"e{u}" in named:
        u += 1
    named[f"e{u}"] = (0,) * x.lattice.rank + (1,)
    print(dumps(manifold_to_json(xt, named)))
    return 0


def cmd_check_scst(args) -> int:
    x, classes = load_manifold(args.manifest)
    w = parse_class_spec(args.w, classes, x.lattice.rank)
    print(dumps({"c": x.c, "scst": is_scst(x, w)}))
    return 0


def cmd_examples(args) -> int:
    if args.n < 0:
        raise PreconditionError("n ≥ 0")
    x = example_xqn(args.q, args.n)
    classes = dict(example_classes(args.q, args.n))
    classes["minusK0"] = neg(classes["K0"])
    print(dumps(manifold_to_json(x, classes)))
    return 0


def cmd_verify(args) -> int:
    name = args.suite or args.suite_pos
    if name is None:
        raise InputError("no suite given")
    if name != "all" and name not in SUITES:
        print(f"unknown suite {name!r}; known: {', '.join([*SUITES, 'all'])}", file=sys.stderr)
        return 1
    results = run_suite(name, seed=args.seed, trials=args.trials, seeds=args.seeds)
    ok = True
    for r in results:
        for c in r.checks:
            status = "PASS" if c.passed else "FAIL"
            print(f"{status}  {r.suite:<13} {c.name}")
            if not c.passed:
                ok = False
                print(f"      counterexample: {c.detail}")
    return 0 if ok else 3


COMMANDS = {
    "compute": cmd_compute,
    "report": cmd_report,
    "blowup": cmd_blowup,
    "check-scst": cmd_check_scst,
    "examples": cmd_examples,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InputError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry points.

Every subcommand prints a JSON report on stdout and diagnostics on stderr.
Exit status: 0 when the checked condition holds, 1 when it fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from typing import Any, List, Optional, Sequence

from . import criteria, extend, represent, space
from .exactla import ContractError, format_rat, rat
from .instance import (Instance, InputError, dumps, fixture_names, generate_instance, instance_to_data,
                       load_fixture, load_instance)
from .suite import run_suite

OK, FAILS, BAD_INPUT = 0, 1, 2

CRITERION_NAMES = {
    "full": criteria.FULL,
    "state_cover": criteria.STATE_SUP,
}


def to_json(obj: Any) -> Any:
    """Fractions become rational strings and infinities the string ``"inf"``."""
    if isinstance(obj, Fraction):
        return format_rat(obj)
    if isinstance(obj, float) and math.isinf(obj):
        return "inf"
    if isinstance(obj, dict):
        return {str(k): to_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_json(v) for v in obj]
    if hasattr(obj, "_asdict"):
        return to_json(obj._asdict())
    if hasattr(obj, "__dataclass_fields__"):
        return to_json({k: getattr(obj, k) for k in obj.__dataclass_fields__ if k != "lp"})
    return obj


def emit(report: dict) -> None:
    sys.stdout.write(dumps(to_json({"format": 1, **report})) + "\n")


def parse_vector(text: str) -> tuple:
    """``"1,-2/3"`` -> (1, -2/3)."""
    try:
        return tuple(rat(a) for a in text.split(","))
    except ContractError as exc:
        raise InputError("argv", f"bad vector {text!r}: {exc}") from None


def _alpha(inst: Instance, alpha: int) -> int:
    if not 0 <= alpha < len(inst.space.seminorms):
        raise InputError("argv", f"--alpha {alpha} out of range (space has {len(inst.space.seminorms)} seminorms)")
    return alpha


def _dim(inst: Instance, v: tuple, flag: str) -> tuple:
    if len(v) != inst.space.dim:
        raise InputError("argv", f"{flag} has length {len(v)}, space dimension is {inst.space.dim}")
    return v


# -- subcommands ----------------------------------------------------------------------

def cmd_check(args) -> int:
    inst = load_instance(args.file)
    alphas = [_alpha(inst, args.alpha)] if args.alpha is not None else range(len(inst.space.seminorms))
    names = [args.criterion] if args.criterion else list(CRITERION_NAMES)
    results = []
    for a in alphas:
        for name in names:
            rep = criteria.check_full(inst.space, a) if name == "full" else criteria.check_state_cover(inst.space, a)
            results.append({"alpha": a, "criterion": name, "holds": rep.holds, "witness": rep.witness})
    emit({"command": "check", "results": results})
    return OK if all(r["holds"] for r in results) else FAILS


def cmd_state(args) -> int:
    inst = load_instance(args.file)
    a = _alpha(inst, args.alpha)
    x0 = _dim(inst, parse_vector(args.x0), "--x0")
    cert = criteria.find_state(inst.space, a, x0)
    emit({"command": "state", "alpha": a, "x0": x0, "found": cert is not None, "certificate": cert})
    return OK if cert is not None else FAILS


def cmd_bnn(args) -> int:
    inst = load_instance(args.file)
    a = _alpha(inst, args.alpha)
    if args.subspace not in inst.subspaces:
        raise InputError("argv", f"no subspace labelled {args.subspace!r}")
    sub, fs = inst.subspaces[args.subspace]
    if args.functional not in fs:
        raise InputError("argv", f"subspace {args.subspace!r} has no functional {args.functional!r}")
    ep = extend.ExtensionProblem(inst.space, a, sub, fs[args.functional])
    res = extend.bnn_construct(ep) if args.condition == "dual" else extend.bnn_check(ep, int(args.condition))
    emit({"command": "bnn", "alpha": a, "result": res})
    return OK if res.extendable else FAILS


def cmd_decompose(args) -> int:
    inst = load_instance(args.file)
    a = _alpha(inst, args.alpha)
    u = _dim(inst, parse_vector(args.u), "--u")
    if args.gk:
        res = criteria.grosberg_krein(inst.space, a, u)
        emit({"command": "decompose", "alpha": a, "u": u, "gk": res})
        return OK if res.feasible and res.gap == 0 else FAILS
    try:
        v1, v2 = criteria.krein_decompose(inst.space, a, u)
    except criteria.DecompositionError as exc:
        emit({"command": "decompose", "alpha": a, "u": u, "feasible": False, "farkas": exc.farkas})
        return FAILS
    emit({"command": "decompose", "alpha": a, "u": u, "feasible": True, "v1": v1, "v2": v2})
    return OK


def cmd_represent(args) -> int:
    inst = load_instance(args.file)
    fs = represent.build_representation(inst.space)
    rep = represent.verify_representation(inst.space, fs)
    emit({"command": "represent", "vertices": fs.vertices, "report": rep})
    return OK if rep.injective and rep.bipositive and all(rep.isometric_everywhere) else FAILS


def cmd_additivity(args) -> int:
    inst = load_instance(args.file)
    a = _alpha(inst, args.alpha)
    f = _dim(inst, parse_vector(args.f), "--f")
    g = _dim(inst, parse_vector(args.g), "--g")
    res = extend.norm_additivity_check(inst.space, a, f, g)
    exact = True
    try:
        pair = extend.additivity_extension_witness(inst.space, a, f, g)
    except extend.HypothesisError as exc:
        pair, exact = exc.fallback, False
    witness = None if pair is None else {"w_f": pair[0], "w_h": pair[1]}
    emit({"command": "additivity", "alpha": a, "result": res, "witness": witness,
          "witness_is_characterization": exact})
    return OK if res.additive else FAILS


def cmd_quotient(args) -> int:
    inst = load_instance(args.file)
    a = _alpha(inst, args.alpha)
    q = space.quotient(inst.space, a)
    emit({"command": "quotient", "alpha": a, "projection": q.projection,
          "cone": q.space.cone.generators, "rows": q.space.seminorms[0].rows})
    return OK


def cmd_gen(args) -> int:
    inst = generate_instance(args.seed, args.dim)
    sys.stdout.write(dumps(instance_to_data(inst)) + "\n")
    return OK


def _seed_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        return range(int(lo), int(hi) + 1) if sep else range(int(lo), int(lo) + 1)
    except ValueError:
        raise InputError("argv", f"--seeds expects a..b, got {text!r}") from None


def cmd_suite(args) -> int:
    instances: List[Instance] = []
    if args.fixtures:
        instances += [load_fixture(n) for n in fixture_names()]
    if args.seeds:
        instances += [generate_instance(s) for s in _seed_range(args.seeds)]
    for path in args.files:
        instances.append(load_instance(path))
    if not instances:
        instances = [load_fixture(n) for n in fixture_names()]
    report = run_suite(instances)
    sys.stdout.write(dumps(to_json(report.to_data(timing=not args.no_timing))) + "\n")
    for d in report.disagreements:
        print(f"disagreement in {d['name']} (alpha={d['alpha']}, {d['kind']})", file=sys.stderr)
    return OK if report.verdict == "all-agree" else FAILS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ordrep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="fullness and state-cover criteria")
    p.add_argument("file")
    p.add_argument("--alpha", type=int)
    p.add_argument("--criterion", choices=sorted(CRITERION_NAMES))
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("state", help="a state attaining the seminorm at x0")
    p.add_argument("file")
    p.add_argument("--x0", required=True)
    p.add_argument("--alpha", type=int, default=0)
    p.set_defaults(run=cmd_state)

    p = sub.add_parser("bnn", help="positive norm-preserving extension of a subspace functional")
    p.add_argument("file")
    p.add_argument("--subspace", required=True)
    p.add_argument("--functional", required=True)
    p.add_argument("--alpha", type=int, default=0)
    p.add_argument("--condition", choices=["2", "3", "4", "5", "dual"], default="4")
    p.set_defaults(run=cmd_bnn)

    p = sub.add_parser("decompose", help="split a functional into positive parts")
    p.add_argument("file")
    p.add_argument("--u", required=True)
    p.add_argument("--alpha", type=int, default=0)
    p.add_argument("--gk", action="store_true", help="minimize the norm sum")
    p.set_defaults(run=cmd_decompose)

    p = sub.add_parser("represent", help="state vertices and the representation report")
    p.add_argument("file")
    p.set_defaults(run=cmd_represent)

    p = sub.add_parser("additivity", help="norm additivity of two positive functionals")
    p.add_argument("file")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--alpha", type=int, default=0)
    p.set_defaults(run=cmd_additivity)

    p = sub.add_parser("quotient", help="quotient by the kernel of a seminorm")
    p.add_argument("file")
    p.add_argument("--alpha", type=int, default=0)
    p.set_defaults(run=cmd_quotient)

    p = sub.add_parser("gen", help="print a random instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--dim", type=int)
    p.set_defaults(run=cmd_gen)

    p = sub.add_parser("suite", help="cross-check all criteria on fixtures and generated instances")
    p.add_argument("files", nargs="*")
    p.add_argument("--seeds", help="seed range a..b")
    p.add_argument("--fixtures", action="store_true")
    p.add_argument("--no-timing", action="store_true", help="omit timing for byte-stable output")
    p.set_defaults(run=cmd_suite)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except (ContractError, OSError) as exc:
        print(f"ordrep {args.command}: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())

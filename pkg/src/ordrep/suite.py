"""Cross-checking the equivalent representability conditions against each other.

For every instance and seminorm index the suite decides the same property
by independent routes and reports any disagreement:

- ``full``: order-interval fullness of the unit ball (one LP per signed row);
- ``state_cover``: the rows lie in ``conv(±V_alpha)`` (membership LPs);
- ``state_attain``: ``find_state`` succeeds at every probe point;
- ``isometric``: no ``x`` with ``p_alpha(x) > max_V |<v, x>|`` (sup-gap LPs);
- ``gk_rows``: every row of ``p_alpha`` splits into positive parts with no norm gap.

Probe points for ``state_attain`` are random plus the vertices of
``{x : max_V |<v, x>| <= 1}`` (and kernel directions), where the ratio
``p_alpha / max_V |<v, .>|`` peaks; so a failure cannot be missed.  When the
conditions hold the suite also checks a zero Grosberg-Krein gap on random
functionals and that additivity witnesses exist exactly for additive pairs.
BNN routes are compared on random subspaces.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence

from .cone import polytope_vertices
from .criteria import check_full, check_state_cover, find_state, grosberg_krein
from .exactla import RVec, ZERO, format_rat, null_space, rank, row_basis, transpose, matvec
from .extend import (CONDITIONS, ExtensionProblem, HypothesisError, additivity_extension_witness,
                     bnn_check, bnn_construct, norm_additivity_check, verify_extension, verify_violation)
from .instance import Instance, instance_to_data
from .represent import FiniteStateSpace, build_representation, sup_gap
from .space import CalibratedSpace, Subspace

CRITERIA = ("full", "state_cover", "state_attain", "isometric", "gk_rows")


@dataclass(frozen=True)
class SuiteConfig:
    state_samples: int = 20
    gk_samples: int = 20
    additivity_pairs: int = 10
    bnn_samples: int = 2


@dataclass
class Context:
    """Per-(instance, alpha) data shared by the checkers."""

    space: CalibratedSpace
    alpha: int
    states: FiniteStateSpace
    rng: random.Random
    config: SuiteConfig

    @property
    def vertices(self) -> Sequence[RVec]:
        return self.states.vertices[self.alpha]


Checker = Callable[[Context], tuple]


# -- random data ----------------------------------------------------------------------

def random_rat(rng: random.Random, bound: int = 6) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, 3))


def random_point(rng: random.Random, dim: int) -> RVec:
    return tuple(random_rat(rng) for _ in range(dim))


def random_row_functional(rng: random.Random, rows: Sequence[RVec]) -> RVec:
    """A random element of ``E'_alpha`` (the span of the rows)."""
    d = len(rows[0])
    coeffs = [Fraction(rng.randint(-3, 3)) for _ in rows]
    return tuple(sum((c * r[k] for c, r in zip(coeffs, rows)), ZERO) for k in range(d))


def random_positive(rng: random.Random, verts: Sequence[RVec]) -> RVec:
    """A nonnegative combination of states: positive, of finite norm."""
    d = len(verts[0])
    coeffs = [Fraction(rng.randint(0, 3), rng.randint(1, 2)) if rng.random() < 0.6 else ZERO for _ in verts]
    return tuple(sum((c * v[k] for c, v in zip(coeffs, verts)), ZERO) for k in range(d))


def probe_points(s: CalibratedSpace, alpha: int, verts: Sequence[RVec]) -> List[RVec]:
    """Points where ``p_alpha`` most exceeds the state supremum, if it does anywhere."""
    d = s.dim
    nonzero = [v for v in verts if any(v)]
    if not nonzero:
        return [tuple(Fraction(int(i == k)) for i in range(d)) for k in range(d)]
    kernel = null_space(nonzero, d)
    R = row_basis(nonzero, d)
    M = [matvec(R, v) for v in nonzero]    # <v, c R> in the coordinates c
    rows = [tuple(m) + (Fraction(1),) for m in M] + [tuple(-a for a in m) + (Fraction(1),) for m in M]
    coords = polytope_vertices(rows, len(R))
    RT = transpose(R)
    return list(kernel) + [matvec(RT, c) for c in coords]


# -- criteria -------------------------------------------------------------------------

def _full(ctx: Context):
    rep = check_full(ctx.space, ctx.alpha)
    return rep.holds, rep.witness


def _cover(ctx: Context):
    rep = check_state_cover(ctx.space, ctx.alpha, ctx.states)
    return rep.holds, rep.witness


def _attain(ctx: Context):
    points = [random_point(ctx.rng, ctx.space.dim) for _ in range(ctx.config.state_samples)]
    points += probe_points(ctx.space, ctx.alpha, ctx.vertices)
    for x0 in points:
        if find_state(ctx.space, ctx.alpha, x0) is None:
            return False, x0
    return True, None


def _isometric(ctx: Context):
    gap = sup_gap(ctx.space, ctx.alpha, ctx.vertices, positives=False)
    return gap is None, gap


def _gk_rows(ctx: Context):
    for a in ctx.space.seminorm(ctx.alpha).rows:
        res = grosberg_krein(ctx.space, ctx.alpha, a)
        if not res.feasible or res.gap != 0:
            return False, {"u": a, "gap": res.gap}
    return True, None


DEFAULT_CHECKERS: Dict[str, Checker] = {
    "full": _full,
    "state_cover": _cover,
    "state_attain": _attain,
    "isometric": _isometric,
    "gk_rows": _gk_rows,
}


# -- consequences of the conditions ---------------------------------------------------

def _gk_random(ctx: Context) -> List[dict]:
    bad = []
    rows = ctx.space.seminorm(ctx.alpha).rows
    for _ in range(ctx.config.gk_samples):
        u = random_row_functional(ctx.rng, rows)
        res = grosberg_krein(ctx.space, ctx.alpha, u)
        if not res.feasible or res.gap != 0:
            bad.append({"u": u, "gap": res.gap})
    return bad


def _additivity(ctx: Context, holds: bool) -> Dict[str, Any]:
    """Witness ⇔ additive when the conditions hold; witness ⇒ additive always."""
    verts = [v for v in ctx.vertices if any(v)]
    summary = {"pairs": 0, "additive": 0, "bad": []}
    if not verts:
        return summary
    pairs = [(random_positive(ctx.rng, verts), random_positive(ctx.rng, verts))
             for _ in range(ctx.config.additivity_pairs)]
    for f, g in pairs:
        add = norm_additivity_check(ctx.space, ctx.alpha, f, g).additive
        try:
            pair = additivity_extension_witness(ctx.space, ctx.alpha, f, g, ctx.states, strict=True)
            exact = True
        except HypothesisError as exc:
            pair, exact = exc.fallback, False
        summary["pairs"] += 1
        summary["additive"] += add
        if exact != holds:
            summary["bad"].append({"f": f, "g": g, "reason": "hypothesis check disagrees with criteria"})
            continue
        # under the hypothesis: witness <=> additive; otherwise only witness => additive
        wrong = (pair is not None) != add if exact else (pair is not None and not add)
        if wrong:
            summary["bad"].append({"f": f, "g": g, "additive": add, "witness": pair is not None})
    return summary


def random_subspace(rng: random.Random, dim: int) -> Subspace:
    k = rng.randint(1, min(2, dim))
    while True:
        basis = [tuple(Fraction(rng.randint(-3, 3)) for _ in range(dim)) for _ in range(k)]
        if rank(basis) == k:
            return Subspace(tuple(basis))


def bnn_agreement(s: CalibratedSpace, alpha: int, sub: Subspace, values: Sequence[Fraction]) -> Dict[str, Any]:
    """Run every BNN route; ``agree`` is False on any mismatch or unverifiable answer."""
    ep = ExtensionProblem(s, alpha, sub, tuple(values))
    routes = {f"condition({c})": bnn_check(ep, c, construct=False) for c in CONDITIONS}
    routes["dual"] = bnn_construct(ep)
    flags = {k: r.extendable for k, r in routes.items()}
    agree = len(set(flags.values())) == 1
    verified = True
    for r in routes.values():
        if r.extendable and r.extension is not None:
            verified &= verify_extension(ep, r.extension)
        if not r.extendable and r.violation is not None:
            verified &= verify_violation(ep, r)
    return {"routes": flags, "agree": agree and verified, "sub_norm": routes["dual"].sub_norm,
            "extension": routes["dual"].extension}


def _bnn_samples(s: CalibratedSpace, alpha: int, rng: random.Random, n: int) -> List[dict]:
    out = []
    rows = s.seminorm(alpha).rows
    for _ in range(n):
        sub = random_subspace(rng, s.dim)
        u = random_row_functional(rng, rows)
        values = tuple(sum((a * b for a, b in zip(u, bj)), ZERO) for bj in sub.basis)
        rep = bnn_agreement(s, alpha, sub, values)
        rep["basis"] = sub.basis
        rep["values"] = values
        out.append(rep)
    return out


# -- expected values in fixtures ------------------------------------------------------

def check_expected(inst: Instance) -> List[str]:
    """Mismatches between an instance's ``expected`` block and fresh computation."""
    from .exactla import rat

    s = inst.space
    problems = []
    exp = inst.expected
    for alpha_key, want in exp.get("criteria", {}).items():
        alpha = int(alpha_key)
        got = check_full(s, alpha).holds
        if got != want:
            problems.append(f"criteria[{alpha}]: expected {want}, got {got}")
    for i, case in enumerate(exp.get("bnn", [])):
        sub, fs = inst.subspaces[case["subspace"]]
        ep = ExtensionProblem(s, case["alpha"], sub, fs[case["functional"]])
        res = bnn_check(ep, case.get("condition", 4))
        got_norm = "inf" if res.sub_norm == math.inf else format_rat(res.sub_norm)
        if got_norm != case["sub_norm"]:
            problems.append(f"bnn[{i}].sub_norm: expected {case['sub_norm']}, got {got_norm}")
        if res.extendable != case["extendable"]:
            problems.append(f"bnn[{i}].extendable: expected {case['extendable']}, got {res.extendable}")
        if "extension" in case and res.extension != tuple(rat(a) for a in case["extension"]):
            problems.append(f"bnn[{i}].extension: expected {case['extension']}, got {res.extension}")
    for i, case in enumerate(exp.get("additivity", [])):
        f, g = inst.functionals[case["f"]], inst.functionals[case["g"]]
        res = norm_additivity_check(s, case["alpha"], f, g)
        got = {"norm_f": format_rat(res.norm_f), "norm_g": format_rat(res.norm_g),
               "norm_sum": format_rat(res.lhs), "additive": res.additive}
        for key, value in got.items():
            if key in case and case[key] != value:
                problems.append(f"additivity[{i}].{key}: expected {case[key]}, got {value}")
        if "witness" in case:
            try:
                w = additivity_extension_witness(s, case["alpha"], f, g)
            except HypothesisError as exc:
                w = exc.fallback
            if (w is not None) != case["witness"]:
                problems.append(f"additivity[{i}].witness: expected {case['witness']}, got {w is not None}")
    return problems


# -- the suite ------------------------------------------------------------------------

@dataclass
class SuiteReport:
    instances: List[Dict[str, Any]] = field(default_factory=list)
    disagreements: List[Dict[str, Any]] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def verdict(self) -> str:
        return "all-agree" if not self.disagreements else "disagreement"

    def to_data(self, timing: bool = True) -> Dict[str, Any]:
        data = {"format": 1, "verdict": self.verdict, "instances": self.instances,
                "disagreements": self.disagreements}
        if timing:
            data["timing"] = {"seconds": round(self.seconds, 3)}
        return data


def check_instance(inst: Instance, config: SuiteConfig = SuiteConfig(),
                   checkers: Optional[Dict[str, Checker]] = None) -> Dict[str, Any]:
    """All cross-checks for one instance; ``disagreements`` lists what went wrong."""
    checkers = {**DEFAULT_CHECKERS, **(checkers or {})}
    s = inst.space
    rng = random.Random(f"suite:{inst.name}")
    states = build_representation(s)
    alphas = []
    disagreements = []
    for alpha in range(len(s.seminorms)):
        ctx = Context(s, alpha, states, rng, config)
        results = {name: checkers[name](ctx) for name in CRITERIA}
        flags = {name: bool(r[0]) for name, r in results.items()}
        entry: Dict[str, Any] = {"alpha": alpha, "criteria": flags}
        if len(set(flags.values())) > 1:
            disagreements.append({"alpha": alpha, "kind": "criteria", "detail": flags,
                                  "witnesses": {k: r[1] for k, r in results.items() if not r[0]}})
        holds = all(flags.values())
        if holds:
            bad = _gk_random(ctx)
            entry["gk_samples"] = config.gk_samples
            if bad:
                disagreements.append({"alpha": alpha, "kind": "gk", "detail": bad})
        add = _additivity(ctx, flags["state_cover"])
        entry["additivity"] = {"pairs": add["pairs"], "additive": add["additive"]}
        if add["bad"]:
            disagreements.append({"alpha": alpha, "kind": "additivity", "detail": add["bad"]})
        bnn = _bnn_samples(s, alpha, rng, config.bnn_samples)
        entry["bnn"] = [{"routes": b["routes"], "agree": b["agree"]} for b in bnn]
        for b in bnn:
            if not b["agree"]:
                disagreements.append({"alpha": alpha, "kind": "bnn", "detail": b})
        alphas.append(entry)
    if inst.expected:
        for msg in check_expected(inst):
            disagreements.append({"alpha": None, "kind": "expected", "detail": msg})
    return {"name": inst.name, "alphas": alphas, "disagreements": disagreements}


def run_suite(instances: Sequence[Instance], config: SuiteConfig = SuiteConfig(),
              checkers: Optional[Dict[str, Checker]] = None) -> SuiteReport:
    """Cross-check every instance; each disagreement embeds its instance as a reproducer."""
    report = SuiteReport()
    start = time.perf_counter()
    for index, inst in enumerate(instances):
        result = check_instance(inst, config, checkers)
        report.instances.append({"index": index, "name": result["name"], "alphas": result["alphas"]})
        for d in result["disagreements"]:
            report.disagreements.append({"instance": index, "name": inst.name, **d,
                                         "reproducer": instance_to_data(inst)})
    report.seconds = time.perf_counter() - start
    return report

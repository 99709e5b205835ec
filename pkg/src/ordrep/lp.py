"""Exact rational linear programming.

A dense two-phase primal simplex over :class:`~fractions.Fraction` with
Bland's rule.  Every answer carries a certificate that
:func:`verify_certificate` re-checks with plain arithmetic:

* optimal: a feasible ``primal`` point and a ``dual`` multiplier vector
  proving that no feasible point does better;
* infeasible: a ``farkas`` multiplier vector whose aggregate row reads
  ``0 <= negative``;
* unbounded: a feasible ``anchor`` point and an improving ``ray``.

Multiplier vectors are indexed by :meth:`LPProblem.normalized_rows`: the
constraints in their given order, rewritten so that ``>=`` becomes ``<=``,
followed by one row per finite variable bound (``-x_j <= -lo`` then
``x_j <= hi``).  Multipliers of ``<=`` rows are nonnegative, multipliers of
equality rows are free.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .exactla import ZERO, ContractError, RVec, Number, dot, rat, format_rat

LE, EQ, GE = "<=", "=", ">="
_RELS = (LE, EQ, GE)

OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"

Bound = Tuple[Optional[Fraction], Optional[Fraction]]


@dataclass(frozen=True)
class Constraint:
    row: RVec
    rel: str
    rhs: Fraction

    def __post_init__(self):
        if self.rel not in _RELS:
            raise ContractError(f"unknown relation {self.rel!r}")
        object.__setattr__(self, "row", tuple(rat(a) for a in self.row))
        object.__setattr__(self, "rhs", rat(self.rhs))


@dataclass(frozen=True)
class LPProblem:
    """``objective . x -> sense`` subject to ``constraints`` and per-variable bounds.

    ``bounds`` is a tuple of ``(lo, hi)`` pairs, ``None`` meaning infinite.
    When ``bounds`` is omitted every variable is free.
    """

    objective: RVec
    constraints: Tuple[Constraint, ...] = ()
    sense: str = "max"
    bounds: Optional[Tuple[Bound, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "objective", tuple(rat(a) for a in self.objective))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if self.bounds is not None:
            object.__setattr__(self, "bounds", tuple(
                (None if lo is None else rat(lo), None if hi is None else rat(hi)) for lo, hi in self.bounds))
        n = len(self.objective)
        if self.sense not in ("max", "min"):
            raise ContractError(f"sense must be 'max' or 'min', got {self.sense!r}")
        for k, c in enumerate(self.constraints):
            if len(c.row) != n:
                raise ContractError(f"constraint {k} has {len(c.row)} coefficients, expected {n}")
        if self.bounds is None:
            object.__setattr__(self, "bounds", ((None, None),) * n)
        elif len(self.bounds) != n:
            raise ContractError(f"{len(self.bounds)} bounds for {n} variables")
        for lo, hi in self.bounds:
            if lo is not None and hi is not None and lo > hi:
                raise ContractError(f"empty bound interval [{lo}, {hi}]")

    @property
    def nvars(self) -> int:
        return len(self.objective)

    def normalized_rows(self) -> List[Tuple[RVec, str, Fraction]]:
        n = self.nvars
        rows = []
        for c in self.constraints:
            if c.rel == GE:
                rows.append((tuple(-a for a in c.row), LE, -c.rhs))
            else:
                rows.append((c.row, c.rel, c.rhs))
        for j, (lo, hi) in enumerate(self.bounds):
            if lo is not None:
                rows.append((_unit(n, j, -1), LE, -lo))
            if hi is not None:
                rows.append((_unit(n, j, 1), LE, hi))
        return rows

    def max_objective(self) -> RVec:
        if self.sense == "max":
            return self.objective
        return tuple(-a for a in self.objective)

    def dump(self) -> str:
        """One line per constraint; meant for failure reports."""

        def lin(row):
            terms = [f"{format_rat(a)}*x{j}" for j, a in enumerate(row) if a]
            return " + ".join(terms) or "0"

        lines = [f"{self.sense} {lin(self.objective)}"]
        for c in self.constraints:
            lines.append(f"  {lin(c.row)} {c.rel} {format_rat(c.rhs)}")
        for j, (lo, hi) in enumerate(self.bounds):
            if lo is not None or hi is not None:
                lo_s = "-inf" if lo is None else format_rat(lo)
                hi_s = "+inf" if hi is None else format_rat(hi)
                lines.append(f"  x{j} in [{lo_s}, {hi_s}]")
        return "\n".join(lines)


@dataclass(frozen=True)
class LPOutcome:
    status: str
    optimum: Optional[Fraction] = None
    primal: Optional[RVec] = None
    dual: Optional[RVec] = None
    ray: Optional[RVec] = None
    anchor: Optional[RVec] = None
    farkas: Optional[RVec] = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


def _unit(n, j, s):
    return tuple(Fraction(s) if i == j else ZERO for i in range(n))


# -- observation hook ---------------------------------------------------------

_recorder: contextvars.ContextVar = contextvars.ContextVar("lp_recorder", default=None)


@contextlib.contextmanager
def recording() -> Iterator[List[Tuple[LPProblem, LPOutcome]]]:
    """Collect every ``(problem, outcome)`` pair solved inside the block."""
    log: List[Tuple[LPProblem, LPOutcome]] = []
    token = _recorder.set(log)
    try:
        yield log
    finally:
        _recorder.reset(token)


# -- builder ------------------------------------------------------------------

class LPBuilder:
    """Incremental construction of an :class:`LPProblem` with sparse rows.

    >>> b = LPBuilder()
    >>> x = b.add_vars(2, lo=0)
    >>> b.add({x[0]: 1, x[1]: 1}, "<=", 5)
    >>> solve(b.problem({x[0]: 1})).optimum
    Fraction(5, 1)
    """

    def __init__(self):
        self.bounds: List[Bound] = []
        self.rows: List[Tuple[Dict[int, Fraction], str, Fraction]] = []

    @property
    def nvars(self) -> int:
        return len(self.bounds)

    def add_vars(self, count: int, lo: Optional[Number] = None, hi: Optional[Number] = None) -> range:
        start = len(self.bounds)
        lo = None if lo is None else rat(lo)
        hi = None if hi is None else rat(hi)
        self.bounds.extend([(lo, hi)] * count)
        return range(start, start + count)

    def add(self, coeffs: Dict[int, Number], rel: str, rhs: Number) -> None:
        row = {}
        for j, a in coeffs.items():
            a = rat(a)
            if a:
                row[j] = row.get(j, ZERO) + a
        self.rows.append((row, rel, rat(rhs)))

    def _dense(self, coeffs: Dict[int, Number]) -> RVec:
        row = [ZERO] * self.nvars
        for j, a in coeffs.items():
            row[j] += rat(a)
        return tuple(row)

    def problem(self, objective: Optional[Dict[int, Number]] = None, sense: str = "max") -> LPProblem:
        obj = self._dense(objective or {})
        cons = tuple(Constraint(self._dense(r), rel, rhs) for r, rel, rhs in self.rows)
        return LPProblem(obj, cons, sense, tuple(self.bounds))


def linear(coeffs: Sequence[Number], variables: Iterable[int], scale: Number = 1) -> Dict[int, Fraction]:
    """Sparse row ``scale * sum(coeffs[k] * x[variables[k]])``."""
    s = rat(scale)
    return {j: s * rat(a) for j, a in zip(variables, coeffs) if a}


def merge(*rows: Dict[int, Fraction]) -> Dict[int, Fraction]:
    out: Dict[int, Fraction] = {}
    for r in rows:
        for j, a in r.items():
            out[j] = out.get(j, ZERO) + a
    return out


# -- simplex ------------------------------------------------------------------

class _Tableau:
    def __init__(self, rows, rhs, ncols, basis):
        self.T = rows          # list of lists
        self.b = rhs
        self.ncols = ncols
        self.basis = basis

    def pivot(self, r, q):
        T, b = self.T, self.b
        prow = T[r]
        piv = prow[q]
        if piv != 1:
            inv = 1 / piv
            prow = [a * inv if a else a for a in prow]
            T[r] = prow
            b[r] = b[r] * inv
        nz = [j for j, a in enumerate(prow) if a]
        br = b[r]
        for i in range(len(T)):
            if i == r:
                continue
            row = T[i]
            f = row[q]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
                b[i] -= f * br
        self.basis[r] = q

    def reduced(self, cost):
        d = list(cost)
        val = ZERO
        for i, bi in enumerate(self.basis):
            cb = cost[bi]
            if cb:
                row = self.T[i]
                for j, a in enumerate(row):
                    if a:
                        d[j] -= cb * a
                val += cb * self.b[i]
        return d, val

    def run(self, cost, allowed):
        """Maximize ``cost`` from the current feasible basis; return entering column on unboundedness."""
        d, _ = self.reduced(cost)
        while True:
            q = next((j for j in allowed if d[j] > 0), None)
            if q is None:
                return None
            best = None
            for i, row in enumerate(self.T):
                a = row[q]
                if a > 0:
                    ratio = self.b[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return q
            r = best[1]
            self.pivot(r, q)
            prow = self.T[r]
            dq = d[q]
            for j, a in enumerate(prow):
                if a:
                    d[j] -= dq * a


def solve(p: LPProblem) -> LPOutcome:
    """Solve ``p`` exactly; see the module docstring for the certificate layout."""
    outcome = _solve(p)
    log = _recorder.get()
    if log is not None:
        log.append((p, outcome))
    return outcome


def check_feasible(constraints: Sequence[Constraint], nvars: Optional[int] = None,
                   bounds: Optional[Tuple[Bound, ...]] = None) -> LPOutcome:
    """Zero-objective wrapper: status is optimal exactly when the system is feasible."""
    if nvars is None:
        if not constraints:
            raise ContractError("nvars is required without constraints")
        nvars = len(constraints[0].row)
    return solve(LPProblem((ZERO,) * nvars, tuple(constraints), "max", bounds))


def _solve(p: LPProblem) -> LPOutcome:
    n = p.nvars
    norm_rows = p.normalized_rows()
    ncons = len(p.constraints)

    # substitution x_j = shift_j + sum(coef * x'_col) with x' >= 0
    shift = [ZERO] * n
    subst: List[List[Tuple[int, int]]] = []
    ncol = 0
    upper_rows = []   # (normalized row index, j) for doubly bounded variables
    bound_index: Dict[Tuple[int, str], int] = {}
    k = ncons
    for j, (lo, hi) in enumerate(p.bounds):
        if lo is not None:
            bound_index[(j, "lo")] = k
            k += 1
        if hi is not None:
            bound_index[(j, "hi")] = k
            k += 1
        if lo is not None:
            shift[j] = lo
            subst.append([(ncol, 1)])
            ncol += 1
            if hi is not None:
                upper_rows.append(bound_index[(j, "hi")])
        elif hi is not None:
            shift[j] = hi
            subst.append([(ncol, -1)])
            ncol += 1
        else:
            subst.append([(ncol, 1), (ncol + 1, -1)])
            ncol += 2

    internal = list(range(ncons)) + upper_rows   # indices into norm_rows
    m = len(internal)
    nslack = sum(1 for r in internal if norm_rows[r][1] == LE)
    nstruct = ncol
    ntotal = nstruct + nslack + m
    art0 = nstruct + nslack

    T = []
    rhs = []
    sigma = []
    slack_col = nstruct
    for i, r in enumerate(internal):
        g, rel, h = norm_rows[r]
        row = [ZERO] * ntotal
        for j, a in enumerate(g):
            if a:
                for col, coef in subst[j]:
                    row[col] += a * coef
        val = h - dot(g, shift)
        if rel == LE:
            row[slack_col] = Fraction(1)
            slack_col += 1
        s = 1
        if val < 0:
            s = -1
            row = [-a for a in row]
            val = -val
        row[art0 + i] = Fraction(1)
        T.append(row)
        rhs.append(val)
        sigma.append(s)

    tab = _Tableau(T, rhs, ntotal, [art0 + i for i in range(m)])

    # phase 1
    cost1 = [ZERO] * art0 + [Fraction(-1)] * m
    tab.run(cost1, range(art0))   # phase 1 is bounded by construction
    _, val1 = tab.reduced(cost1)
    if val1 < 0:
        y = _row_duals(tab, cost1, art0, m)
        cert = _lift_multipliers(p, norm_rows, internal, sigma, y, subst, bound_index, (ZERO,) * n)
        return LPOutcome(INFEASIBLE, farkas=cert)

    # drive zero-level artificials out of the basis; drop redundant rows
    i = 0
    while i < len(tab.T):
        if tab.basis[i] >= art0:
            q = next((j for j in range(art0) if tab.T[i][j]), None)
            if q is None:
                del tab.T[i], tab.b[i], tab.basis[i]
                continue
            tab.pivot(i, q)
        i += 1

    c = p.max_objective()
    cost2 = [ZERO] * ntotal
    for j, a in enumerate(c):
        if a:
            for col, coef in subst[j]:
                cost2[col] += a * coef
    entering = tab.run(cost2, range(art0))
    xs = [ZERO] * ntotal
    for i, bi in enumerate(tab.basis):
        xs[bi] = tab.b[i]
    point = _lift_point(xs, shift, subst)
    if entering is not None:
        d = [ZERO] * ntotal
        d[entering] = Fraction(1)
        for i, bi in enumerate(tab.basis):
            d[bi] = -tab.T[i][entering]
        ray = _lift_point(d, [ZERO] * n, subst)
        return LPOutcome(UNBOUNDED, ray=ray, anchor=point)
    y = _row_duals(tab, cost2, art0, m)
    dual = _lift_multipliers(p, norm_rows, internal, sigma, y, subst, bound_index, c)
    return LPOutcome(OPTIMAL, optimum=dot(p.objective, point), primal=point, dual=dual)


def _row_duals(tab, cost, art0, m):
    y = [ZERO] * m
    for i, bi in enumerate(tab.basis):
        cb = cost[bi]
        if cb:
            row = tab.T[i]
            for k in range(m):
                a = row[art0 + k]
                if a:
                    y[k] += cb * a
    return y


def _lift_point(xs, shift, subst):
    return tuple(s + sum((coef * xs[col] for col, coef in cols), ZERO)
                 for s, cols in zip(shift, subst))


def _lift_multipliers(p, norm_rows, internal, sigma, y, subst, bound_index, target):
    """Map standard-form duals back onto the normalized rows of ``p``.

    Residual ``target - sum(z_r g_r)`` is absorbed by the implicit bound rows;
    the simplex optimality conditions guarantee it has the right signs.
    """
    n = p.nvars
    mult = [ZERO] * len(norm_rows)
    for r, s, yr in zip(internal, sigma, y):
        mult[r] += s * yr
    resid = list(target)
    for r, z in enumerate(mult):
        if z:
            for j, a in enumerate(norm_rows[r][0]):
                if a:
                    resid[j] -= z * a
    for j in range(n):
        rj = resid[j]
        if rj < 0:
            mult[bound_index[(j, "lo")]] += -rj
        elif rj > 0:
            mult[bound_index[(j, "hi")]] += rj
    return tuple(mult)


# -- independent verification --------------------------------------------------

def _satisfies(rows, x):
    for g, rel, h in rows:
        v = dot(g, x)
        if rel == LE and v > h:
            return False
        if rel == EQ and v != h:
            return False
    return True


def _multipliers_ok(rows, mult):
    if mult is None or len(mult) != len(rows):
        return False
    return all(z >= 0 for (g, rel, h), z in zip(rows, mult) if rel == LE)


def _aggregate(rows, mult, n):
    agg = [ZERO] * n
    rhs = ZERO
    for (g, rel, h), z in zip(rows, mult):
        if z:
            for j, a in enumerate(g):
                agg[j] += z * a
            rhs += z * h
    return tuple(agg), rhs


def verify_certificate(p: LPProblem, o: LPOutcome) -> bool:
    """Re-check an outcome by arithmetic alone (no pivoting)."""
    n = p.nvars
    rows = p.normalized_rows()
    populated = [v is not None for v in (o.primal, o.ray, o.farkas)]
    if sum(populated) != 1:
        return False
    if o.status == OPTIMAL:
        if o.primal is None or len(o.primal) != n or not _satisfies(rows, o.primal):
            return False
        if o.optimum != dot(p.objective, o.primal):
            return False
        if not _multipliers_ok(rows, o.dual):
            return False
        agg, rhs = _aggregate(rows, o.dual, n)
        c = p.max_objective()
        best = o.optimum if p.sense == "max" else -o.optimum
        return agg == tuple(c) and rhs == best
    if o.status == INFEASIBLE:
        if not _multipliers_ok(rows, o.farkas):
            return False
        agg, rhs = _aggregate(rows, o.farkas, n)
        return all(a == 0 for a in agg) and rhs < 0
    if o.status == UNBOUNDED:
        if o.ray is None or o.anchor is None or len(o.ray) != n:
            return False
        if not _satisfies(rows, o.anchor):
            return False
        for g, rel, h in rows:
            v = dot(g, o.ray)
            if (rel == LE and v > 0) or (rel == EQ and v != 0):
                return False
        return dot(p.max_objective(), o.ray) > 0
    return False


def point_along_ray(o: LPOutcome, objective: RVec, level: Fraction) -> RVec:
    """A feasible point of an unbounded outcome whose objective value reaches ``level``."""
    base = dot(objective, o.anchor)
    slope = dot(objective, o.ray)
    if slope <= 0:
        raise ContractError("ray does not improve the given objective")
    t = max(ZERO, (level - base) / slope)
    return tuple(a + t * d for a, d in zip(o.anchor, o.ray))

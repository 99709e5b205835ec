"""Decision procedures for isometric representability on C(X).

For a fixed seminorm index alpha the following are equivalent, and each is
decided here by its own finite family of linear programs:

* the unit ball of ``p_alpha`` is full (``check_full``);
* every element is semi positive or semi negative, equivalently
  ``K_alpha = conv(B_alpha ∪ -B_alpha)`` (``check_state_cover``);
* every ``x0`` admits a state attaining ``+-p_alpha(x0)`` (``find_state``);
* every functional splits as a norm-additive difference of positive ones
  (``grosberg_krein`` with zero gap).

The equivalences are not used to shortcut anything: they are what the test
suite cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from . import lp
from .cone import Witnessed
from .exactla import ZERO, ContractError, RVec, Number, dot, vec, zeros
from .represent import FiniteStateSpace, build_representation
from .space import CalibratedSpace, _add_cone, _add_unit_ball, _maximize_or_witness, functional_norm

FULL = "full_ball"
SANDWICH = "sandwich"
SEMI_ALL = "semi_all"
STATE_SUP = "state_sup"
GK = "gk_decomposable"


class ConsistencyError(RuntimeError):
    """Two routes that must agree gave different answers."""


class DecompositionError(ContractError):
    def __init__(self, message, farkas=None):
        super().__init__(message)
        self.farkas = farkas


@dataclass(frozen=True)
class CriterionReport:
    criterion: str
    alpha: int
    holds: bool
    witness: object = None


@dataclass(frozen=True)
class StateCertificate:
    """A state ``f = sum(weights_i a_i)`` with ``sum|weights| <= 1``, positive, attaining ``sign p(x0)``."""

    f: RVec
    alpha: int
    sign: int
    x0: RVec
    weights: Tuple[Fraction, ...]

    def verify(self, s: CalibratedSpace) -> bool:
        p = s.seminorm(self.alpha)
        recon = tuple(sum((w * a[k] for w, a in zip(self.weights, p.rows)), ZERO) for k in range(s.dim))
        return (recon == self.f
                and sum(abs(w) for w in self.weights) <= 1
                and all(dot(self.f, g) >= 0 for g in s.cone.generators)
                and dot(self.f, self.x0) == self.sign * p(self.x0))


def _signed_weights(b: lp.LPBuilder, nrows: int):
    return b.add_vars(nrows, lo=0), b.add_vars(nrows, lo=0)


def _functional_row(rows, plus, minus, vector):
    """Sparse row for ``<sum((plus_i - minus_i) a_i), vector>``."""
    out = {}
    for i, a in enumerate(rows):
        c = dot(a, vector)
        if c:
            out[plus[i]] = c
            out[minus[i]] = -c
    return out


def _combine(rows, plus, minus, primal, dim):
    w = tuple(primal[p] - primal[m] for p, m in zip(plus, minus))
    f = tuple(sum((wi * a[k] for wi, a in zip(w, rows)), ZERO) for k in range(dim))
    return f, w


# -- semi positivity and states ----------------------------------------------------------

def _semi(s: CalibratedSpace, alpha: int, x: Sequence[Number], sign: int) -> Witnessed:
    x = vec(x)
    p = s.seminorm(alpha)
    d = s.dim
    px = p(x)
    if px == 0:
        return Witnessed(True)
    b = lp.LPBuilder()
    l = b.add_vars(d)
    (t,) = b.add_vars(1)
    _add_cone(b, s.cone, l)
    for a in p.rows:
        row = {l[k]: sign * a[k] for k in range(d) if a[k]}
        ax = dot(a, x)
        b.add({**row, t: -1}, lp.LE, -ax)
        b.add({**{j: -c for j, c in row.items()}, t: -1}, lp.LE, ax)
    out = lp.solve(b.problem({t: 1}, "min"))
    if out.optimum == px:
        return Witnessed(True)
    return Witnessed(False, tuple(out.primal[j] for j in l))


def semi_positive(s: CalibratedSpace, alpha: int, x: Sequence[Number]) -> Witnessed:
    """``p(x + l) >= p(x)`` for every ``l`` in the cone; otherwise an ``l`` with ``p(x + l) < p(x)``."""
    return _semi(s, alpha, x, 1)


def semi_negative(s: CalibratedSpace, alpha: int, x: Sequence[Number]) -> Witnessed:
    """``p(x - l) >= p(x)`` for every ``l`` in the cone; otherwise an ``l`` with ``p(x - l) < p(x)``."""
    return _semi(s, alpha, x, -1)


def _state_lp(s: CalibratedSpace, alpha: int, x0: RVec, sign: int) -> Optional[StateCertificate]:
    p = s.seminorm(alpha)
    b = lp.LPBuilder()
    plus, minus = _signed_weights(b, len(p.rows))
    b.add({j: 1 for j in list(plus) + list(minus)}, lp.LE, 1)
    for g in s.cone.generators:
        b.add(_functional_row(p.rows, plus, minus, g), lp.GE, 0)
    b.add(_functional_row(p.rows, plus, minus, x0), lp.EQ, sign * p(x0))
    out = lp.solve(b.problem())
    if not out.feasible:
        return None
    f, w = _combine(p.rows, plus, minus, out.primal, s.dim)
    return StateCertificate(f, alpha, sign, x0, w)


def find_state(s: CalibratedSpace, alpha: int, x0: Sequence[Number],
               cross_check: bool = True) -> Optional[StateCertificate]:
    """A state ``f`` with ``f(x0) = p(x0)`` (sign +) or else ``f(x0) = -p(x0)`` (sign -).

    Existence of a sign-+ state is equivalent to ``x0`` being semi positive
    (and sign - to semi negative); with ``cross_check`` both routes are run
    and a disagreement raises :class:`ConsistencyError`.
    """
    x0 = vec(x0)
    p = s.seminorm(alpha)
    if p(x0) == 0:
        return StateCertificate(zeros(s.dim), alpha, 1, x0, (ZERO,) * len(p.rows))
    for sign, semi in ((1, semi_positive), (-1, semi_negative)):
        cert = _state_lp(s, alpha, x0, sign)
        if cross_check and (cert is not None) != semi(s, alpha, x0).holds:
            raise ConsistencyError(
                f"state LP and semi-{'positivity' if sign > 0 else 'negativity'} disagree at x0={x0}")
        if cert is not None:
            return cert
    return None


# -- fullness and state cover ---------------------------------------------------------

def check_full(s: CalibratedSpace, alpha: int) -> CriterionReport:
    """Whether ``x <= y <= z`` with ``p(x), p(z) <= 1`` forces ``p(y) <= 1``.

    Equivalently ``p(y) <= max(p(x), p(z))``.  The witness is ``(x, y, z)``.
    """
    p = s.seminorm(alpha)
    d = s.dim
    for a in p.rows:
        for sign in (1, -1):
            b = lp.LPBuilder()
            x = b.add_vars(d)
            y = b.add_vars(d)
            z = b.add_vars(d)
            _add_cone(b, s.cone, y, x)
            _add_cone(b, s.cone, z, y)
            _add_unit_ball(b, p.rows, x)
            _add_unit_ball(b, p.rows, z)
            pt = _maximize_or_witness(b, {y[k]: sign * a[k] for k in range(d) if a[k]})
            if pt is not None:
                triple = tuple(tuple(pt[j] for j in v) for v in (x, y, z))
                return CriterionReport(FULL, alpha, False, triple)
    return CriterionReport(FULL, alpha, True)


def check_state_cover(s: CalibratedSpace, alpha: int, fs: Optional[FiniteStateSpace] = None) -> CriterionReport:
    """Whether every row ``a_i`` lies in ``conv(V_alpha ∪ -V_alpha)``.

    That is the same as ``sup over states of |f(x)| = p_alpha(x)`` for every
    x.  When a row is not covered, the Farkas multipliers of its membership
    LP give an ``x`` with ``p_alpha(x) > max_V |<v, x>|``; such an x is
    neither semi positive nor semi negative.
    """
    if fs is None:
        fs = build_representation(s)
    p = s.seminorm(alpha)
    verts = fs.vertices[alpha]
    d = s.dim
    for a in p.rows:
        b = lp.LPBuilder()
        wp = b.add_vars(len(verts), lo=0)
        wm = b.add_vars(len(verts), lo=0)
        for k in range(d):
            row = {}
            for i, v in enumerate(verts):
                if v[k]:
                    row[wp[i]] = v[k]
                    row[wm[i]] = -v[k]
            b.add(row, lp.EQ, a[k])
        b.add({j: 1 for j in list(wp) + list(wm)}, lp.LE, 1)
        out = lp.solve(b.problem())
        if out.feasible:
            continue
        x = tuple(-c for c in out.farkas[:d])
        sup = max(abs(dot(v, x)) for v in verts)
        if not p(x) > sup:
            raise ConsistencyError(f"cover certificate for row {a} does not separate")
        return CriterionReport(STATE_SUP, alpha, False, {"row": a, "x": x, "p": p(x), "state_sup": sup})
    return CriterionReport(STATE_SUP, alpha, True)


# -- decompositions -------------------------------------------------------------------

def _decomposition_lp(s: CalibratedSpace, alpha: int, u: RVec, minimize: bool):
    p = s.seminorm(alpha)
    d = s.dim
    b = lp.LPBuilder()
    p1, m1 = _signed_weights(b, len(p.rows))
    p2, m2 = _signed_weights(b, len(p.rows))
    for g in s.cone.generators:
        b.add(_functional_row(p.rows, p1, m1, g), lp.GE, 0)
        b.add(_functional_row(p.rows, p2, m2, g), lp.GE, 0)
    for k in range(d):
        e = tuple(Fraction(int(i == k)) for i in range(d))
        row = _functional_row(p.rows, p1, m1, e)
        for j, c in _functional_row(p.rows, p2, m2, e).items():
            row[j] = row.get(j, ZERO) - c
        b.add(row, lp.EQ, u[k])
    objective = {j: 1 for j in list(p1) + list(m1) + list(p2) + list(m2)} if minimize else {}
    out = lp.solve(b.problem(objective, "min"))
    if not out.feasible:
        return out, None
    v1, w1 = _combine(p.rows, p1, m1, out.primal, d)
    v2, w2 = _combine(p.rows, p2, m2, out.primal, d)
    return out, (v1, v2, w1, w2)


def krein_decompose(s: CalibratedSpace, alpha: int, u: Sequence[Number]) -> Tuple[RVec, RVec]:
    """Positive ``v1, v2`` of finite ``alpha``-norm with ``u = v1 - v2``.

    Expected to succeed when ``p_alpha`` is increasing and ``|u|_alpha`` is
    finite; otherwise an infeasible system raises :class:`DecompositionError`
    carrying its Farkas certificate.
    """
    u = vec(u)
    if functional_norm(s, alpha, u) == math.inf:
        raise ContractError("functional does not vanish on ker p_alpha")
    out, dec = _decomposition_lp(s, alpha, u, minimize=False)
    if dec is None:
        raise DecompositionError("no positive decomposition exists", out.farkas)
    return dec[0], dec[1]


@dataclass(frozen=True)
class GKResult:
    feasible: bool
    norm_u: Fraction
    v1: Optional[RVec] = None
    v2: Optional[RVec] = None
    norm_v1: Optional[Fraction] = None
    norm_v2: Optional[Fraction] = None
    gap: Optional[Fraction] = None
    farkas: Optional[RVec] = None


def grosberg_krein(s: CalibratedSpace, alpha: int, u: Sequence[Number]) -> GKResult:
    """Positive split ``u = v1 - v2`` minimizing ``|v1| + |v2|``; ``gap = |v1| + |v2| - |u|``."""
    u = vec(u)
    nu = functional_norm(s, alpha, u)
    if nu == math.inf:
        raise ContractError("functional does not vanish on ker p_alpha")
    out, dec = _decomposition_lp(s, alpha, u, minimize=True)
    if dec is None:
        return GKResult(False, nu, farkas=out.farkas)
    v1, v2, w1, w2 = dec
    n1 = sum(abs(w) for w in w1)
    n2 = sum(abs(w) for w in w2)
    return GKResult(True, nu, v1, v2, n1, n2, out.optimum - nu)

"""Finite state-space representation.

For each seminorm index alpha the positive part of the dual unit ball,
``B_alpha = K_alpha ∩ dual cone``, is a polytope.  A linear functional
attains its maximum over a polytope at a vertex, so the vertex lists
``V_alpha`` carry every supremum over ``B_alpha`` that the checks need; the
evaluation map ``x -> (<v, x>)_v`` sends E into functions on the finite set
``X = ⊔ V_alpha``.  The zero vertex is kept so that sub-probability weights
(total mass <= 1) can realize states of norm < 1.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import lp
from .cone import polytope_inequalities, polytope_vertices
from .exactla import ZERO, ContractError, RVec, Number, dot, rank, vec
from .space import CalibratedSpace, _add_cone, _add_unit_ball

DEFAULT_MAX_DIM = 6
MAX_ROWS = 10


def max_dim() -> int:
    """Dimension cap for vertex enumeration; ``OC_MAX_DIM`` overrides the default of 6."""
    raw = os.environ.get("OC_MAX_DIM")
    if raw is None:
        return DEFAULT_MAX_DIM
    try:
        return int(raw)
    except ValueError:
        raise ContractError(f"OC_MAX_DIM must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class FiniteStateSpace:
    dim: int
    vertices: Tuple[Tuple[RVec, ...], ...]   # one tuple of vertices per alpha

    @property
    def tags(self) -> List[Tuple[int, int]]:
        return [(a, k) for a, vs in enumerate(self.vertices) for k in range(len(vs))]

    def points(self) -> List[RVec]:
        return [v for vs in self.vertices for v in vs]


@dataclass(frozen=True)
class RepresentationReport:
    injective: bool
    bipositive: bool
    isometric_on_positives: Tuple[bool, ...]
    isometric_everywhere: Tuple[bool, ...]
    # evidence: spanning rank, uncovered cone inequalities with separating x,
    # positive elements where the vertex sup falls short, cover witnesses
    certificates: Dict[str, object] = field(default_factory=dict)


def state_vertices(s: CalibratedSpace, alpha: int) -> Tuple[RVec, ...]:
    """Vertices of ``B_alpha = conv{+-a_i} ∩ {f : <f, g> >= 0 for all generators g}``."""
    p = s.seminorm(alpha)
    d = s.dim
    if d > max_dim():
        raise ContractError(f"dimension {d} exceeds the vertex-enumeration cap {max_dim()} (set OC_MAX_DIM)")
    if len(p.rows) > MAX_ROWS:
        raise ContractError(f"seminorm {p.name!r} has {len(p.rows)} rows, cap is {MAX_ROWS}")
    rows = list(polytope_inequalities(p.dual_ball_points(), d))
    rows += [tuple(g) + (ZERO,) for g in s.cone.generators]
    return tuple(polytope_vertices(rows, d))


def build_representation(s: CalibratedSpace) -> FiniteStateSpace:
    return FiniteStateSpace(s.dim, tuple(state_vertices(s, a) for a in range(len(s.seminorms))))


def evaluate(fs: FiniteStateSpace, x: Sequence[Number]) -> List[Tuple[Tuple[int, int], Fraction]]:
    """``phi(x)``: the value ``<v, x>`` at every tagged vertex."""
    x = vec(x)
    if len(x) != fs.dim:
        raise ContractError(f"point of dimension {len(x)} for a state space over dimension {fs.dim}")
    return [((a, k), dot(v, x)) for a, vs in enumerate(fs.vertices) for k, v in enumerate(vs)]


def sup_norm(fs: FiniteStateSpace, alpha: int, x: Sequence[Fraction]) -> Fraction:
    """``|phi(x)|_alpha = max over V_alpha of |<v, x>|``."""
    return max(abs(dot(v, x)) for v in fs.vertices[alpha])


def positive_sup(fs: FiniteStateSpace, alpha: int, x: Sequence[Fraction]) -> Fraction:
    return max(dot(v, x) for v in fs.vertices[alpha])


def sup_gap(s: CalibratedSpace, alpha: int, verts, positives: bool) -> Optional[RVec]:
    """An ``x`` with ``p_alpha(x) > max_V |<v, x>|``, or None; ``positives`` restricts x to E+.

    One LP per signed row: maximize ``+-<a_i, x> - t`` subject to
    ``|<v, x>| <= t`` on the vertices and ``p_alpha(x) <= 1``.
    """
    p = s.seminorm(alpha)
    d = s.dim
    for a in p.rows:
        for sign in (1, -1):
            b = lp.LPBuilder()
            x = b.add_vars(d)
            (t,) = b.add_vars(1)
            if positives:
                _add_cone(b, s.cone, x)
            _add_unit_ball(b, p.rows, x)
            for v in verts:
                for vs in ((1, -1) if not positives else (1,)):
                    row = {x[k]: vs * v[k] for k in range(d) if v[k]}
                    row[t] = Fraction(-1)
                    b.add(row, lp.LE, 0)
            objective = {x[k]: sign * a[k] for k in range(d) if a[k]}
            objective[t] = Fraction(-1)
            out = lp.solve(b.problem(objective))
            if out.status == lp.OPTIMAL and out.optimum > 0:
                return tuple(out.primal[j] for j in x)
    return None


def _uncovered_inequality(s: CalibratedSpace, points) -> Optional[Tuple[RVec, RVec]]:
    """A cone inequality ``h`` outside ``cone(points)`` with a separating ``x``."""
    d = s.dim
    for h in s.cone.inequalities:
        b = lp.LPBuilder()
        lam = b.add_vars(len(points), lo=0)
        for k in range(d):
            b.add({lam[i]: v[k] for i, v in enumerate(points) if v[k]}, lp.EQ, h[k])
        out = lp.solve(b.problem())
        if not out.feasible:
            # multipliers of the equality rows: <x, v> >= 0 for all v, <x, h> < 0
            return h, tuple(out.farkas[:d])
    return None


def verify_representation(s: CalibratedSpace, fs: Optional[FiniteStateSpace] = None) -> RepresentationReport:
    """Injectivity, bipositivity and the two isometry flags of ``x -> (<v, x>)_v``.

    Each isometry flag is decided by its own sup-gap LP over x; the
    covering test in ``criteria`` decides the same thing from the dual side.
    """
    if fs is None:
        fs = build_representation(s)
    points = fs.points()
    r = rank(points) if points else 0
    certs: Dict[str, object] = {"rank": r}
    uncovered = _uncovered_inequality(s, points)
    if uncovered is not None:
        certs["not_bipositive"] = uncovered
    on_pos = []
    everywhere = []
    for alpha in range(len(s.seminorms)):
        gap = sup_gap(s, alpha, fs.vertices[alpha], positives=True)
        on_pos.append(gap is None)
        if gap is not None:
            certs[f"positives_gap[{alpha}]"] = gap
        gap = sup_gap(s, alpha, fs.vertices[alpha], positives=False)
        everywhere.append(gap is None)
        if gap is not None:
            certs[f"norm_gap[{alpha}]"] = gap
    return RepresentationReport(r == s.dim, uncovered is None, tuple(on_pos), tuple(everywhere), certs)


def realize_state(fs: FiniteStateSpace, alpha: int, f: Sequence[Number]) -> Optional[Tuple[Fraction, ...]]:
    """Weights ``w >= 0`` on ``V_alpha`` with ``sum(w) <= 1`` and ``sum(w_v v) = f``, or None."""
    f = vec(f)
    verts = fs.vertices[alpha]
    if f in verts:
        return tuple(Fraction(int(v == f)) for v in verts)
    b = lp.LPBuilder()
    w = b.add_vars(len(verts), lo=0)
    for k in range(fs.dim):
        b.add({w[i]: v[k] for i, v in enumerate(verts) if v[k]}, lp.EQ, f[k])
    b.add({j: 1 for j in w}, lp.LE, 1)
    out = lp.solve(b.problem())
    if not out.feasible:
        return None
    return tuple(out.primal)

"""Calibrated ordered spaces with polyhedral seminorms.

A polyhedral seminorm is ``p(x) = max_i |<a_i, x>|``.  Its dual unit ball is
``K = conv{+-a_i}``, whose support function is ``p``; so
``|u(x)| <= t p(x)`` for all ``x`` exactly when ``u`` lies in ``t K``, and the
functional norm ``|u|_p`` is the gauge of ``u`` with respect to ``K``.  That
polarity is what turns every norm question below into a linear program.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple, Union

from . import lp
from .cone import PolyCone, Witnessed, is_pointed
from .exactla import (ZERO, ContractError, RMat, RVec, Number, dot, is_zero, matvec,
                      rank, row_basis, solve_linear, transpose, unit, vec)

Functional = RVec
Norm = Union[Fraction, float]   # float only ever as math.inf


class NotPointedError(ContractError):
    def __init__(self, witness):
        super().__init__(f"cone is not pointed: it contains the line through {[str(a) for a in witness]}")
        self.witness = witness


class NotSeparatingError(ContractError):
    def __init__(self, rank_found, dim):
        super().__init__(f"seminorms do not separate points: stacked rows have rank {rank_found} < {dim}")
        self.rank = rank_found
        self.dim = dim


class PolyhedralSeminorm:
    """``p(x) = max_i |<a_i, x>|`` for a finite list of rows ``a_i``.

    Rows are sign-normalized (first nonzero entry positive); zero rows are
    dropped and of two proportional rows only the longer one is kept.
    """

    def __init__(self, name: str, rows: Sequence[Sequence[Number]]):
        self.name = name
        kept: List[RVec] = []
        for r in rows:
            r = vec(r)
            if is_zero(r):
                continue
            lead = next(a for a in r if a)
            if lead < 0:
                r = tuple(-a for a in r)
            for k, s in enumerate(kept):
                ratio = _proportional(r, s)
                if ratio is not None:
                    if abs(ratio) > 1:
                        kept[k] = r
                    break
            else:
                kept.append(r)
        if not kept:
            raise ContractError(f"seminorm {name!r} needs at least one nonzero row")
        if len({len(r) for r in kept}) != 1:
            raise ContractError(f"seminorm {name!r} has rows of different lengths")
        self.rows: Tuple[RVec, ...] = tuple(kept)

    @property
    def dim(self) -> int:
        return len(self.rows[0])

    def __call__(self, x: Sequence[Fraction]) -> Fraction:
        return max(abs(dot(a, x)) for a in self.rows)

    def dual_ball_points(self) -> List[RVec]:
        return list(self.rows) + [tuple(-a for a in r) for r in self.rows]

    def __repr__(self):
        return f"PolyhedralSeminorm({self.name!r}, {[list(map(str, r)) for r in self.rows]})"


def _proportional(r: RVec, s: RVec) -> Optional[Fraction]:
    """``c`` with ``r == c * s``, or None."""
    if len(r) != len(s):
        return None
    c = None
    for a, b in zip(r, s):
        if b == 0:
            if a != 0:
                return None
            continue
        q = a / b
        if c is None:
            c = q
        elif q != c:
            return None
    return c


def sup_seminorm(dim: int, name: str = "sup") -> PolyhedralSeminorm:
    return PolyhedralSeminorm(name, [unit(dim, k) for k in range(dim)])


def saturate(seminorms: Sequence[PolyhedralSeminorm], name: str = "max") -> PolyhedralSeminorm:
    """Pointwise maximum of seminorms: the union of their rows."""
    return PolyhedralSeminorm(name, [r for p in seminorms for r in p.rows])


class CalibratedSpace:
    """The triple (R^dim, cone, seminorms).

    The cone must be pointed and the stacked seminorm rows must span, i.e. the
    seminorms separate points.  ``validate=False`` skips both checks; quotient
    spaces use it because the image of a pointed cone need not be pointed.
    """

    def __init__(self, cone: PolyCone, seminorms: Sequence[PolyhedralSeminorm], validate: bool = True):
        if not seminorms:
            raise ContractError("at least one seminorm is required")
        for p in seminorms:
            if p.dim != cone.dim:
                raise ContractError(f"seminorm {p.name!r} lives in dimension {p.dim}, cone in {cone.dim}")
        self.cone = cone
        self.seminorms: Tuple[PolyhedralSeminorm, ...] = tuple(seminorms)
        if validate:
            pointed = is_pointed(cone)
            if not pointed:
                raise NotPointedError(pointed.witness)
            r = rank([a for p in self.seminorms for a in p.rows])
            if r < self.dim:
                raise NotSeparatingError(r, self.dim)

    @property
    def dim(self) -> int:
        return self.cone.dim

    def seminorm(self, alpha: int) -> PolyhedralSeminorm:
        try:
            return self.seminorms[alpha]
        except (IndexError, TypeError):
            raise ContractError(f"no seminorm with index {alpha!r}") from None

    def __repr__(self):
        return f"CalibratedSpace(dim={self.dim}, cone={self.cone!r}, seminorms={list(self.seminorms)!r})"


@dataclass(frozen=True)
class Subspace:
    basis: RMat

    def __post_init__(self):
        b = tuple(vec(r) for r in self.basis)
        if not b:
            raise ContractError("a subspace needs at least one basis row")
        if rank(b) != len(b):
            raise ContractError("subspace basis rows are linearly dependent")
        object.__setattr__(self, "basis", b)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def point(self, coords: Sequence[Fraction]) -> RVec:
        n = len(self.basis[0])
        return tuple(sum((c * b[k] for c, b in zip(coords, self.basis)), ZERO) for k in range(n))


# -- evaluation and norms -------------------------------------------------------------

def eval_seminorm(p: Union[PolyhedralSeminorm, Callable], x: Sequence[Number]) -> Fraction:
    """Evaluate a seminorm; any callable (e.g. an l^p norm) is accepted for witness checks."""
    x = vec(x)
    if isinstance(p, PolyhedralSeminorm) and len(x) != p.dim:
        raise ContractError(f"point of dimension {len(x)} for a seminorm on dimension {p.dim}")
    return p(x)


def gauge(points: Sequence[RVec], u: Sequence[Fraction]) -> Norm:
    """``inf{t >= 0 : u in t conv{+-points}}``; ``math.inf`` when ``u`` is outside their span."""
    u = tuple(u)
    if is_zero(u):
        return ZERO
    b = lp.LPBuilder()
    plus = b.add_vars(len(points), lo=0)
    minus = b.add_vars(len(points), lo=0)
    for k in range(len(u)):
        row = {}
        for i, a in enumerate(points):
            if a[k]:
                row[plus[i]] = a[k]
                row[minus[i]] = -a[k]
        b.add(row, lp.EQ, u[k])
    out = lp.solve(b.problem({j: 1 for j in list(plus) + list(minus)}, "min"))
    if not out.feasible:
        return math.inf
    return out.optimum


def functional_norm(s: CalibratedSpace, alpha: int, u: Sequence[Number]) -> Norm:
    """``|u|_alpha``: least ``C`` with ``|u(x)| <= C p_alpha(x)``, or ``math.inf``."""
    u = vec(u)
    if len(u) != s.dim:
        raise ContractError(f"functional of dimension {len(u)} on a space of dimension {s.dim}")
    return gauge(s.seminorm(alpha).rows, u)


def is_positive(s: CalibratedSpace, f: Sequence[Fraction]) -> bool:
    return all(dot(f, g) >= 0 for g in s.cone.generators)


def _add_unit_ball(b: lp.LPBuilder, rows, x, bound: Number = 1) -> None:
    for a in rows:
        coeffs = {x[k]: a[k] for k in range(len(a)) if a[k]}
        b.add(coeffs, lp.LE, bound)
        b.add(coeffs, lp.GE, -bound)


def _add_cone(b: lp.LPBuilder, cone: PolyCone, upper, lower=None) -> None:
    """Constrain ``upper - lower`` (or ``upper``) to the cone via its inequalities."""
    for h in cone.inequalities:
        coeffs = {}
        for k, a in enumerate(h):
            if a:
                coeffs[upper[k]] = coeffs.get(upper[k], ZERO) + a
                if lower is not None:
                    coeffs[lower[k]] = coeffs.get(lower[k], ZERO) - a
        b.add(coeffs, lp.GE, 0)


def _maximize_or_witness(b: lp.LPBuilder, objective: dict, level: Fraction = Fraction(1)):
    """Solve; return None when the optimum is <= level, else a feasible point beating it."""
    prob = b.problem(objective)
    out = lp.solve(prob)
    if out.status == lp.UNBOUNDED:
        return lp.point_along_ray(out, prob.objective, 2 * level)
    if out.status == lp.OPTIMAL and out.optimum > level:
        return out.primal
    return None


def is_increasing(s: CalibratedSpace, alpha: int) -> Witnessed:
    """Whether ``0 <= y <= x`` implies ``p_alpha(y) <= p_alpha(x)``.

    One LP per signed row: maximize ``+-<a_i, y>`` over ``y in E+``,
    ``x - y in E+``, ``p_alpha(x) <= 1``.  The witness is ``(y, x)``.
    """
    p = s.seminorm(alpha)
    d = s.dim
    for a in p.rows:
        for sign in (1, -1):
            b = lp.LPBuilder()
            x = b.add_vars(d)
            y = b.add_vars(d)
            _add_cone(b, s.cone, y)
            _add_cone(b, s.cone, x, y)
            _add_unit_ball(b, p.rows, x)
            pt = _maximize_or_witness(b, {y[k]: sign * a[k] for k in range(d)})
            if pt is not None:
                return Witnessed(False, (tuple(pt[j] for j in y), tuple(pt[j] for j in x)))
    return Witnessed(True)


def order_unit_check(s: CalibratedSpace, e: Sequence[Number]) -> bool:
    """Whether every ``+-b_k`` (hence every x) lies below some multiple of ``e``."""
    e = vec(e)
    for k in range(s.dim):
        for sign in (1, -1):
            target = unit(s.dim, k, sign)
            b = lp.LPBuilder()
            (lam,) = b.add_vars(1, lo=0)
            for h in s.cone.inequalities:
                b.add({lam: dot(h, e)}, lp.GE, dot(h, target))
            if not lp.solve(b.problem()).feasible:
                return False
    return True


def order_seminorm(s: CalibratedSpace, e: Sequence[Number], x: Sequence[Number]) -> Fraction:
    """``inf{lam > 0 : -lam e <= x <= lam e}``."""
    e, x = vec(e), vec(x)
    if not order_unit_check(s, e):
        raise ContractError(f"{[str(a) for a in e]} is not an order unit")
    b = lp.LPBuilder()
    (lam,) = b.add_vars(1, lo=0)
    for h in s.cone.inequalities:
        he, hx = dot(h, e), dot(h, x)
        b.add({lam: he}, lp.GE, hx)
        b.add({lam: he}, lp.GE, -hx)
    return lp.solve(b.problem({lam: 1}, "min")).optimum


# -- quotients ------------------------------------------------------------------------

class Quotient(NamedTuple):
    """``E / ker p_alpha`` in coordinates: ``projection`` maps E onto R^q."""

    projection: RMat
    space: CalibratedSpace

    def project(self, x: Sequence[Number]) -> RVec:
        return matvec(self.projection, vec(x))

    def functional(self, f: Sequence[Number]) -> Optional[RVec]:
        """Coordinates ``d`` of the induced functional (``f = d . projection``), or None off ``E'_alpha``."""
        return solve_linear(transpose(self.projection), vec(f))

    def norm(self, z: Sequence[Fraction]) -> Fraction:
        return self.space.seminorms[0](z)


def quotient(s: CalibratedSpace, alpha: int) -> Quotient:
    """Quotient by ``ker p_alpha`` with the induced cone and norm.

    The projection is the RREF basis of the row space of ``p_alpha``; each
    row ``a_i`` is rewritten as ``c_i . projection``, so the quotient norm
    ``max |<c_i, z>|`` satisfies ``||proj(x)|| = p_alpha(x)`` by construction.
    """
    p = s.seminorm(alpha)
    P = row_basis(p.rows, s.dim)
    PT = transpose(P)
    q = len(P)
    rows = [solve_linear(PT, a) for a in p.rows]
    gens = [matvec(P, g) for g in s.cone.generators]
    qcone = PolyCone(q, gens)
    qnorm = PolyhedralSeminorm(f"{p.name}/ker", rows)
    return Quotient(P, CalibratedSpace(qcone, [qnorm], validate=False))

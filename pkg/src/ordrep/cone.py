"""Polyhedral cones in both descriptions.

A :class:`PolyCone` is given by generators (rays); its inequality
description ``{x : <h, x> >= 0 for all h}`` is computed on first use by the
double description method.  Finitely generated cones are closed, so every
cone here is automatically closed and Archimedean; nothing checks that at
runtime.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple

from . import lp
from .exactla import (ZERO, ContractError, RVec, Number, dot, is_zero, neg,
                      primitive, scale, sub, vec)


class Witnessed(NamedTuple):
    """A yes/no answer together with the evidence for a "no".

    Truthiness follows ``holds``, so ``if is_pointed(c): ...`` reads naturally.
    """

    holds: bool
    witness: object = None

    def __bool__(self):
        return self.holds


# -- double description -----------------------------------------------------------

def double_description(constraints: Sequence[Sequence[Fraction]], dim: int) -> Tuple[List[RVec], List[RVec]]:
    """Generators of ``{x : <a, x> >= 0 for every a in constraints}``.

    Returns ``(rays, lineality)``: the cone is ``cone(rays) + span(lineality)``.
    Rays are extreme (modulo the lineality space) and primitive integer
    vectors.  Constraints are inserted one at a time; new rays come only from
    adjacent pairs, with adjacency decided combinatorially on the sets of
    tight constraints.
    """
    lineality: List[RVec] = [tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim)]
    rays: List[RVec] = []
    tight: List[frozenset] = []
    done = 0
    for a in constraints:
        a = tuple(a)
        if len(a) != dim:
            raise ContractError(f"constraint of length {len(a)} in dimension {dim}")
        if is_zero(a):
            continue
        k = done
        done += 1
        p_idx = next((i for i, l in enumerate(lineality) if dot(a, l) != 0), None)
        if p_idx is not None:
            pivot = lineality[p_idx]
            if dot(a, pivot) < 0:
                pivot = neg(pivot)
            ap = dot(a, pivot)
            lineality = [primitive(sub(l, scale(dot(a, l) / ap, pivot)))
                         for i, l in enumerate(lineality) if i != p_idx]
            rays = [primitive(sub(r, scale(dot(a, r) / ap, pivot))) for r in rays]
            tight = [z | {k} for z in tight]
            rays.append(primitive(pivot))
            tight.append(frozenset(range(k)))
            continue
        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg_ = [i for i, v in enumerate(vals) if v < 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zero]
        new_tight = [tight[i] for i in pos] + [tight[i] | {k} for i in zero]
        for i in pos:
            for j in neg_:
                common = tight[i] & tight[j]
                if any(t >= common for t_i, t in enumerate(tight) if t_i != i and t_i != j):
                    continue
                r = primitive(tuple(vals[i] * y - vals[j] * x for x, y in zip(rays[i], rays[j])))
                new_rays.append(r)
                new_tight.append(common | {k})
        rays, tight = new_rays, new_tight
    return rays, lineality


def _canonical(vectors, ordered: bool = True) -> Tuple[RVec, ...]:
    out = []
    seen = set()
    for v in vectors:
        v = primitive(v)
        if is_zero(v) or v in seen:
            continue
        seen.add(v)
        out.append(v)
    return tuple(sorted(out)) if ordered else tuple(out)


# -- cones --------------------------------------------------------------------

class PolyCone:
    """Cone generated by finitely many rays (none: the trivial cone ``{0}``)."""

    def __init__(self, dim: int, generators: Sequence[Sequence[Number]] = (),
                 inequalities: Optional[Sequence[Sequence[Number]]] = None):
        if dim < 1:
            raise ContractError("cone dimension must be >= 1")
        self.dim = dim
        gens = [vec(g) for g in generators]
        for g in gens:
            if len(g) != dim:
                raise ContractError(f"generator {g} is not in dimension {dim}")
        self.generators: Tuple[RVec, ...] = _canonical(gens, ordered=False)
        self._lock = threading.Lock()
        self._inequalities: Optional[Tuple[RVec, ...]] = None
        if inequalities is not None:
            self._inequalities = _canonical(vec(h) for h in inequalities)

    @classmethod
    def from_inequalities(cls, dim: int, inequalities: Sequence[Sequence[Number]]) -> "PolyCone":
        """Cone ``{x : <h, x> >= 0}``; generators are computed by double description."""
        H = [vec(h) for h in inequalities]
        rays, lin = double_description(H, dim)
        return cls(dim, list(rays) + list(lin) + [neg(l) for l in lin])

    @property
    def inequalities(self) -> Tuple[RVec, ...]:
        if self._inequalities is None:
            with self._lock:
                if self._inequalities is None:
                    rays, lin = double_description(self.generators, self.dim)
                    self._inequalities = _canonical(list(rays) + list(lin) + [neg(l) for l in lin])
        return self._inequalities

    def __repr__(self):
        return f"PolyCone(dim={self.dim}, generators={[list(map(str, g)) for g in self.generators]})"


def dual_description(c: PolyCone) -> PolyCone:
    """The same cone with its (irredundant) inequality description populated."""
    return PolyCone(c.dim, c.generators, c.inequalities)


def contains(c: PolyCone, x: Sequence[Number]) -> bool:
    """Whether ``x`` is a nonnegative combination of the generators (decided by LP)."""
    x = vec(x)
    if len(x) != c.dim:
        raise ContractError(f"point of dimension {len(x)} tested against a cone in dimension {c.dim}")
    if not c.generators:
        return is_zero(x)
    b = lp.LPBuilder()
    lam = b.add_vars(len(c.generators), lo=0)
    for k in range(c.dim):
        b.add({lam[i]: g[k] for i, g in enumerate(c.generators)}, lp.EQ, x[k])
    return lp.solve(b.problem()).feasible


def satisfies_inequalities(c: PolyCone, x: Sequence[Fraction]) -> bool:
    return all(dot(h, x) >= 0 for h in c.inequalities)


def dual_cone(c: PolyCone) -> PolyCone:
    """``{f : <f, g> >= 0 for every generator g}``, generated by the inequalities of ``c``."""
    return PolyCone(c.dim, c.inequalities)


def is_pointed(c: PolyCone) -> Witnessed:
    """Whether the cone contains no line; otherwise a ``v`` with ``v`` and ``-v`` in the cone.

    Decided by the feasibility of ``sum(lam_i g_i) = 0, sum(lam) = 1, lam >= 0``.
    """
    if not c.generators:
        return Witnessed(True)
    b = lp.LPBuilder()
    lam = b.add_vars(len(c.generators), lo=0)
    for k in range(c.dim):
        b.add({lam[i]: g[k] for i, g in enumerate(c.generators)}, lp.EQ, 0)
    b.add({j: 1 for j in lam}, lp.EQ, 1)
    out = lp.solve(b.problem())
    if not out.feasible:
        return Witnessed(True)
    # the first generator with positive weight is balanced by the others
    k = next(i for i, w in enumerate(out.primal) if w > 0)
    return Witnessed(False, c.generators[k])


def same_cone(c1: PolyCone, c2: PolyCone) -> bool:
    """Mutual containment of generators."""
    return (c1.dim == c2.dim
            and all(contains(c2, g) for g in c1.generators)
            and all(contains(c1, g) for g in c2.generators))


# -- polytopes via homogenization ---------------------------------------------------

def polytope_inequalities(points: Sequence[RVec], dim: int) -> Tuple[RVec, ...]:
    """Rows ``(c, c0)`` with ``conv(points) = {x : <c, x> + c0 >= 0 for all rows}``."""
    lifted = PolyCone(dim + 1, [tuple(p) + (Fraction(1),) for p in points])
    return lifted.inequalities


def polytope_vertices(rows: Sequence[RVec], dim: int) -> List[RVec]:
    """Vertices of the bounded polyhedron ``{x : <c, x> + c0 >= 0}`` given rows ``(c, c0)``.

    Raises :class:`ContractError` when the polyhedron is unbounded; returns an
    empty list when it is empty.
    """
    t_row = tuple([ZERO] * dim + [Fraction(1)])
    rays, lin = double_description(list(rows) + [t_row], dim + 1)
    if lin:
        raise ContractError("polyhedron contains a line")
    verts = []
    for r in rays:
        t = r[dim]
        if t == 0:
            raise ContractError("polyhedron is unbounded")
        verts.append(tuple(a / t for a in r[:dim]))
    return sorted(set(verts))

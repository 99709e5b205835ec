"""Positive norm-preserving extensions (Bauer-Nachbin-Namioka) and norm additivity.

A functional ``f`` on a subspace X with finite norm ``N = |f|_alpha`` has a
positive extension of the same norm exactly when the normalized ``f / N``
satisfies the equivalent sandwich conditions

    (2) x in X ∩ (A + E+)  =>  f(x) >= -1
    (3) x in X ∩ (A - E+)  =>  f(x) <= 1
    (4) x in X, y in E, x <= y  =>  f(x) <= p(y)
    (5) x in X, y in E, y <= x  =>  f(-x) <= p(y)

with ``A`` the unit ball of ``p_alpha``.  Each condition is one LP; an
unbounded LP means a violation along a direction where ``p`` vanishes.
The dual route builds the extension directly inside ``N K_alpha``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from . import lp
from .criteria import ConsistencyError, check_state_cover, _combine, _functional_row, _signed_weights
from .exactla import ZERO, ContractError, RVec, Number, dot, is_zero, vec, zeros
from .represent import FiniteStateSpace, build_representation
from .space import (CalibratedSpace, Norm, Subspace, _add_unit_ball,
                    functional_norm, is_positive)

CONDITIONS = (2, 3, 4, 5)


@dataclass(frozen=True)
class ExtensionProblem:
    space: CalibratedSpace
    alpha: int
    sub: Subspace
    f_on_sub: RVec

    def __post_init__(self):
        vals = vec(self.f_on_sub)
        if len(vals) != self.sub.dim:
            raise ContractError(f"{len(vals)} values for a subspace basis of {self.sub.dim} rows")
        if len(self.sub.basis[0]) != self.space.dim:
            raise ContractError("subspace and space dimensions differ")
        object.__setattr__(self, "f_on_sub", vals)

    def value(self, coords: Sequence[Fraction]) -> Fraction:
        return dot(self.f_on_sub, coords)

    def value_at(self, x: Sequence[Fraction]) -> Optional[Fraction]:
        """``f(x)`` for ``x`` in the subspace (None when x is not in it)."""
        from .exactla import solve_linear, transpose
        c = solve_linear(transpose(self.sub.basis), tuple(x))
        return None if c is None else self.value(c)


@dataclass(frozen=True)
class BNNResult:
    """Outcome of an extension check.

    ``violation`` is a pair ``(x, y)`` with ``x`` in the subspace, ``x <= y``
    and ``f(x) > sub_norm * p_alpha(y)``, i.e. condition (4) failing for the
    normalized functional.  When ``sub_norm`` is infinite the pair has
    ``y = x`` with ``p_alpha(x) = 0 < f(x)``.
    """

    extendable: bool
    sub_norm: Norm
    extension: Optional[RVec] = None
    violation: Optional[Tuple[RVec, RVec]] = None
    route: str = ""
    lp: Optional[Tuple[lp.LPProblem, lp.LPOutcome]] = field(default=None, repr=False)


def subspace_norm(ep: ExtensionProblem) -> Norm:
    """``sup{|f(x)| : x in X, p_alpha(x) <= 1}``; ``math.inf`` when f is nonzero on ``X ∩ ker p_alpha``."""
    if is_zero(ep.f_on_sub):
        return ZERO
    p = ep.space.seminorm(ep.alpha)
    b = lp.LPBuilder()
    c = b.add_vars(ep.sub.dim)
    for a in p.rows:
        coeffs = {c[j]: dot(a, bj) for j, bj in enumerate(ep.sub.basis) if dot(a, bj)}
        b.add(coeffs, lp.LE, 1)
        b.add(coeffs, lp.GE, -1)
    out = lp.solve(b.problem({c[j]: v for j, v in enumerate(ep.f_on_sub)}))
    if out.status == lp.UNBOUNDED:
        return math.inf
    return out.optimum


def _kernel_violation(ep: ExtensionProblem) -> Tuple[RVec, RVec]:
    """``x`` in ``X ∩ ker p`` with ``f(x) > 0``; returned as the pair ``(x, x)``."""
    p = ep.space.seminorm(ep.alpha)
    b = lp.LPBuilder()
    c = b.add_vars(ep.sub.dim)
    for a in p.rows:
        b.add({c[j]: dot(a, bj) for j, bj in enumerate(ep.sub.basis)}, lp.EQ, 0)
    b.add({c[j]: v for j, v in enumerate(ep.f_on_sub)}, lp.EQ, 1)
    out = lp.solve(b.problem())
    x = ep.sub.point(out.primal)
    return x, x


def _condition_lp(ep: ExtensionProblem, condition: int, norm: Fraction):
    """Build the LP for one condition on ``f / norm``.

    Returns ``(builder, objective, sense, c, other)`` with ``c`` the subspace
    coordinates and ``other`` the partner point (``y`` or ``a``).
    """
    s = ep.space
    p = s.seminorm(ep.alpha)
    d = s.dim
    b = lp.LPBuilder()
    c = b.add_vars(ep.sub.dim)
    w = b.add_vars(d)
    x_row = [{c[j]: bj[k] for j, bj in enumerate(ep.sub.basis) if bj[k]} for k in range(d)]
    # the partner point w is y in (4)/(5) and a in (2)/(3); only the cone order differs
    upper_is_w = condition in (3, 4)
    for h in s.cone.inequalities:
        coeffs = {}
        for k, hk in enumerate(h):
            if not hk:
                continue
            sgn = 1 if upper_is_w else -1
            coeffs[w[k]] = coeffs.get(w[k], ZERO) + sgn * hk
            for j, a in x_row[k].items():
                coeffs[j] = coeffs.get(j, ZERO) - sgn * hk * a
        b.add(coeffs, lp.GE, 0)
    _add_unit_ball(b, p.rows, w)
    fx = {c[j]: v / norm for j, v in enumerate(ep.f_on_sub) if v}
    if condition in (3, 4):
        return b, fx, c, w        # maximize f(x), violation when > 1
    return b, {j: -v for j, v in fx.items()}, c, w   # maximize -f(x), violation when > 1


def bnn_check(ep: ExtensionProblem, condition: int = 4, construct: bool = True) -> BNNResult:
    """Decide extendability through one of the sandwich conditions (2)-(5).

    With ``construct`` the extension itself is then produced by
    :func:`bnn_construct`; if that route disagrees a ConsistencyError is raised.
    """
    if condition not in CONDITIONS:
        raise ContractError(f"condition must be one of {CONDITIONS}")
    route = f"condition({condition})"
    norm = subspace_norm(ep)
    if norm == 0:
        return BNNResult(True, norm, zeros(ep.space.dim), route=route)
    if norm == math.inf:
        return BNNResult(False, norm, violation=_kernel_violation(ep), route=route)
    b, objective, c, w = _condition_lp(ep, condition, norm)
    prob = b.problem(objective)
    out = lp.solve(prob)
    pt = None
    if out.status == lp.UNBOUNDED:
        pt = lp.point_along_ray(out, prob.objective, Fraction(2))
    elif out.optimum > 1:
        pt = out.primal
    if pt is not None:
        x = ep.sub.point([pt[j] for j in c])
        y = tuple(pt[j] for j in w)
        if condition in (2, 5):
            # y <= x and f(-x) > p(y): negate into the (4) form
            x, y = tuple(-a for a in x), tuple(-a for a in y)
        return BNNResult(False, norm, violation=(x, y), route=route, lp=(prob, out))
    if not construct:
        return BNNResult(True, norm, route=route, lp=(prob, out))
    built = bnn_construct(ep)
    if not built.extendable:
        raise ConsistencyError(f"{route} holds but the dual construction is infeasible")
    return BNNResult(True, norm, built.extension, route=route, lp=(prob, out))


def bnn_construct(ep: ExtensionProblem) -> BNNResult:
    """Find ``g`` in ``N K_alpha``, positive on the cone, with ``g = f`` on the subspace basis."""
    s = ep.space
    p = s.seminorm(ep.alpha)
    norm = subspace_norm(ep)
    if norm == 0:
        return BNNResult(True, norm, zeros(s.dim), route="dual")
    if norm == math.inf:
        return BNNResult(False, norm, violation=_kernel_violation(ep), route="dual")
    b = lp.LPBuilder()
    plus, minus = _signed_weights(b, len(p.rows))
    b.add({j: 1 for j in list(plus) + list(minus)}, lp.LE, norm)
    for g in s.cone.generators:
        b.add(_functional_row(p.rows, plus, minus, g), lp.GE, 0)
    for bj, fj in zip(ep.sub.basis, ep.f_on_sub):
        b.add(_functional_row(p.rows, plus, minus, bj), lp.EQ, fj)
    prob = b.problem()
    out = lp.solve(prob)
    if not out.feasible:
        return BNNResult(False, norm, route="dual", lp=(prob, out))
    ext, _ = _combine(p.rows, plus, minus, out.primal, s.dim)
    return BNNResult(True, norm, ext, route="dual", lp=(prob, out))


def verify_extension(ep: ExtensionProblem, ext: Sequence[Fraction]) -> bool:
    """Positive, agrees with f on the basis, and has the subspace norm (an exact gauge LP)."""
    return (is_positive(ep.space, ext)
            and all(dot(ext, bj) == fj for bj, fj in zip(ep.sub.basis, ep.f_on_sub))
            and functional_norm(ep.space, ep.alpha, ext) == subspace_norm(ep))


def verify_violation(ep: ExtensionProblem, result: BNNResult) -> bool:
    from .cone import satisfies_inequalities

    x, y = result.violation
    fx = ep.value_at(x)
    if fx is None:
        return False
    between = tuple(b - a for a, b in zip(x, y))
    if not satisfies_inequalities(ep.space.cone, between):
        return False
    py = ep.space.seminorm(ep.alpha)(y)
    if result.sub_norm == math.inf:
        return fx > 0 and py == 0
    return fx > result.sub_norm * py


# -- norm additivity ------------------------------------------------------------------

@dataclass(frozen=True)
class AdditivityResult:
    additive: bool
    lhs: Fraction          # |f + g|
    rhs: Fraction          # |f| + |g|
    norm_f: Fraction
    norm_g: Fraction


def norm_additivity_check(s: CalibratedSpace, alpha: int, f: Sequence[Number],
                          g: Sequence[Number]) -> AdditivityResult:
    f, g = vec(f), vec(g)
    for name, u in (("f", f), ("g", g)):
        if not is_positive(s, u):
            raise ContractError(f"{name} is not positive on the cone")
    nf = functional_norm(s, alpha, f)
    ng = functional_norm(s, alpha, g)
    if nf == math.inf or ng == math.inf:
        raise ContractError("functionals must have finite alpha-norm")
    nh = functional_norm(s, alpha, tuple(a + b for a, b in zip(f, g)))
    return AdditivityResult(nh == nf + ng, nh, nf + ng, nf, ng)


class HypothesisError(ContractError):
    """The space does not satisfy the representability conditions at alpha.

    ``fallback`` holds the weight pair found anyway (or None); a pair still
    proves additivity, its absence proves nothing.
    """

    def __init__(self, message, fallback):
        super().__init__(message)
        self.fallback = fallback


def _extension_pair(s, alpha, f, g, verts):
    h = tuple(a + b for a, b in zip(f, g))
    nf = functional_norm(s, alpha, f)
    nh = functional_norm(s, alpha, h)
    d = s.dim
    b = lp.LPBuilder()
    wf = b.add_vars(len(verts), lo=0)
    wh = b.add_vars(len(verts), lo=0)
    for w, target, mass in ((wf, f, nf), (wh, h, nh)):
        for k in range(d):
            b.add({w[i]: v[k] for i, v in enumerate(verts) if v[k]}, lp.EQ, target[k])
        b.add({j: 1 for j in w}, lp.EQ, mass)
    for i in range(len(verts)):
        b.add({wh[i]: 1, wf[i]: -1}, lp.GE, 0)
    out = lp.solve(b.problem())
    if not out.feasible:
        return None
    return tuple(out.primal[j] for j in wf), tuple(out.primal[j] for j in wh)


def additivity_extension_witness(s: CalibratedSpace, alpha: int, f: Sequence[Number], g: Sequence[Number],
                                 fs: Optional[FiniteStateSpace] = None, strict: bool = True):
    """Extensions ``f~ <= (f+g)~`` on the finite state space, as vertex weights.

    Positive functionals of finite alpha-norm on ``C(V_alpha)`` are
    nonnegative weight vectors with norm equal to their total mass, and the
    order is componentwise.  Returns ``(w_f, w_h)`` with ``sum w_f v = f``,
    ``sum w_h v = f + g``, masses ``|f|`` and ``|f + g|`` and ``w_h >= w_f``,
    or None.  On spaces passing :func:`check_state_cover` at alpha such a
    pair exists exactly when ``|f + g| = |f| + |g|``; elsewhere (``strict``)
    a :class:`HypothesisError` carrying the one-directional answer is raised.
    """
    f, g = vec(f), vec(g)
    norm_additivity_check(s, alpha, f, g)   # validates positivity and finiteness
    if fs is None:
        fs = build_representation(s)
    pair = _extension_pair(s, alpha, f, g, fs.vertices[alpha])
    if strict and not check_state_cover(s, alpha, fs).holds:
        raise HypothesisError("space fails the state-cover condition at this alpha", pair)
    return pair

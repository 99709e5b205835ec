"""Exact rational vectors and matrices.

Scalars are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator).  Vectors are tuples of fractions and matrices are
tuples of row vectors; both are immutable, so they can be shared freely.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence, Tuple, Union

Rat = Fraction
RVec = Tuple[Fraction, ...]
RMat = Tuple[RVec, ...]

Number = Union[int, Fraction, str]

ZERO = Fraction(0)
ONE = Fraction(1)


class ContractError(ValueError):
    """Raised when an operation is called with arguments violating its contract."""


def rat(value: Number) -> Fraction:
    """Coerce ``value`` to a Fraction.

    Accepts ints, Fractions and strings of the form ``"7"`` or ``"-3/7"``.
    Floats are refused, so no binary rounding can sneak in.
    """
    if isinstance(value, bool):
        raise ContractError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        num, slash, den = text.partition("/")
        try:
            if slash:
                return Fraction(int(num), int(den))
            return Fraction(int(num))
        except (ValueError, ZeroDivisionError):
            raise ContractError(f"malformed rational literal {value!r}") from None
    raise ContractError(f"not a rational: {value!r}")


def format_rat(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vec(values: Iterable[Number]) -> RVec:
    v = tuple(rat(x) for x in values)
    if not v:
        raise ContractError("vectors must have dimension >= 1")
    return v


def mat(rows: Iterable[Iterable[Number]], ncols: Optional[int] = None) -> RMat:
    m = tuple(vec(r) for r in rows)
    widths = {len(r) for r in m}
    if ncols is not None:
        widths.add(ncols)
    if len(widths) > 1:
        raise ContractError(f"ragged matrix, row lengths {sorted(widths)}")
    return m


def zeros(n: int) -> RVec:
    return (ZERO,) * n


def unit(n: int, k: int, sign: int = 1) -> RVec:
    return tuple(Fraction(sign) if i == k else ZERO for i in range(n))


def _check_dims(u: Sequence, v: Sequence) -> None:
    if len(u) != len(v):
        raise ContractError(f"dimension mismatch: {len(u)} vs {len(v)}")


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    _check_dims(u, v)
    return sum((a * b for a, b in zip(u, v)), ZERO)


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> RVec:
    _check_dims(u, v)
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> RVec:
    _check_dims(u, v)
    return tuple(a - b for a, b in zip(u, v))


def scale(c: Number, v: Sequence[Fraction]) -> RVec:
    c = rat(c)
    return tuple(c * a for a in v)


def neg(v: Sequence[Fraction]) -> RVec:
    return tuple(-a for a in v)


def is_zero(v: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in v)


def combination(coeffs: Sequence[Fraction], vectors: Sequence[Sequence[Fraction]], n: int) -> RVec:
    """Return sum(c_k * v_k) in dimension ``n`` (the zero vector when empty)."""
    acc = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for i, a in enumerate(v):
                acc[i] += c * a
    return tuple(acc)


def matvec(A: Sequence[Sequence[Fraction]], x: Sequence[Fraction]) -> RVec:
    return tuple(dot(row, x) for row in A)


def transpose(A: Sequence[Sequence[Fraction]], ncols: Optional[int] = None) -> RMat:
    if not A:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*A))


def primitive(v: Sequence[Fraction]) -> RVec:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    if is_zero(v):
        return tuple(v)
    lcm = 1
    for a in v:
        lcm = lcm * a.denominator // gcd(lcm, a.denominator)
    ints = [int(a * lcm) for a in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    return tuple(Fraction(a // g) for a in ints)


def rref(A: Sequence[Sequence[Fraction]], ncols: Optional[int] = None) -> Tuple[list, list]:
    """Reduced row echelon form.

    Returns ``(rows, pivots)`` where ``rows`` are the nonzero rows of the
    RREF and ``pivots`` their pivot columns.  Among candidate pivot rows
    the one with the largest ``|num| * den`` is chosen; for exact
    arithmetic this only affects coefficient growth, never the result.
    """
    rows = [list(r) for r in A]
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    pivots = []
    r = 0
    for c in range(n):
        best = None
        for i in range(r, len(rows)):
            a = rows[i][c]
            if a:
                size = abs(a.numerator) * a.denominator
                if best is None or size > best[0]:
                    best = (size, i)
        if best is None:
            continue
        i = best[1]
        rows[r], rows[i] = rows[i], rows[r]
        piv = rows[r][c]
        rows[r] = [a / piv for a in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c]:
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows[:r]], pivots


def rank(A: Sequence[Sequence[Fraction]]) -> int:
    if not A:
        return 0
    return len(rref(A)[1])


def solve_linear(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction],
                 ncols: Optional[int] = None) -> Optional[RVec]:
    """Return some x with ``A x = b`` exactly, or None if the system is inconsistent.

    Free variables are set to zero.  ``ncols`` is required when ``A`` has no rows.
    """
    if len(b) != len(A):
        raise ContractError(f"right-hand side has {len(b)} entries, matrix has {len(A)} rows")
    if ncols is None:
        if not A:
            raise ContractError("ncols is required for an empty matrix")
        ncols = len(A[0])
    for row in A:
        if len(row) != ncols:
            raise ContractError("ragged matrix")
    aug = [tuple(row) + (rat(bi),) for row, bi in zip(A, b)]
    rows, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for row, p in zip(rows, pivots):
        x[p] = row[ncols]
    return tuple(x)


def null_space(A: Sequence[Sequence[Fraction]], ncols: Optional[int] = None) -> RMat:
    """Basis of ``{x : A x = 0}`` as the rows of a matrix (no rows when trivial)."""
    if ncols is None:
        if not A:
            raise ContractError("ncols is required for an empty matrix")
        ncols = len(A[0])
    rows, pivots = rref(A, ncols) if A else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [ZERO] * ncols
        x[fc] = ONE
        for row, p in zip(rows, pivots):
            x[p] = -row[fc]
        basis.append(tuple(x))
    return tuple(basis)


def row_basis(A: Sequence[Sequence[Fraction]], ncols: int) -> RMat:
    """The nonzero RREF rows: a canonical basis of the row space of ``A``."""
    if not A:
        return ()
    return tuple(rref(A, ncols)[0])

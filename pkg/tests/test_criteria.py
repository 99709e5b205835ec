from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

import oracles
from conftest import ORTHANT, vectors
from ordrep.cone import contains
from ordrep.criteria import (DecompositionError, check_full, check_state_cover, find_state,
                             grosberg_krein, krein_decompose, semi_negative, semi_positive)
from ordrep.exactla import ContractError, dot
from ordrep.instance import generate_instance
from ordrep.represent import state_vertices
from ordrep.space import functional_norm, is_increasing, is_positive

F = Fraction


def leq(cone, a, b):
    return contains(cone, tuple(y - x for x, y in zip(a, b)))


def seeded_spaces(**kw):
    return st.integers(0, 10_000).map(lambda s: generate_instance(s, **kw).space)


# -- semi positivity and states -------------------------------------------------------

def test_semi_positive_examples(orthant_sup, orthant_abs):
    assert semi_positive(orthant_sup, 0, (1, 1))
    # (1,1) - (1,1) = 0, so (1,1) is not semi negative
    neg = semi_negative(orthant_sup, 0, (1, 1))
    assert not neg and orthant_sup.seminorms[0](tuple(1 - a for a in neg.witness)) < 1
    assert semi_negative(orthant_sup, 0, (1, -2))
    res = semi_positive(orthant_sup, 0, (1, -2))
    assert not res
    l = res.witness
    assert contains(ORTHANT, l)
    p = orthant_sup.seminorms[0]
    assert p(tuple(a + b for a, b in zip((1, -2), l))) < p((1, -2))
    assert semi_positive(orthant_abs, 0, (1, -2))


def test_find_state_examples(orthant_sup, orthant_abs):
    cert = find_state(orthant_abs, 0, (1, -2))
    assert cert.sign == 1 and cert.f == (1, 0) and cert.verify(orthant_abs)
    cert = find_state(orthant_sup, 0, (1, -2))
    assert cert.sign == -1 and cert.f == (0, 1) and cert.verify(orthant_sup)
    zero = find_state(orthant_sup, 0, (0, 0))
    assert zero.f == (0, 0) and zero.verify(orthant_sup)


def test_find_state_none_when_neither(orthant_l1):
    # (1/2, -1/2) has p = 1 but every state gives at most 1/2 in absolute value
    assert find_state(orthant_l1, 0, (F(1, 2), F(-1, 2))) is None
    assert not semi_positive(orthant_l1, 0, (F(1, 2), F(-1, 2)))
    assert not semi_negative(orthant_l1, 0, (F(1, 2), F(-1, 2)))


@given(seeded_spaces(), st.data())
def test_state_exists_exactly_when_semi_positive(s, data):
    # find_state itself raises ConsistencyError if the two routes disagree
    for _ in range(3):
        x0 = data.draw(vectors(s.dim))
        cert = find_state(s, 0, x0)
        if cert is not None:
            assert cert.verify(s)
            if cert.sign == 1:
                assert semi_positive(s, 0, x0)
            else:
                assert not semi_positive(s, 0, x0) and semi_negative(s, 0, x0)
        else:
            assert not semi_positive(s, 0, x0) and not semi_negative(s, 0, x0)


@given(seeded_spaces(), st.data())
def test_positive_elements_attain_on_increasing_spaces(s, data):
    if not is_increasing(s, 0):
        return
    gens = s.cone.generators
    if not gens:
        return
    coeffs = data.draw(st.lists(st.integers(0, 4), min_size=len(gens), max_size=len(gens)))
    x0 = tuple(sum(c * g[k] for c, g in zip(coeffs, gens)) for k in range(s.dim))
    p = s.seminorms[0]
    cert = find_state(s, 0, x0)
    assert cert is not None and cert.sign == 1
    assert max(dot(v, x0) for v in state_vertices(s, 0)) == p(x0)


# -- fullness -------------------------------------------------------------------------

def test_full_examples(orthant_sup, orthant_l1):
    assert check_full(orthant_sup, 0).holds
    rep = check_full(orthant_l1, 0)
    assert not rep.holds
    x, y, z = rep.witness
    p = orthant_l1.seminorms[0]
    assert leq(ORTHANT, x, y) and leq(ORTHANT, y, z)
    assert p(x) <= 1 and p(z) <= 1 < p(y)


def test_corrected_l1_witness(orthant_l1):
    p = orthant_l1.seminorms[0]
    a, x, b = (0, -1), (1, -1), (1, 0)
    assert leq(ORTHANT, a, x) and leq(ORTHANT, x, b)
    assert (p(a), p(x), p(b)) == (1, 2, 1)


@pytest.mark.parametrize("p", [1, 2, 3, 7])
def test_lp_family_midpoint_witness_lies_on_the_unit_sphere(p):
    """x = (-(1/2)^(1/p), (1/2)^(1/p)) has norm exactly 1, so it cannot witness a non-full ball."""
    c = sympy.Rational(1, 2) ** sympy.Rational(1, p)
    x = (-c, c)
    norm = sympy.simplify((abs(x[0]) ** p + abs(x[1]) ** p) ** sympy.Rational(1, p))
    assert norm == 1


def test_full_agrees_with_brute_force_grid(orthant_l1, orthant_sup):
    for s in (orthant_l1, orthant_sup):
        rows = s.seminorms[0].rows
        found = oracles.grid_full_witness(rows, s.cone.generators, bound=1)
        assert (found is None) == check_full(s, 0).holds


def test_wedge_full_agrees_with_cover(wedge_sup):
    assert check_full(wedge_sup, 0).holds == check_state_cover(wedge_sup, 0).holds


# -- state cover ----------------------------------------------------------------------

def test_state_cover_examples(orthant_sup, orthant_antidiag):
    assert check_state_cover(orthant_sup, 0).holds
    rep = check_state_cover(orthant_antidiag, 0)
    assert not rep.holds
    w = rep.witness
    assert w["state_sup"] == 0 and w["p"] > 0
    assert orthant_antidiag.seminorms[0](w["x"]) == w["p"]


def test_cover_witness_is_neither_semi_positive_nor_negative(orthant_l1):
    rep = check_state_cover(orthant_l1, 0)
    assert not rep.holds
    x = rep.witness["x"]
    assert not semi_positive(orthant_l1, 0, x) and not semi_negative(orthant_l1, 0, x)


@given(seeded_spaces())
def test_full_iff_state_cover(s):
    for alpha in range(len(s.seminorms)):
        full = check_full(s, alpha)
        cover = check_state_cover(s, alpha)
        assert full.holds == cover.holds
        if not full.holds:
            x, y, z = full.witness
            p = s.seminorms[alpha]
            assert leq(s.cone, x, y) and leq(s.cone, y, z) and p(x) <= 1 and p(z) <= 1 < p(y)


@given(seeded_spaces(rank_deficient=True))
def test_full_iff_state_cover_rank_deficient(s):
    assert check_full(s, 0).holds == check_state_cover(s, 0).holds


# -- decompositions -------------------------------------------------------------------

def test_krein_examples(orthant_sup, wedge_sup):
    assert krein_decompose(orthant_sup, 0, (1, -1)) == ((1, 0), (0, 1))
    v1, v2 = krein_decompose(orthant_sup, 0, (2, 1))
    assert tuple(a - b for a, b in zip(v1, v2)) == (2, 1)
    v1, v2 = krein_decompose(wedge_sup, 0, (0, 1))
    assert tuple(a - b for a, b in zip(v1, v2)) == (0, 1)
    assert is_positive(wedge_sup, v1) and is_positive(wedge_sup, v2)


def test_krein_rejects_infinite_norm(orthant_abs):
    with pytest.raises(ContractError):
        krein_decompose(orthant_abs, 0, (0, 1))


def test_krein_reports_farkas_when_no_split(orthant_antidiag):
    # the only positive functional in span{(1,-1)} is 0
    with pytest.raises(DecompositionError) as exc:
        krein_decompose(orthant_antidiag, 0, (1, -1))
    y = exc.value.farkas
    assert y is not None and any(y)
    assert not grosberg_krein(orthant_antidiag, 0, (1, -1)).feasible


def test_gk_examples(orthant_sup, orthant_l1):
    res = grosberg_krein(orthant_sup, 0, (1, -1))
    assert (res.v1, res.v2, res.norm_u, res.gap) == ((1, 0), (0, 1), 2, 0)
    zero = grosberg_krein(orthant_sup, 0, (0, 0))
    assert zero.v1 == zero.v2 == (0, 0) and zero.gap == 0
    # on the non-full space (0, 1) = (0, 1) - 0 is already additive ...
    assert grosberg_krein(orthant_l1, 0, (0, 1)).gap == 0
    # ... but (1, -1) has norm 1 while every positive split costs 2
    res = grosberg_krein(orthant_l1, 0, (1, -1))
    assert (res.norm_u, res.gap) == (1, 1)


def test_gk_gap_matches_float_lp(orthant_l1):
    # minimize max(a1,a2) + max(b1,b2) over a, b >= 0 with a - b = (1, -1)
    c = [0, 0, 0, 0, 1, 1]                      # a1 a2 b1 b2 s t
    A_ub = [[1, 0, 0, 0, -1, 0], [0, 1, 0, 0, -1, 0], [0, 0, 1, 0, 0, -1], [0, 0, 0, 1, 0, -1]]
    A_eq = [[1, 0, -1, 0, 0, 0], [0, 1, 0, -1, 0, 0]]
    status, opt = oracles.float_lp(c, A_ub, [0] * 4, A_eq, [1, -1], [(0, None)] * 6, maximize=False)
    assert status == "optimal"
    res = grosberg_krein(orthant_l1, 0, (1, -1))
    assert abs(float(res.norm_u + res.gap) - opt) < 1e-9


@given(seeded_spaces(), st.data())
def test_full_spaces_have_zero_gk_gap(s, data):
    if not check_full(s, 0).holds:
        return
    rows = s.seminorms[0].rows
    coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=len(rows), max_size=len(rows)))
    u = tuple(sum(c * r[k] for c, r in zip(coeffs, rows)) for k in range(s.dim))
    res = grosberg_krein(s, 0, u)
    assert res.feasible and res.gap == 0
    assert tuple(a - b for a, b in zip(res.v1, res.v2)) == u
    assert functional_norm(s, 0, res.v1) == res.norm_v1

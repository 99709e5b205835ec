import threading
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

import oracles
from conftest import ORTHANT, WEDGE, vectors
from ordrep.cone import (PolyCone, contains, double_description, dual_cone, dual_description, is_pointed,
                         polytope_inequalities, polytope_vertices, same_cone, satisfies_inequalities)
from ordrep.exactla import ContractError, dot, rank

F = Fraction


def int_vectors(dim, bound=4):
    return st.tuples(*[st.integers(-bound, bound).map(F)] * dim).filter(any)


@st.composite
def cones(draw, max_dim=3):
    d = draw(st.integers(1, max_dim))
    gens = draw(st.lists(int_vectors(d), min_size=0, max_size=5))
    return PolyCone(d, gens)


# -- worked examples ------------------------------------------------------------------

def test_orthant_inequalities():
    assert dual_description(ORTHANT).inequalities == ((0, 1), (1, 0))


def test_wedge_inequalities_match_the_example_cone():
    # 4 t2 <= t1 <= 8 t2
    assert set(WEDGE.inequalities) == {(1, -4), (-1, 8)}
    for h in WEDGE.inequalities:
        vals = [dot(h, g) for g in WEDGE.generators]
        assert min(vals) == 0 and max(vals) > 0


def test_line_inequalities():
    line = PolyCone(2, [(1, 0), (-1, 0)])
    assert set(line.inequalities) == {(0, 1), (0, -1)}
    for x in [(5, 0), (-3, 0), (1, 1), (0, -2)]:
        assert contains(line, x) == satisfies_inequalities(line, x)


def test_membership_examples():
    assert contains(ORTHANT, (1, 2))
    assert not contains(WEDGE, (1, 1))
    for c in (ORTHANT, WEDGE, PolyCone(3)):
        assert contains(c, (0,) * c.dim)


def test_membership_dimension_mismatch():
    with pytest.raises(ContractError):
        contains(ORTHANT, (1, 2, 3))


def test_dual_cone_examples():
    assert same_cone(dual_cone(ORTHANT), ORTHANT)
    assert set(dual_cone(WEDGE).generators) == {(4, 1), (8, 1)} or same_cone(
        dual_cone(WEDGE), PolyCone.from_inequalities(2, [(4, 1), (8, 1)]))
    whole = PolyCone(2, [(1, 0), (-1, 0), (0, 1), (0, -1)])
    assert dual_cone(whole).generators == ()


def test_pointedness_examples():
    assert is_pointed(ORTHANT)
    res = is_pointed(PolyCone(2, [(1, 0), (-1, 0)]))
    assert not res and res.witness == (1, 0)
    assert is_pointed(WEDGE)
    assert is_pointed(PolyCone(2))


def test_trivial_cone_inequalities_cut_out_the_origin():
    c = PolyCone(2)
    assert set(c.inequalities) == {(1, 0), (-1, 0), (0, 1), (0, -1)}


def test_generators_are_primitive_and_deduplicated():
    c = PolyCone(2, [(2, 4), (1, 2), (F(1, 3), 0)])
    assert c.generators == ((1, 2), (1, 0))


def test_wedge_facets_match_brute_force():
    assert sorted(WEDGE.inequalities) == oracles.brute_facets(WEDGE.generators, 2)


def test_polytope_round_trip_on_a_square():
    pts = [(F(a), F(b)) for a in (-1, 1) for b in (-1, 1)]
    rows = polytope_inequalities(pts, 2)
    assert sorted(polytope_vertices(rows, 2)) == sorted(pts)


def test_polytope_vertices_rejects_unbounded():
    with pytest.raises(ContractError):
        polytope_vertices([(F(1), F(0), F(0))], 2)     # half-plane x >= 0


def test_lazy_inequalities_are_computed_once_under_concurrency():
    c = PolyCone(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)])
    seen = []
    threads = [threading.Thread(target=lambda: seen.append(c.inequalities)) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(s is seen[0] for s in seen)


# -- properties -----------------------------------------------------------------------

@given(cones(), st.data())
def test_bipolar_identity(c, data):
    x = data.draw(vectors(c.dim))
    assert contains(c, x) == satisfies_inequalities(c, x)


@given(cones())
def test_generators_satisfy_inequalities(c):
    assert all(dot(h, g) >= 0 for h in c.inequalities for g in c.generators)


@given(cones(), st.data())
def test_double_dual_is_the_cone(c, data):
    cc = dual_cone(dual_cone(c))
    assert same_cone(c, cc)
    x = data.draw(vectors(c.dim))
    assert contains(c, x) == contains(cc, x)


@given(cones())
def test_v_h_v_round_trip(c):
    back = PolyCone.from_inequalities(c.dim, c.inequalities)
    assert same_cone(c, back)


@given(cones())
def test_inequalities_are_irredundant(c):
    H = c.inequalities
    for i, h in enumerate(H):
        others = H[:i] + H[i + 1:]
        if not others:
            continue
        # h is implied by the others iff it is a nonnegative combination of them
        assert not contains(PolyCone(c.dim, others), h)


@given(cones())
def test_full_dimensional_pointed_facets_match_brute_force(c):
    assume(c.generators and rank(c.generators) == c.dim and is_pointed(c))
    assert sorted(c.inequalities) == oracles.brute_facets(c.generators, c.dim)


@given(cones())
def test_pointedness_witness_is_a_line(c):
    res = is_pointed(c)
    if not res:
        v = res.witness
        assert contains(c, v) and contains(c, tuple(-a for a in v))
    else:
        rays, lin = double_description(c.inequalities, c.dim)
        assert lin == []

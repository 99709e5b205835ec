import threading
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

import oracles
from ordrep import lp
from ordrep.exactla import ContractError
from ordrep.lp import EQ, GE, LE, Constraint, LPBuilder, LPProblem, check_feasible, solve, verify_certificate

F = Fraction


def test_bounded_maximum():
    p = LPProblem((1,), (Constraint((1,), LE, 1),), "max", ((0, None),))
    o = solve(p)
    assert (o.status, o.optimum, o.primal) == (lp.OPTIMAL, 1, (1,))
    assert verify_certificate(p, o)


def test_unbounded_reports_ray():
    p = LPProblem((1,), (), "max", ((0, None),))
    o = solve(p)
    assert o.status == lp.UNBOUNDED and o.ray == (1,)
    assert verify_certificate(p, o)


def test_two_variable_hand_solution():
    p = LPProblem((1, 1), (Constraint((1, 1), LE, 5), Constraint((1, -1), EQ, 1)), "max", ((0, None), (0, None)))
    o = solve(p)
    assert o.optimum == 5 and o.primal == (3, 2)
    assert verify_certificate(p, o)


def test_feasibility_examples():
    assert check_feasible([Constraint((1,), EQ, 1), Constraint((1,), GE, 0)]).feasible
    p_cons = [Constraint((1,), GE, 1), Constraint((1,), LE, 0)]
    o = check_feasible(p_cons)
    assert o.status == lp.INFEASIBLE and o.farkas == (1, 1)
    p = LPProblem((0,), tuple(p_cons))
    assert verify_certificate(p, o)


def test_bnn_dual_system_of_the_sup_norm_counterexample_is_infeasible():
    # c1 - 2 c2 = 2, c >= 0, c1 + c2 <= 1: the positive parts of an extension (2x-ish) cannot fit the ball
    cons = [Constraint((1, -2), EQ, 2), Constraint((1, 1), LE, 1)]
    p = LPProblem((0, 0), tuple(cons), "max", ((0, None), (0, None)))
    o = solve(p)
    assert o.status == lp.INFEASIBLE and verify_certificate(p, o)


def test_perturbed_primal_fails_verification():
    p = LPProblem((1, 1), (Constraint((1, 1), LE, 5), Constraint((1, -1), EQ, 1)), "max", ((0, None), (0, None)))
    o = solve(p)
    bad = lp.LPOutcome(o.status, o.optimum, (o.primal[0] + 1, o.primal[1]), o.dual)
    assert not verify_certificate(p, bad)


def test_outcome_must_populate_exactly_one_certificate():
    p = LPProblem((1,), (Constraint((1,), LE, 1),))
    o = solve(p)
    assert not verify_certificate(p, lp.LPOutcome(o.status, o.optimum, o.primal, o.dual, ray=(1,)))


def test_minimization_and_bounds():
    p = LPProblem((1, 2), (Constraint((1, 1), GE, 3),), "min", ((0, 2), (0, None)))
    o = solve(p)
    assert o.optimum == 4 and o.primal == (2, 1)
    assert verify_certificate(p, o)


def test_malformed_problems_are_rejected():
    with pytest.raises(ContractError):
        LPProblem((1, 2), (Constraint((1,), LE, 1),))
    with pytest.raises(ContractError):
        LPProblem((1,), (), "maximize")
    with pytest.raises(ContractError):
        LPProblem((1,), (), "max", ((2, 1),))
    with pytest.raises(ContractError):
        Constraint((1,), "<", 1)


def test_dump_lists_one_constraint_per_line():
    p = LPProblem((1, 0), (Constraint((1, 1), LE, 5), Constraint((1, -1), EQ, F(1, 2))), "max", ((0, None), (None, None)))
    lines = p.dump().splitlines()
    assert lines[0] == "max 1*x0"
    assert lines[1:3] == ["  1*x0 + 1*x1 <= 5", "  1*x0 + -1*x1 = 1/2"]


def test_builder_and_point_along_ray():
    b = LPBuilder()
    x, y = b.add_vars(2, lo=0)
    b.add({x: 1, y: -1}, LE, 1)
    p = b.problem({y: 1})
    o = solve(p)
    assert o.status == lp.UNBOUNDED
    pt = lp.point_along_ray(o, p.objective, F(10))
    assert pt[1] >= 10 and pt[0] - pt[1] <= 1 and min(pt) >= 0
    with pytest.raises(ContractError):
        lp.point_along_ray(o, (F(0), F(-1)), F(1))


def test_recording_collects_only_inside_the_block():
    p = LPProblem((1,), (Constraint((1,), LE, 1),))
    solve(p)
    with lp.recording() as log:
        solve(p)
        solve(p)
    solve(p)
    assert len(log) == 2


# -- random LPs against a floating-point oracle ---------------------------------------

@st.composite
def random_lps(draw):
    n = draw(st.integers(1, 3))
    m = draw(st.integers(0, 4))
    ints = st.integers(-4, 4)
    rows = [tuple(F(draw(ints)) for _ in range(n)) for _ in range(m)]
    rels = [draw(st.sampled_from([LE, GE, EQ])) for _ in range(m)]
    rhs = [F(draw(ints)) for _ in range(m)]
    obj = tuple(F(draw(ints)) for _ in range(n))
    bounds = tuple(draw(st.sampled_from([(None, None), (0, None), (None, 3), (-2, 2)])) for _ in range(n))
    sense = draw(st.sampled_from(["max", "min"]))
    return LPProblem(obj, tuple(Constraint(r, rel, b) for r, rel, b in zip(rows, rels, rhs)), sense, bounds)


def _oracle(p):
    ub, bub, eq, beq = [], [], [], []
    for c in p.constraints:
        if c.rel == LE:
            ub.append(c.row), bub.append(c.rhs)
        elif c.rel == GE:
            ub.append(tuple(-a for a in c.row)), bub.append(-c.rhs)
        else:
            eq.append(c.row), beq.append(c.rhs)
    bounds = [(None if lo is None else float(lo), None if hi is None else float(hi)) for lo, hi in p.bounds]
    return oracles.float_lp(p.objective, ub or None, bub or None, eq or None, beq or None, bounds,
                            maximize=p.sense == "max")


@given(random_lps())
def test_solve_agrees_with_highs_and_certifies(p):
    o = solve(p)
    assert verify_certificate(p, o)
    status, opt = _oracle(p)
    assume(status in (lp.OPTIMAL, lp.INFEASIBLE, lp.UNBOUNDED))
    assert o.status == status
    if status == lp.OPTIMAL:
        assert abs(float(o.optimum) - opt) < 1e-6


@given(random_lps())
def test_solving_twice_is_deterministic(p):
    assert solve(p) == solve(p)


@given(random_lps())
def test_strong_duality_is_exact(p):
    o = solve(p)
    if o.status == lp.OPTIMAL:
        rows = p.normalized_rows()
        dual_value = sum((y * h for y, (_, _, h) in zip(o.dual, rows)), F(0))
        assert dual_value == (o.optimum if p.sense == "max" else -o.optimum)


def test_concurrent_solves_are_independent():
    problems = [LPProblem((1,), (Constraint((1,), LE, k),), "max", ((0, None),)) for k in range(1, 9)]
    results = {}

    def work(k, p):
        results[k] = solve(p).optimum

    threads = [threading.Thread(target=work, args=(k, p)) for k, p in enumerate(problems)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert [results[k] for k in range(8)] == list(range(1, 9))

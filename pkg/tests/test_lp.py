from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from gameaxioms.errors import MalformedProgram
from gameaxioms.lp import (
    LinearProgram,
    LPStatus,
    column_player_value,
    is_vertex,
    matrix_rank,
    record_programs,
    solve,
    solve_linear_system,
    zero_sum_value,
)


def beale():
    """Classic instance on which the largest-coefficient rule cycles forever."""
    lp = LinearProgram(4, objective=(F(3, 4), -20, F(1, 2), -6))
    lp.add_constraint([F(1, 4), -8, -1, 9], "<=", 0)
    lp.add_constraint([F(1, 2), -12, F(-1, 2), 3], "<=", 0)
    lp.add_constraint([0, 0, 1, 0], "<=", 1)
    return lp


@pytest.mark.parametrize("rule", ["dantzig", "bland"])
def test_degenerate_fixture_terminates_at_the_optimum(rule):
    out = solve(beale(), pivot_rule=rule)
    assert out.status is LPStatus.OPTIMAL
    assert out.value == F(5, 4)
    assert out.solution == (1, 0, 1, 0)
    assert is_vertex(beale(), out.solution)


def test_small_program_against_vertex_enumeration():
    rows = [[1, 1, 0], [1, 0, 2], [0, 1, 1]]
    lp = LinearProgram(3, objective=(3, 2, 4))
    for r, b in zip(rows, (4, 5, 3)):
        lp.add_constraint(r, "<=", b)
    out = solve(lp)
    assert out.value == oracles.lp_optimum(3, (3, 2, 4), rows, ["<="] * 3, (4, 5, 3))
    assert lp.feasible(out.solution) and is_vertex(lp, out.solution)


def test_infeasible_and_unbounded():
    lp = LinearProgram(2)
    lp.add_constraint([1, 1], "<=", 1)
    lp.add_constraint([1, 1], ">=", 2)
    assert solve(lp).status is LPStatus.INFEASIBLE
    lp = LinearProgram(2, objective=(1, 0))
    lp.add_constraint([1, -1], "<=", 1)
    assert solve(lp).status is LPStatus.UNBOUNDED


def test_minimize_with_free_and_bounded_variables():
    # min x - y  s.t. x + y == 1, -2 <= x free below, y <= 3/2
    lp = LinearProgram(2, objective=(1, -1), sense="min", lower=[None, 0], upper=[None, F(3, 2)])
    lp.add_constraint([1, 1], "==", 1)
    out = solve(lp)
    assert out.solution == (F(-1, 2), F(3, 2))
    assert out.value == -2


def test_redundant_equalities_are_harmless():
    lp = LinearProgram(2, objective=(1, 2))
    lp.add_constraint([1, 1], "==", 1)
    lp.add_constraint([2, 2], "==", 2)
    assert solve(lp).value == 2


def test_malformed_programs_are_rejected():
    with pytest.raises(MalformedProgram):
        LinearProgram(2, objective=(1,))
    lp = LinearProgram(2)
    with pytest.raises(MalformedProgram):
        lp.add_constraint([1, 2, 3], "<=", 1)
    with pytest.raises(MalformedProgram):
        lp.add_constraint([1, 2], "<>", 1)
    with pytest.raises(MalformedProgram):
        solve(lp, pivot_rule="random")


def test_record_programs_sees_every_solve():
    with record_programs() as log:
        zero_sum_value([[1, 2], [3, 0]])
        solve(beale())
    assert len(log) == 2 and all(out.optimal for _, out in log)


def test_zero_sum_fixtures():
    assert zero_sum_value([[2, 0], [0, 1]]) == (F(2, 3), (F(1, 3), F(2, 3)))
    assert zero_sum_value([[1, -1], [-1, 1]]) == (0, (F(1, 2), F(1, 2)))
    # saddle point
    assert zero_sum_value([[3, 0], [4, 1]]).value == 1


def test_linear_systems():
    assert solve_linear_system([[1, 1], [1, -1]], [2, 0]) == ((1, 1), True)
    assert solve_linear_system([[1, 1], [2, 2]], [1, 3]).solution is None
    sol = solve_linear_system([[1, 1], [2, 2]], [1, 2])
    assert sol.unique is False and sum(sol.solution) == 1
    assert matrix_rank([[1, 2], [2, 4], [0, 1]], 2) == 2


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_strong_duality_and_optimality_certificates(m):
    row = zero_sum_value(m)
    col = column_player_value(m)
    assert row.value == col.value
    r, c = len(m), len(m[0])
    # x guarantees at least the value against every column, y concedes at most the value to every row
    assert min(sum(row.strategy[i] * m[i][j] for i in range(r)) for j in range(c)) == row.value
    assert max(sum(m[i][j] * col.strategy[j] for j in range(c)) for i in range(r)) == col.value
    assert row.value == oracles.maximin(m)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=1, max_size=3),
       st.lists(st.integers(0, 6), min_size=3, max_size=3),
       st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_random_bounded_programs_match_vertex_enumeration(rows, rhs, objective):
    rhs = rhs[:len(rows)]
    lp = LinearProgram(3, objective=objective)
    for r, b in zip(rows, rhs):
        lp.add_constraint(r, "<=", b)
    lp.add_constraint([1, 1, 1], "<=", 10)  # keeps the region bounded
    all_rows = rows + [[1, 1, 1]]
    all_rhs = list(rhs) + [10]
    expected = oracles.lp_optimum(3, objective, all_rows, ["<="] * len(all_rows), all_rhs)
    for rule in ("dantzig", "bland"):
        out = solve(lp, pivot_rule=rule)
        assert out.optimal and out.value == expected
        assert is_vertex(lp, out.solution)

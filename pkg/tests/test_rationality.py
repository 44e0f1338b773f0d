import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from gameaxioms import CorrelatedDistribution, Game, PureProfile, UnsupportedPlayerCount
from gameaxioms.rationality import (
    cir,
    cir_solution,
    ir_2p,
    pir,
    pir_attaining_actions,
    pir_holds,
    pirar_holds,
    rationality_values,
)

HALF = F(1, 2)


def test_fixture_values(pd, mp):
    assert (pir(pd, 0), pir(pd, 1)) == (1, 1)
    sol = cir_solution(mp, 0)
    assert sol.value == 0 and sol.strategy == (HALF, HALF)
    assert (cir(mp, 0), cir(mp, 1)) == (0, 0)
    assert rationality_values(mp).pir == (-1, -1)


def test_fixtures_against_oracles(pd, mp):
    for g in (pd, mp):
        u = oracles.as_dict(g.action_counts, g.payoffs)
        for i in range(2):
            assert pir(g, i) == oracles.pir(g.action_counts, u, i)
            assert cir(g, i) == oracles.maximin(g.player_matrix(i))


def test_ir_needs_two_players():
    g = Game.zero((2, 2, 2))
    with pytest.raises(UnsupportedPlayerCount):
        ir_2p(g, 0)
    assert rationality_values(g).ir == (None, None, None)


def test_three_player_cir_punishes_with_correlation():
    # player 1 gets 1 unless the two opponents coordinate against its action
    g = Game.from_function((2, 2, 2), lambda i, a: int(not (a[1] == a[2] == a[0])) if i == 0 else 0)
    assert pir(g, 0) == 0
    assert cir(g, 0) == HALF
    assert cir(g, 0) == oracles.maximin(g.player_matrix(0))


def test_pir_attaining_actions(pd):
    assert pir_attaining_actions(pd, 0) == (1,)


def test_pir_and_pirar_predicates(pd):
    assert pir_holds(pd, PureProfile((0, 0))) == (True, True)
    assert pir_holds(pd, PureProfile((1, 1))) == (False, False)
    x = CorrelatedDistribution.from_dict((2, 2), {(0, 0): HALF, (1, 1): HALF})
    # following C yields 3 > 1, following D yields 1 which is not above 1
    assert pirar_holds(pd, x) == {(0, 0): True, (0, 1): False, (1, 0): True, (1, 1): False}


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 3), st.integers(2, 3), st.integers(0, 10**6))
def test_pir_at_most_cir(r, c, seed):
    rng = random.Random(seed)
    g = Game((r, c), tuple(tuple(rng.randint(-9, 9) for _ in range(r * c)) for _ in range(2)))
    for i in range(2):
        assert pir(g, i) <= cir(g, i) == ir_2p(g, i)
        sol = cir_solution(g, i)
        m = g.player_matrix(i)
        assert min(sum(p * m[a][k] for a, p in enumerate(sol.strategy)) for k in range(len(m[0]))) == sol.value

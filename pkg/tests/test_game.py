from fractions import Fraction as F

import pytest

import oracles
from gameaxioms import (
    CorrelatedDistribution,
    Game,
    MixedProfile,
    PureProfile,
    ShapeMismatch,
    ZeroProbabilityCondition,
    condition,
    evaluate_payoff,
    marginal_others,
    marginal_self,
)
from gameaxioms.game import (
    deviation_payoffs,
    deviation_table,
    joint_distribution,
    layout,
    others_distribution,
    others_profiles,
    to_rational,
)

HALF = F(1, 2)


def test_flat_order_puts_last_player_fastest(pd):
    assert pd.payoff(0, (1, 0)) == 4
    assert pd.payoff(1, (0, 1)) == 4
    assert pd.payoffs[0] == (3, 0, 4, 1)


def test_layout_of_three_player_shape():
    lay = layout((2, 3, 2))
    assert lay.strides == (6, 2, 1)
    assert lay.size == 12
    assert lay.index((1, 2, 1)) == 11
    assert others_profiles((2, 3, 2), 1) == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert lay.others_base[1] == (0, 1, 6, 7)
    assert lay.join(1, 2, (1, 0)) == (1, 2, 0)
    assert lay.others_index(1, (1, 2, 0)) == 2


def test_player_matrix_rows_are_own_actions():
    g = Game.from_function((2, 3), lambda i, a: 10 * a[0] + a[1] + 100 * i)
    assert g.player_matrix(0) == ((0, 1, 2), (10, 11, 12))
    assert g.player_matrix(1) == ((100, 110), (101, 111), (102, 112))


@pytest.mark.parametrize("bad", [0.5, True, object()])
def test_floats_and_non_numbers_are_rejected(bad):
    with pytest.raises(TypeError):
        to_rational(bad)


def test_strings_parse_exactly():
    assert to_rational(" -3/6 ") == F(-1, 2)
    assert Game((1,), (("1/3",),)).payoffs == ((F(1, 3),),)


def test_shape_errors():
    with pytest.raises(ShapeMismatch):
        Game((2, 2), ((1, 2, 3),))
    with pytest.raises(ShapeMismatch):
        Game((2, 2), ((1, 2, 3), (1, 2, 3, 4)))
    with pytest.raises(ShapeMismatch):
        PureProfile((0, 2)).check_shape((2, 2))


def test_distribution_validation():
    with pytest.raises(ValueError):
        MixedProfile(((HALF, HALF), (F(1, 3), F(1, 3))))
    with pytest.raises(ValueError):
        CorrelatedDistribution((2,), (F(3, 2), F(-1, 2)))


def test_add_and_subtract(pd, co):
    s = pd + co
    assert s.payoff(0, (0, 0)) == 5
    assert (s - co) == pd
    assert (-pd).payoff(1, (1, 1)) == -1


def test_payoffs_of_each_behavior_kind(pd):
    assert evaluate_payoff(pd, PureProfile((1, 0)), 0) == 4
    x = MixedProfile(((HALF, HALF), (F(1, 4), F(3, 4))))
    dist = oracles.product_distribution(x.per_player)
    u = oracles.as_dict(pd.action_counts, pd.payoffs)
    for i in range(2):
        assert evaluate_payoff(pd, x, i) == oracles.expected(u, dist, i)
    y = CorrelatedDistribution.from_dict((2, 2), {(0, 0): HALF, (1, 1): HALF})
    assert evaluate_payoff(pd, y, 0) == 2


def test_joint_distribution_is_the_product():
    x = MixedProfile(((F(1, 3), F(2, 3)), (F(1, 4), F(1, 4), HALF)))
    j = joint_distribution(x, (2, 3))
    assert j.weights == (F(1, 12), F(1, 12), F(1, 6), F(1, 6), F(1, 6), F(1, 3))
    assert x.to_correlated() == j


def test_marginals_and_conditionals():
    x = CorrelatedDistribution((2, 2), (F(1, 8), F(3, 8), F(1, 4), F(1, 4)))
    assert marginal_self(x, 0) == (HALF, HALF)
    assert marginal_self(x, 1) == (F(3, 8), F(5, 8))
    assert marginal_others(x, 0) == (F(3, 8), F(5, 8))
    assert condition(x, 0, 0) == (F(1, 4), F(3, 4))
    assert condition(x, 1, 1) == (F(3, 5), F(2, 5))


def test_condition_on_zero_mass_raises():
    x = CorrelatedDistribution.point_mass((2, 2), (0, 0))
    with pytest.raises(ZeroProbabilityCondition):
        condition(x, 0, 1)


def test_others_distribution_for_three_players():
    x = MixedProfile(((HALF, HALF), (F(1, 3), F(2, 3)), (1, 0)))
    assert others_distribution(x, 1, (2, 2, 2)) == (HALF, 0, HALF, 0)
    assert others_distribution(PureProfile((1, 0, 1)), 0, (2, 2, 2)) == (0, 1, 0, 0)


def test_deviation_table_matches_brute_force():
    g = Game.from_function((2, 3, 2), lambda i, a: (7 * i + 3 * a[0] - 2 * a[1] * a[2] + a[i]) % 11 - 5)
    u = oracles.as_dict(g.action_counts, g.payoffs)
    x = MixedProfile(((F(1, 3), F(2, 3)), (F(1, 2), 0, F(1, 2)), (F(1, 5), F(4, 5))))
    dist = oracles.product_distribution(x.per_player)
    for i in range(3):
        value, devs, den = deviation_table(g, x, i)
        assert F(value, den) == oracles.expected(u, dist, i)
        for b, d in enumerate(devs):
            dev = sum(p * u[oracles.replace(a, i, b)][i] for a, p in dist.items())
            assert F(d, den) == dev
        others = others_distribution(x, i, g.action_counts)
        assert deviation_payoffs(g, i, others) == tuple(F(d, den) for d in devs)

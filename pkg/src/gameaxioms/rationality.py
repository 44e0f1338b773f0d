"""Individual-rationality levels: pure (pir), correlated punishment (cir), ir.

``ir`` lets the opponents mix only independently. With one opponent that is
the same as ``cir``; for three or more players it is a nonconvex problem and
is not computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from gameaxioms.errors import UnsupportedPlayerCount
from gameaxioms.game import Behavior, CorrelatedDistribution, Game, _player_slices, evaluate_payoff
from gameaxioms.lp import ZeroSumValue, zero_sum_value
from gameaxioms import kernels


@dataclass(frozen=True)
class RationalityValues:
    pir: tuple[Fraction, ...]
    cir: tuple[Fraction, ...]
    ir: tuple[Optional[Fraction], ...]


def pir(u: Game, i: int) -> Fraction:
    """Best payoff player i can guarantee with a pure action."""
    rows, den = u._int_views[i]
    return Fraction(max(min(row) for row in rows), den)


def pir_attaining_actions(u: Game, i: int) -> tuple[int, ...]:
    rows, _ = u._int_views[i]
    guarantees = [min(row) for row in rows]
    top = max(guarantees)
    return tuple(a for a, g in enumerate(guarantees) if g == top)


def cir_solution(u: Game, i: int) -> ZeroSumValue:
    """Value and guaranteeing mixed strategy of player i against a correlated adversary."""
    return zero_sum_value(u.player_matrix(i))


def cir(u: Game, i: int) -> Fraction:
    return cir_solution(u, i).value


def ir_2p(u: Game, i: int) -> Fraction:
    if u.num_players != 2:
        raise UnsupportedPlayerCount(
            f"independent-punishment value is only computed for 2 players, got {u.num_players}"
        )
    return cir(u, i)


def rationality_values(u: Game) -> RationalityValues:
    n = u.num_players
    cirs = tuple(cir(u, i) for i in range(n))
    return RationalityValues(
        pir=tuple(pir(u, i) for i in range(n)),
        cir=cirs,
        ir=cirs if n == 2 else (None,) * n,
    )


def pir_holds(u: Game, x: Behavior) -> tuple[bool, ...]:
    """Per player: is ``u_i(x)`` strictly above ``pir_i(u)``?"""
    return tuple(evaluate_payoff(u, x, i) > pir(u, i) for i in range(u.num_players))


def pirar_holds(u: Game, x: CorrelatedDistribution) -> dict[tuple[int, int], bool]:
    """Per (player, recommended action in the support): follow payoff > pir."""
    x.check_shape(u.action_counts)
    out = {}
    for i in range(u.num_players):
        rows, du = u._int_views[i]
        level = pir(u, i)
        for a_i, s in enumerate(_player_slices(x, i)):
            mass = sum(s)
            if mass:
                out[(i, a_i)] = Fraction(kernels.dot(rows[a_i], s), du * mass) > level
    return out

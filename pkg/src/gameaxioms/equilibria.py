"""Equilibrium membership tests and constructions.

All deviation checks are against pure actions; by multilinearity that is
enough for every equilibrium notion handled here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from gameaxioms import kernels
from gameaxioms.errors import InvariantFailure, UnsupportedPlayerCount
from gameaxioms.game import (
    Behavior,
    CorrelatedDistribution,
    Game,
    MixedProfile,
    PureProfile,
    _player_slices,
    deviation_payoffs,
    deviation_table,
    to_rational,
)
from gameaxioms.lp import LinearProgram, solve, solve_linear_system


@dataclass(frozen=True)
class Violation:
    """Player ``player`` gains ``gain`` by switching to ``action``.

    For correlated equilibrium checks ``recommendation`` is the recommended
    action being abandoned and ``gain`` is conditional on it.
    """

    player: int
    action: int
    gain: Fraction
    recommendation: Optional[int] = None


@dataclass(frozen=True)
class DeviationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def holds(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class MaximizerReport:
    weak_maximizers: tuple[PureProfile, ...]
    strict_maximizer: Optional[PureProfile]


def check_nudi(u: Game, x: Behavior) -> DeviationReport:
    """Every (player, action) whose unilateral deviation strictly gains."""
    out = []
    for i in range(u.num_players):
        value, devs, den = deviation_table(u, x, i)
        for b, d in enumerate(devs):
            if d > value:
                out.append(Violation(i, b, Fraction(d - value, den)))
    return DeviationReport(tuple(out))


def is_pne(u: Game, a) -> bool:
    return check_nudi(u, _pure(a)).holds


def _pure(a) -> PureProfile:
    return a if isinstance(a, PureProfile) else PureProfile(tuple(a))


def enumerate_pne(u: Game) -> tuple[PureProfile, ...]:
    """All pure Nash equilibria in lexicographic order."""
    lay = u.layout
    best = []
    for i in range(u.num_players):
        rows, _ = u._int_views[i]
        best.append([max(col) for col in zip(*rows)])
    out = []
    for a in u.profiles():
        for i in range(u.num_players):
            rows, _ = u._int_views[i]
            k = lay.others_index(i, a)
            if rows[a[i]][k] != best[i][k]:
                break
        else:
            out.append(PureProfile(a))
    return tuple(out)


def is_strict_pne(u: Game, a) -> bool:
    """True iff every unilateral pure deviation from ``a`` strictly loses."""
    a = _pure(a)
    a.check_shape(u.action_counts)
    lay = u.layout
    for i in range(u.num_players):
        rows, _ = u._int_views[i]
        k = lay.others_index(i, a.actions)
        own = rows[a.actions[i]][k]
        if any(rows[b][k] >= own for b in range(len(rows)) if b != a.actions[i]):
            return False
    return True


def is_ne(u: Game, x: MixedProfile) -> DeviationReport:
    if not isinstance(x, MixedProfile):
        raise TypeError("is_ne expects a MixedProfile")
    return check_nudi(u, x)


def is_ce(u: Game, x: CorrelatedDistribution) -> DeviationReport:
    """Conditional best-reply check for every recommendation in the support."""
    x.check_shape(u.action_counts)
    out = []
    for i in range(u.num_players):
        rows, du = u._int_views[i]
        for a_i, s in enumerate(_player_slices(x, i)):
            mass = sum(s)
            if not mass:
                continue
            devs = kernels.matvec(rows, s)
            follow = devs[a_i]
            for b, d in enumerate(devs):
                if d > follow:
                    out.append(Violation(i, b, Fraction(d - follow, du * mass), recommendation=a_i))
    return DeviationReport(tuple(out))


def is_cce(u: Game, x: CorrelatedDistribution) -> DeviationReport:
    if not isinstance(x, CorrelatedDistribution):
        raise TypeError("is_cce expects a CorrelatedDistribution")
    return check_nudi(u, x)


@dataclass(frozen=True)
class SupportEnumeration:
    """Result of support enumeration; ``degenerate`` means possibly incomplete."""

    equilibria: tuple[MixedProfile, ...]
    degenerate: bool

    @property
    def complete(self) -> bool:
        return not self.degenerate


def _indifference(payoff_rows, own_support, other_support):
    """Mix over ``other_support`` making every row in ``own_support`` indifferent.

    ``payoff_rows[r][c]`` is the indifferent player's payoff. Unknowns are the
    mixing weights followed by the common value.
    """
    k = len(other_support)
    a = [[payoff_rows[r][c] for c in other_support] + [Fraction(-1)] for r in own_support]
    a.append([Fraction(1)] * k + [Fraction(0)])
    b = [Fraction(0)] * len(own_support) + [Fraction(1)]
    return solve_linear_system(a, b)


def enumerate_ne_2p(u: Game) -> SupportEnumeration:
    """All Nash equilibria of a nondegenerate two-player game.

    Equal-size support pairs are enumerated and their indifference systems
    solved exactly. If any system has a continuum of solutions, or some
    equilibrium has more best replies than its support size, the game is
    degenerate and the returned list may miss equilibria.
    """
    if u.num_players != 2:
        raise UnsupportedPlayerCount(f"support enumeration needs 2 players, got {u.num_players}")
    m, n = u.action_counts
    A = u.player_matrix(0)  # A[a1][a2]
    B = u.player_matrix(1)  # B[a2][a1]
    found = {}
    degenerate = False
    for k in range(1, min(m, n) + 1):
        for I in itertools.combinations(range(m), k):
            for J in itertools.combinations(range(n), k):
                ysol = _indifference(A, I, J)
                if ysol.solution is None:
                    continue
                xsol = _indifference(B, J, I)
                if xsol.solution is None:
                    continue
                if not (ysol.unique and xsol.unique):
                    degenerate = True
                y_sup, v1 = ysol.solution[:-1], ysol.solution[-1]
                x_sup, v2 = xsol.solution[:-1], xsol.solution[-1]
                if any(p < 0 for p in y_sup) or any(p < 0 for p in x_sup):
                    continue
                x = [Fraction(0)] * m
                y = [Fraction(0)] * n
                for i, p in zip(I, x_sup):
                    x[i] = p
                for j, p in zip(J, y_sup):
                    y[j] = p
                if any(sum(A[r][c] * y[c] for c in J) > v1 for r in range(m)):
                    continue
                if any(sum(B[c][r] * x[r] for r in I) > v2 for c in range(n)):
                    continue
                prof = MixedProfile((tuple(x), tuple(y)))
                found[prof.per_player] = prof
    for prof in found.values():
        x, y = prof.per_player
        br1 = sum(1 for r in range(m) if sum(A[r][c] * y[c] for c in range(n)) == max(
            sum(A[s][c] * y[c] for c in range(n)) for s in range(m)))
        br2 = sum(1 for c in range(n) if sum(B[c][r] * x[r] for r in range(m)) == max(
            sum(B[d][r] * x[r] for r in range(m)) for d in range(n)))
        if br1 > sum(1 for p in y if p) or br2 > sum(1 for p in x if p):
            degenerate = True
        if not is_ne(u, prof).holds:
            raise InvariantFailure("support enumeration produced a non-equilibrium")
    eqs = tuple(found[key] for key in sorted(found))
    return SupportEnumeration(eqs, degenerate)


def welfare_objective(u: Game) -> tuple[Fraction, ...]:
    """Coefficients of social welfare, one per profile."""
    return tuple(sum(vals) for vals in zip(*u.payoffs))


def payoff_objective(u: Game, i: int) -> tuple[Fraction, ...]:
    return u.payoffs[i]


def _polytope_program(u: Game, objective, kind: str) -> LinearProgram:
    size = u.num_profiles
    if objective is None:
        objective = (0,) * size
    objective = tuple(to_rational(c) for c in objective)
    lp = LinearProgram(size, objective=objective, sense="max")
    lay = u.layout
    for i in range(u.num_players):
        stride = lay.strides[i]
        bases = lay.others_base[i]
        mat = u.player_matrix(i)
        if kind == "ce":
            for a_i in range(u.action_counts[i]):
                for b_i in range(u.action_counts[i]):
                    if b_i == a_i:
                        continue
                    row = [Fraction(0)] * size
                    for k, base in enumerate(bases):
                        row[base + a_i * stride] = mat[a_i][k] - mat[b_i][k]
                    lp.add_constraint(row, ">=", 0)
        else:
            for b_i in range(u.action_counts[i]):
                row = [Fraction(0)] * size
                for a_i in range(u.action_counts[i]):
                    for k, base in enumerate(bases):
                        row[base + a_i * stride] = mat[a_i][k] - mat[b_i][k]
                lp.add_constraint(row, ">=", 0)
    lp.add_constraint([1] * size, "==", 1)
    return lp


def ce_program(u: Game, objective=None) -> LinearProgram:
    return _polytope_program(u, objective, "ce")


def cce_program(u: Game, objective=None) -> LinearProgram:
    return _polytope_program(u, objective, "cce")


def _find(u: Game, objective, kind: str) -> CorrelatedDistribution:
    out = solve(_polytope_program(u, objective, kind))
    if not out.optimal:
        raise InvariantFailure(f"{kind.upper()} polytope program is {out.status.value}")
    x = CorrelatedDistribution(u.action_counts, out.solution)
    check = is_ce if kind == "ce" else is_cce
    if not check(u, x).holds:
        raise InvariantFailure(f"LP vertex fails the {kind.upper()} membership test")
    return x


def find_ce(u: Game, objective=None) -> CorrelatedDistribution:
    """A vertex of the correlated equilibrium polytope maximizing ``objective``."""
    return _find(u, objective, "ce")


def find_cce(u: Game, objective=None) -> CorrelatedDistribution:
    """A vertex of the coarse correlated equilibrium polytope maximizing ``objective``."""
    return _find(u, objective, "cce")


def find_maximizers(u: Game) -> MaximizerReport:
    """Profiles that simultaneously maximize every player's payoff."""
    tops = [max(t) for t in u.payoffs]
    weak = [a for idx, a in enumerate(u.profiles()) if all(u.payoffs[i][idx] == tops[i] for i in range(u.num_players))]
    strict = None
    if len(weak) == 1:
        idx = u.layout.index(weak[0])
        if all(sum(1 for v in t if v == t[idx]) == 1 for t in u.payoffs):
            strict = PureProfile(weak[0])
    return MaximizerReport(tuple(PureProfile(a) for a in weak), strict)


def best_responses(u: Game, i: int, others: Sequence[Fraction]) -> tuple[int, ...]:
    vals = deviation_payoffs(u, i, others)
    top = max(vals)
    return tuple(b for b, v in enumerate(vals) if v == top)

"""Strategic equivalence: transfer games and the witness constructions.

A transfer game ``z(c, i, b)`` pays player i the amount c exactly when the
opponents play ``b``. Adding any finite sum of them never changes a player's
incentives, so each witness below builds a game equivalent to the input in
which some axiom visibly fails (or some profile becomes a simultaneous
maximizer), and records the exact inequalities that show it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence, Union

from gameaxioms import kernels
from gameaxioms.equilibria import find_maximizers, is_pne, is_strict_pne
from gameaxioms.errors import (
    InvariantFailure,
    NotAPureNashEquilibrium,
    NotStrictPNE,
    PreconditionNotMet,
    ProfilesEqual,
    ShapeMismatch,
    ZeroProbabilityCondition,
)
from gameaxioms.game import (
    Behavior,
    CorrelatedDistribution,
    Game,
    PureProfile,
    condition,
    evaluate_payoff,
    layout,
    marginal_self,
    others_distribution,
    payoff_against,
    to_rational,
)
from gameaxioms.rationality import pir

_RELATIONS = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    "==": lambda a, b: a == b,
    ">=": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
}


def make_z_game(c, i: int, b_minus_i: Sequence[int], shape: Sequence[int]) -> Game:
    """The transfer game paying player i the amount c iff opponents play b_minus_i."""
    lay = layout(tuple(shape))
    if not 0 <= i < len(lay.shape):
        raise ShapeMismatch(f"no player index {i} in a {len(lay.shape)}-player game")
    b = tuple(b_minus_i)
    if len(b) != len(lay.shape) - 1:
        raise ShapeMismatch(f"opponent profile {b} has the wrong length")
    full = lay.join(i, 0, b)
    base = lay.index(full)
    c = to_rational(c)
    tensors = [[Fraction(0)] * lay.size for _ in lay.shape]
    for a_i in range(lay.shape[i]):
        tensors[i][base + a_i * lay.strides[i]] = c
    return Game(lay.shape, tuple(tuple(t) for t in tensors))


def apply_offsets(u: Game, i: int, offsets: Sequence[Fraction]) -> Game:
    """``u`` plus the sum over k of ``z(offsets[k], i, k-th opponent profile)``."""
    lay = u.layout
    bases = lay.others_base[i]
    if len(offsets) != len(bases):
        raise ShapeMismatch(f"expected {len(bases)} offsets for player {i + 1}, got {len(offsets)}")
    new = list(u.payoffs[i])
    stride = lay.strides[i]
    for base, d in zip(bases, offsets):
        if d:
            for a_i in range(lay.shape[i]):
                new[base + a_i * stride] += d
    tensors = list(u.payoffs)
    tensors[i] = tuple(new)
    return Game(u.action_counts, tuple(tensors))


@dataclass(frozen=True)
class EquivalenceCertificate:
    """``v_i(a) - u_i(a) == offsets[i][k]`` where k indexes ``a_{-i}``."""

    offsets: tuple[tuple[Fraction, ...], ...]
    shape: tuple[int, ...] = field(default=(), compare=False)
    equivalent = True

    def apply(self, u: Game) -> Game:
        v = u
        for i, offs in enumerate(self.offsets):
            v = apply_offsets(v, i, offs)
        return v

    def transfers(self, shape: Sequence[int] = ()) -> list[tuple[Fraction, int, tuple[int, ...]]]:
        """The nonzero ``(c, i, b_{-i})`` terms whose z-games sum to the difference."""
        lay = layout(tuple(shape or self.shape))
        return [
            (c, i, lay.others_profiles[i][k])
            for i, offs in enumerate(self.offsets)
            for k, c in enumerate(offs)
            if c
        ]

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class NotEquivalent:
    """Player ``player``'s payoff difference depends on its own action.

    At opponent profile ``others`` the difference is ``difference`` under
    ``action`` and ``other_difference`` under ``other_action``.
    """

    player: int
    others: tuple[int, ...]
    action: int
    other_action: int
    difference: Fraction
    other_difference: Fraction
    equivalent = False

    def __bool__(self) -> bool:
        return False


def strategically_equivalent(u: Game, v: Game) -> Union[EquivalenceCertificate, NotEquivalent]:
    """Decide whether v is u plus a finite sum of transfer games."""
    if u.action_counts != v.action_counts:
        raise ShapeMismatch(f"games have shapes {u.action_counts} and {v.action_counts}")
    lay = u.layout
    offsets = []
    for i in range(u.num_players):
        nu, du = u._int_flat[i]
        nv, dv = v._int_flat[i]
        diff = kernels.scaled_difference(nu, du, nv, dv)
        bases = lay.others_base[i]
        stride = lay.strides[i]
        hit = kernels.own_action_dependence(diff, bases, stride, lay.shape[i])
        den = du * dv
        if hit is not None:
            k, a_i = hit
            return NotEquivalent(
                i, lay.others_profiles[i][k], 0, a_i,
                Fraction(diff[bases[k]], den), Fraction(diff[bases[k] + a_i * stride], den),
            )
        offsets.append(tuple(Fraction(diff[base], den) for base in bases))
    return EquivalenceCertificate(tuple(offsets), u.action_counts)


@dataclass(frozen=True)
class Inequality:
    description: str
    lhs: Fraction
    relation: str
    rhs: Fraction

    def holds(self) -> bool:
        return _RELATIONS[self.relation](self.lhs, self.rhs)


@dataclass(frozen=True)
class WitnessCertificate:
    """A constructed equivalent game plus the exact inequalities it satisfies.

    ``parameters`` are the builder arguments, so :meth:`verify` can rebuild
    the certificate from ``original`` alone and compare.
    """

    kind: str
    original: Game
    transformed: Game
    equivalence: EquivalenceCertificate
    checked_inequalities: tuple[Inequality, ...]
    parameters: dict = field(default_factory=dict, compare=False, hash=False)

    def failed_inequalities(self) -> list[Inequality]:
        return [q for q in self.checked_inequalities if not q.holds()]

    def verify(self) -> bool:
        if self.failed_inequalities():
            return False
        eq = strategically_equivalent(self.original, self.transformed)
        if not eq or eq.offsets != self.equivalence.offsets:
            return False
        if self.equivalence.apply(self.original) != self.transformed:
            return False
        try:
            rebuilt = _BUILDERS[self.kind](self.original, **self.parameters)
        except PreconditionNotMet:
            return False
        return (
            rebuilt.transformed == self.transformed
            and rebuilt.checked_inequalities == self.checked_inequalities
        )


def _finish(kind: str, u: Game, v: Game, checks: list[Inequality], parameters: dict) -> WitnessCertificate:
    eq = strategically_equivalent(u, v)
    if not eq:
        raise InvariantFailure(f"{kind} construction left the equivalence class")
    cert = WitnessCertificate(kind, u, v, eq, tuple(checks), parameters)
    bad = cert.failed_inequalities()
    if bad:
        raise InvariantFailure(f"{kind} construction violates: {bad[0].description}")
    return cert


def _zero_out_action(u: Game, i: int, action: int) -> Game:
    """Shift player i's payoffs so that playing ``action`` pays 0 everywhere."""
    row = u.player_matrix(i)[action]
    return apply_offsets(u, i, [-v for v in row])


def _zeroed_row_checks(v: Game, i: int, action: int, label: str) -> list[Inequality]:
    lay = v.layout
    return [
        Inequality(f"v_{i + 1}({label}, {b}) == 0", v.payoffs[i][lay.index(lay.join(i, action, b))], "==", Fraction(0))
        for b in lay.others_profiles[i]
    ]


def pir_violation_witness(u: Game, x: Behavior, i: int, a_i: int) -> WitnessCertificate:
    """Equivalent game where x pays player i below its pure guarantee.

    Requires deviating to ``a_i`` against ``x_{-i}`` to strictly gain.
    Player i's payoffs for ``a_i`` are zeroed, so ``pir_i(v) >= 0`` while
    ``v_i(x) = u_i(x) - u_i(a_i, x_{-i}) < 0``.
    """
    x.check_shape(u.action_counts)
    if not 0 <= a_i < u.action_counts[i]:
        raise ShapeMismatch(f"action {a_i} out of range for player {i + 1}")
    others = others_distribution(x, i, u.action_counts)
    value = evaluate_payoff(u, x, i)
    deviation = payoff_against(u, i, a_i, others)
    if not deviation > value:
        raise PreconditionNotMet(
            f"deviating to {a_i} does not improve player {i + 1}'s payoff ({deviation} vs {value})"
        )
    v = _zero_out_action(u, i, a_i)
    v_value = evaluate_payoff(v, x, i)
    level = pir(v, i)
    checks = _zeroed_row_checks(v, i, a_i, "a_i")
    checks += [
        Inequality("pir_i(v) >= 0", level, ">=", Fraction(0)),
        Inequality("v_i(x) == u_i(x) - u_i(a_i, x_-i)", v_value, "==", value - deviation),
        Inequality("v_i(x) < 0", v_value, "<", Fraction(0)),
        Inequality("v_i(x) <= pir_i(v)", v_value, "<=", level),
    ]
    return _finish("pir", u, v, checks, {"x": x, "i": i, "a_i": a_i})


def pirar_violation_witness(
    u: Game, x: CorrelatedDistribution, i: int, a_i: int, a_i_prime: int
) -> WitnessCertificate:
    """Equivalent game where following recommendation a_i pays below pir_i.

    Requires ``u_i(a_i', x|a_i) > u_i(a_i, x|a_i)``; player i's payoffs for
    ``a_i'`` are zeroed.
    """
    x.check_shape(u.action_counts)
    n_i = u.action_counts[i]
    if not (0 <= a_i < n_i and 0 <= a_i_prime < n_i):
        raise ShapeMismatch(f"action out of range for player {i + 1}")
    if marginal_self(x, i)[a_i] == 0:
        raise ZeroProbabilityCondition(f"recommendation {a_i} to player {i + 1} has probability 0")
    cond = condition(x, i, a_i)
    follow = payoff_against(u, i, a_i, cond)
    deviate = payoff_against(u, i, a_i_prime, cond)
    if not deviate > follow:
        raise PreconditionNotMet(
            f"switching {a_i} -> {a_i_prime} does not improve player {i + 1}'s conditional payoff ({deviate} vs {follow})"
        )
    v = _zero_out_action(u, i, a_i_prime)
    v_follow = payoff_against(v, i, a_i, cond)
    level = pir(v, i)
    checks = _zeroed_row_checks(v, i, a_i_prime, "a_i'")
    checks += [
        Inequality("pir_i(v) >= 0", level, ">=", Fraction(0)),
        Inequality("v_i(a_i, x|a_i) == u_i(a_i, x|a_i) - u_i(a_i', x|a_i)", v_follow, "==", follow - deviate),
        Inequality("v_i(a_i, x|a_i) < 0", v_follow, "<", Fraction(0)),
        Inequality("v_i(a_i, x|a_i) <= pir_i(v)", v_follow, "<=", level),
    ]
    return _finish("pirar", u, v, checks, {"x": x, "i": i, "a_i": a_i, "a_i_prime": a_i_prime})


def payoff_bound(u: Game) -> Fraction:
    """A strict bound ``L > |u_i(a)|`` for every payoff."""
    return u.max_abs_payoff() + 1


def _lift(u: Game, a: PureProfile, amount: Fraction) -> Game:
    lay = u.layout
    v = u
    for i in range(u.num_players):
        offs = [Fraction(0)] * len(lay.others_base[i])
        offs[lay.others_index(i, a.actions)] = amount
        v = apply_offsets(v, i, offs)
    return v


def sm_elevation(u: Game, a) -> WitnessCertificate:
    """Equivalent game in which the pure equilibrium ``a`` maximizes every payoff.

    Adds ``2L`` to each player i's payoffs wherever the opponents play
    ``a_{-i}``, with ``L = max |u| + 1``.
    """
    a = a if isinstance(a, PureProfile) else PureProfile(tuple(a))
    a.check_shape(u.action_counts)
    if not is_pne(u, a):
        raise NotAPureNashEquilibrium(f"{a.actions} is not a pure Nash equilibrium")
    L = payoff_bound(u)
    v = _lift(u, a, 2 * L)
    lay = u.layout
    ia = lay.index(a.actions)
    checks = []
    for i in range(u.num_players):
        ka = lay.others_index(i, a.actions)
        va = v.payoffs[i][ia]
        for idx, b in enumerate(u.profiles()):
            vb = v.payoffs[i][idx]
            if lay.others_index(i, b) == ka:
                checks.append(Inequality(f"v_{i + 1}(a) >= v_{i + 1}{b} [same opponents]", va, ">=", vb))
            else:
                checks.append(Inequality(f"v_{i + 1}(a) >= L [vs {b}]", va, ">=", L))
                checks.append(Inequality(f"L >= v_{i + 1}{b}", L, ">=", vb))
    report = find_maximizers(v)
    if a not in report.weak_maximizers:
        raise InvariantFailure("elevated profile is not a simultaneous maximizer")
    return _finish("sm", u, v, checks, {"a": a})


def _usm_certificate(u: Game, a: PureProfile, other: PureProfile) -> WitnessCertificate:
    if a == other:
        raise ProfilesEqual(f"both profiles are {a.actions}")
    for p in (a, other):
        p.check_shape(u.action_counts)
        if not is_strict_pne(u, p):
            raise NotStrictPNE(f"{p.actions} is not a strict pure Nash equilibrium")
    L = payoff_bound(u)
    v = _lift(u, a, 3 * L)
    lay = u.layout
    ia = lay.index(a.actions)
    checks = []
    for i in range(u.num_players):
        va = v.payoffs[i][ia]
        for idx, b in enumerate(u.profiles()):
            if idx != ia:
                checks.append(Inequality(f"v_{i + 1}(a) > v_{i + 1}{b}", va, ">", v.payoffs[i][idx]))
    if find_maximizers(v).strict_maximizer != a:
        raise InvariantFailure("lifted profile is not the unique strict maximizer")
    return _finish("usm", u, v, checks, {"a": a, "other": other})


def usm_contradiction(u: Game, a, a_prime) -> tuple[WitnessCertificate, WitnessCertificate]:
    """Two equivalent games with different unique strict simultaneous maximizers.

    Both ``a`` and ``a_prime`` must be strict pure equilibria. Any solution
    invariant under equivalence would have to equal both ``{a}`` and
    ``{a_prime}`` on ``u``.
    """
    a = a if isinstance(a, PureProfile) else PureProfile(tuple(a))
    a_prime = a_prime if isinstance(a_prime, PureProfile) else PureProfile(tuple(a_prime))
    return _usm_certificate(u, a, a_prime), _usm_certificate(u, a_prime, a)


_BUILDERS: dict[str, Any] = {
    "pir": pir_violation_witness,
    "pirar": pirar_violation_witness,
    "sm": sm_elevation,
    "usm": _usm_certificate,
}

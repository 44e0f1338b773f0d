"""Finite normal-form games and behaviors over exact rationals.

Payoff tensors are stored flat in lexicographic profile order with the last
player's action varying fastest. Distributions over the opponents' joint
actions ``A_{-i}`` are flat tuples in the same lexicographic order over the
remaining players (see :func:`others_profiles`).
"""

from __future__ import annotations

import itertools
import numbers
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Callable, Iterator, Sequence, Union

from gameaxioms import kernels
from gameaxioms.errors import ShapeMismatch, ZeroProbabilityCondition

Shape = tuple[int, ...]
Profile = tuple[int, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_rational(value) -> Fraction:
    """Coerce ints, Fractions, rationals and ``"p/q"`` strings to Fraction.

    Floats are rejected: their binary expansion is almost never what the
    caller meant.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not payoffs")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floating-point values are not accepted; use a Fraction, int or 'p/q' string")
    if isinstance(value, numbers.Rational):
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot interpret {value!r} as a rational number")


@dataclass(frozen=True)
class Layout:
    """Index bookkeeping shared by every game of one shape."""

    shape: Shape
    strides: tuple[int, ...]
    size: int
    # others_base[i][k]: flat index of the k-th opponent profile with a_i = 0
    others_base: tuple[tuple[int, ...], ...]
    others_profiles: tuple[tuple[Profile, ...], ...]

    def index(self, profile: Sequence[int]) -> int:
        if len(profile) != len(self.shape):
            raise ShapeMismatch(f"profile {tuple(profile)} has {len(profile)} entries, game has {len(self.shape)} players")
        flat = 0
        for a, k, stride in zip(profile, self.shape, self.strides):
            if not 0 <= a < k:
                raise ShapeMismatch(f"action {a} out of range for a player with {k} actions")
            flat += a * stride
        return flat

    def others_index(self, i: int, profile: Sequence[int]) -> int:
        """Position of ``profile``'s opponent part within ``others_profiles[i]``."""
        k = 0
        for j, (a, n) in enumerate(zip(profile, self.shape)):
            if j != i:
                k = k * n + a
        return k

    def join(self, i: int, a_i: int, rest: Sequence[int]) -> Profile:
        rest = tuple(rest)
        return rest[:i] + (a_i,) + rest[i:]


@lru_cache(maxsize=512)
def layout(shape: Shape) -> Layout:
    shape = tuple(shape)
    if not shape or any(k < 1 for k in shape):
        raise ShapeMismatch(f"invalid action counts {shape}")
    strides = []
    acc = 1
    for k in reversed(shape):
        strides.append(acc)
        acc *= k
    strides = tuple(reversed(strides))
    bases = []
    profs = []
    for i in range(len(shape)):
        others = [range(k) for j, k in enumerate(shape) if j != i]
        ostrides = [s for j, s in enumerate(strides) if j != i]
        rest = tuple(itertools.product(*others))
        profs.append(rest)
        bases.append(tuple(sum(a * s for a, s in zip(b, ostrides)) for b in rest))
    return Layout(shape, strides, acc, tuple(bases), tuple(profs))


def others_profiles(shape: Shape, i: int) -> tuple[Profile, ...]:
    """Opponent profiles ``A_{-i}`` in the order used by distributions over them."""
    return layout(tuple(shape)).others_profiles[i]


def _flatten(nested, shape: Shape, where: str) -> list:
    if not shape:
        return [nested]
    if len(nested) != shape[0]:
        raise ShapeMismatch(f"{where}: expected {shape[0]} entries, got {len(nested)}")
    out = []
    for item in nested:
        out.extend(_flatten(item, shape[1:], where))
    return out


@dataclass(frozen=True)
class Game:
    """An n-player finite game; ``payoffs[i][flat]`` is player i's payoff."""

    action_counts: Shape
    payoffs: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        shape = tuple(int(k) for k in self.action_counts)
        lay = layout(shape)
        if len(self.payoffs) != len(shape):
            raise ShapeMismatch(f"{len(self.payoffs)} payoff tensors for {len(shape)} players")
        tensors = []
        for i, tensor in enumerate(self.payoffs):
            if len(tensor) != lay.size:
                raise ShapeMismatch(f"player {i + 1}: expected {lay.size} payoffs, got {len(tensor)}")
            tensors.append(tuple(to_rational(v) for v in tensor))
        object.__setattr__(self, "action_counts", shape)
        object.__setattr__(self, "payoffs", tuple(tensors))

    @classmethod
    def from_arrays(cls, arrays) -> Game:
        """Build from one nested list (indexed ``[a_1][a_2]...``) per player."""
        arrays = list(arrays)
        shape = []
        probe = arrays[0]
        for _ in range(len(arrays)):
            shape.append(len(probe))
            probe = probe[0]
        shape = tuple(shape)
        return cls(shape, tuple(tuple(_flatten(arr, shape, f"player {i + 1}")) for i, arr in enumerate(arrays)))

    @classmethod
    def bimatrix(cls, row_payoffs, col_payoffs) -> Game:
        return cls.from_arrays([row_payoffs, col_payoffs])

    @classmethod
    def zero(cls, shape: Sequence[int]) -> Game:
        lay = layout(tuple(shape))
        return cls(lay.shape, tuple((ZERO,) * lay.size for _ in lay.shape))

    @classmethod
    def from_function(cls, shape: Sequence[int], payoff: Callable[[int, Profile], object]) -> Game:
        lay = layout(tuple(shape))
        profiles = list(itertools.product(*(range(k) for k in lay.shape)))
        return cls(lay.shape, tuple(tuple(payoff(i, a) for a in profiles) for i in range(len(lay.shape))))

    @property
    def num_players(self) -> int:
        return len(self.action_counts)

    @property
    def layout(self) -> Layout:
        return layout(self.action_counts)

    @property
    def num_profiles(self) -> int:
        return self.layout.size

    def profiles(self) -> Iterator[Profile]:
        return itertools.product(*(range(k) for k in self.action_counts))

    def payoff(self, i: int, profile: Sequence[int]) -> Fraction:
        return self.payoffs[i][self.layout.index(profile)]

    def player_matrix(self, i: int) -> tuple[tuple[Fraction, ...], ...]:
        """Player i's payoffs as a ``|A_i| x |A_{-i}|`` matrix."""
        lay = self.layout
        stride = lay.strides[i]
        u = self.payoffs[i]
        return tuple(
            tuple(u[base + a * stride] for base in lay.others_base[i]) for a in range(self.action_counts[i])
        )

    def max_abs_payoff(self) -> Fraction:
        return max(abs(v) for tensor in self.payoffs for v in tensor)

    @cached_property
    def _int_flat(self) -> tuple[tuple[list[int], int], ...]:
        return tuple(kernels.common_denominator(t) for t in self.payoffs)

    @cached_property
    def _int_views(self) -> tuple[tuple[list[list[int]], int], ...]:
        lay = self.layout
        views = []
        for i, (nums, den) in enumerate(self._int_flat):
            stride = lay.strides[i]
            rows = [[nums[base + a * stride] for base in lay.others_base[i]] for a in range(self.action_counts[i])]
            views.append((rows, den))
        return tuple(views)

    def __add__(self, other: Game) -> Game:
        return add_games(self, other)

    def __neg__(self) -> Game:
        return Game(self.action_counts, tuple(tuple(-v for v in t) for t in self.payoffs))

    def __sub__(self, other: Game) -> Game:
        return add_games(self, -other)


@dataclass(frozen=True)
class PureProfile:
    actions: Profile

    def __post_init__(self):
        object.__setattr__(self, "actions", tuple(int(a) for a in self.actions))

    def check_shape(self, shape: Shape) -> None:
        layout(tuple(shape)).index(self.actions)

    def __iter__(self):
        return iter(self.actions)

    def __len__(self):
        return len(self.actions)

    def __getitem__(self, k):
        return self.actions[k]


def _check_distribution(values: tuple[Fraction, ...], what: str) -> None:
    if any(v < 0 for v in values):
        raise ValueError(f"{what}: negative probability")
    if sum(values) != 1:
        raise ValueError(f"{what}: probabilities sum to {sum(values)}, not 1")


@dataclass(frozen=True)
class MixedProfile:
    per_player: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        vecs = tuple(tuple(to_rational(v) for v in vec) for vec in self.per_player)
        for i, vec in enumerate(vecs):
            if not vec:
                raise ValueError(f"player {i + 1}: empty mixed strategy")
            _check_distribution(vec, f"player {i + 1}")
        object.__setattr__(self, "per_player", vecs)

    @classmethod
    def pure(cls, shape: Sequence[int], actions: Sequence[int]) -> MixedProfile:
        layout(tuple(shape)).index(actions)
        return cls(tuple(tuple(ONE if b == a else ZERO for b in range(k)) for a, k in zip(actions, shape)))

    @property
    def action_counts(self) -> Shape:
        return tuple(len(v) for v in self.per_player)

    def check_shape(self, shape: Shape) -> None:
        if self.action_counts != tuple(shape):
            raise ShapeMismatch(f"mixed profile has shape {self.action_counts}, game has {tuple(shape)}")

    def to_correlated(self) -> CorrelatedDistribution:
        return joint_distribution(self, self.action_counts)

    @cached_property
    def _scaled(self) -> tuple[tuple[list[int], int], ...]:
        return tuple(kernels.common_denominator(v) for v in self.per_player)


@dataclass(frozen=True)
class CorrelatedDistribution:
    action_counts: Shape
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        shape = tuple(int(k) for k in self.action_counts)
        lay = layout(shape)
        w = tuple(to_rational(v) for v in self.weights)
        if len(w) != lay.size:
            raise ShapeMismatch(f"expected {lay.size} weights, got {len(w)}")
        _check_distribution(w, "correlated distribution")
        object.__setattr__(self, "action_counts", shape)
        object.__setattr__(self, "weights", w)

    @classmethod
    def from_dict(cls, shape: Sequence[int], masses: dict) -> CorrelatedDistribution:
        lay = layout(tuple(shape))
        w = [ZERO] * lay.size
        for profile, mass in masses.items():
            w[lay.index(profile)] += to_rational(mass)
        return cls(lay.shape, tuple(w))

    @classmethod
    def point_mass(cls, shape: Sequence[int], profile: Sequence[int]) -> CorrelatedDistribution:
        return cls.from_dict(shape, {tuple(profile): 1})

    @classmethod
    def uniform(cls, shape: Sequence[int]) -> CorrelatedDistribution:
        lay = layout(tuple(shape))
        return cls(lay.shape, (Fraction(1, lay.size),) * lay.size)

    def prob(self, profile: Sequence[int]) -> Fraction:
        return self.weights[layout(self.action_counts).index(profile)]

    def support(self) -> list[Profile]:
        shape = self.action_counts
        return [a for a, w in zip(itertools.product(*(range(k) for k in shape)), self.weights) if w]

    def check_shape(self, shape: Shape) -> None:
        if self.action_counts != tuple(shape):
            raise ShapeMismatch(f"distribution has shape {self.action_counts}, game has {tuple(shape)}")

    @cached_property
    def _scaled(self) -> tuple[list[int], int]:
        return kernels.common_denominator(self.weights)


Behavior = Union[PureProfile, MixedProfile, CorrelatedDistribution]


def behavior_kind(behavior: Behavior) -> str:
    if isinstance(behavior, PureProfile):
        return "pure"
    if isinstance(behavior, MixedProfile):
        return "mixed"
    if isinstance(behavior, CorrelatedDistribution):
        return "correlated"
    raise TypeError(f"not a behavior: {behavior!r}")


def joint_distribution(behavior: Behavior, shape: Sequence[int]) -> CorrelatedDistribution:
    """The distribution over A induced by any behavior."""
    shape = tuple(shape)
    behavior.check_shape(shape)
    if isinstance(behavior, CorrelatedDistribution):
        return behavior
    if isinstance(behavior, PureProfile):
        return CorrelatedDistribution.point_mass(shape, behavior.actions)
    scaled = behavior._scaled
    den = 1
    for _, d in scaled:
        den *= d
    nums = kernels.outer_flat([nums for nums, _ in scaled])
    return CorrelatedDistribution(shape, tuple(Fraction(n, den) for n in nums))


def _player_slices(x: CorrelatedDistribution, i: int) -> list[list[int]]:
    """Scaled weights of x arranged as ``[a_i][k]`` over opponent profiles."""
    lay = layout(x.action_counts)
    nums, _ = x._scaled
    stride = lay.strides[i]
    return [[nums[base + a * stride] for base in lay.others_base[i]] for a in range(lay.shape[i])]


def deviation_table(game: Game, behavior: Behavior, i: int) -> tuple[int, list[int], int]:
    """Exact ``u_i(x)`` and ``u_i(b_i, x_{-i})`` for all b_i over one denominator.

    Returns ``(value, deviations, den)`` so that ``u_i(x) = value / den`` and
    ``u_i(b_i, x_{-i}) = deviations[b_i] / den``.
    """
    behavior.check_shape(game.action_counts)
    rows, du = game._int_views[i]
    lay = game.layout
    if isinstance(behavior, PureProfile):
        k = lay.others_index(i, behavior.actions)
        devs = [row[k] for row in rows]
        return devs[behavior.actions[i]], devs, du
    if isinstance(behavior, MixedProfile):
        scaled = behavior._scaled
        dy = 1
        for j, (_, d) in enumerate(scaled):
            if j != i:
                dy *= d
        ys = kernels.outer_flat([nums for j, (nums, _) in enumerate(scaled) if j != i])
        devs = kernels.matvec(rows, ys)
        xi, di = scaled[i]
        value = kernels.dot(xi, devs)
        return value, [d * di for d in devs], du * dy * di
    slices = _player_slices(behavior, i)
    _, dx = behavior._scaled
    marg = [sum(col) for col in zip(*slices)]
    devs = kernels.matvec(rows, marg)
    value = 0
    for row, s in zip(rows, slices):
        value += kernels.dot(row, s)
    return value, devs, du * dx


def evaluate_payoff(game: Game, behavior: Behavior, player: int) -> Fraction:
    """Multilinear payoff ``u_i(x)`` of any behavior, exactly."""
    behavior.check_shape(game.action_counts)
    if isinstance(behavior, PureProfile):
        return game.payoff(player, behavior.actions)
    nums, du = game._int_flat[player]
    if isinstance(behavior, MixedProfile):
        scaled = behavior._scaled
        den = du
        for _, d in scaled:
            den *= d
        return Fraction(kernels.dot(nums, kernels.outer_flat([n for n, _ in scaled])), den)
    xs, dx = behavior._scaled
    return Fraction(kernels.dot(nums, xs), du * dx)


def marginal_self(x: CorrelatedDistribution, i: int) -> tuple[Fraction, ...]:
    """Marginal distribution of player i's action under x."""
    _, dx = x._scaled
    return tuple(Fraction(sum(s), dx) for s in _player_slices(x, i))


def marginal_others(x: CorrelatedDistribution, i: int) -> tuple[Fraction, ...]:
    """Marginal distribution of the opponents' joint action under x."""
    _, dx = x._scaled
    return tuple(Fraction(sum(col), dx) for col in zip(*_player_slices(x, i)))


def condition(x: CorrelatedDistribution, i: int, b_i: int) -> tuple[Fraction, ...]:
    """Distribution of the opponents' joint action given player i plays b_i."""
    if not 0 <= b_i < x.action_counts[i]:
        raise ShapeMismatch(f"action {b_i} out of range for player {i + 1}")
    s = _player_slices(x, i)[b_i]
    mass = sum(s)
    if mass == 0:
        raise ZeroProbabilityCondition(f"player {i + 1} plays action {b_i} with probability 0")
    return tuple(Fraction(v, mass) for v in s)


def others_distribution(behavior: Behavior, i: int, shape: Sequence[int]) -> tuple[Fraction, ...]:
    """``x_{-i}`` for any behavior kind."""
    shape = tuple(shape)
    behavior.check_shape(shape)
    if isinstance(behavior, CorrelatedDistribution):
        return marginal_others(behavior, i)
    if isinstance(behavior, PureProfile):
        lay = layout(shape)
        k = lay.others_index(i, behavior.actions)
        return tuple(ONE if j == k else ZERO for j in range(len(lay.others_base[i])))
    scaled = [s for j, s in enumerate(behavior._scaled) if j != i]
    den = 1
    for _, d in scaled:
        den *= d
    return tuple(Fraction(n, den) for n in kernels.outer_flat([n for n, _ in scaled]))


def deviation_payoffs(game: Game, i: int, others: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """``u_i(b_i, y)`` for every b_i, where y is a distribution over A_{-i}."""
    rows, du = game._int_views[i]
    if len(others) != len(rows[0]):
        raise ShapeMismatch(f"opponent distribution has {len(others)} entries, expected {len(rows[0])}")
    ys, dy = kernels.common_denominator([to_rational(v) for v in others])
    return tuple(Fraction(v, du * dy) for v in kernels.matvec(rows, ys))


def payoff_against(game: Game, i: int, a_i: int, others: Sequence[Fraction]) -> Fraction:
    """``u_i(a_i, y)`` for a distribution y over A_{-i}."""
    return deviation_payoffs(game, i, others)[a_i]


def add_games(u: Game, v: Game) -> Game:
    if u.action_counts != v.action_counts:
        raise ShapeMismatch(f"cannot add games of shapes {u.action_counts} and {v.action_counts}")
    return Game(u.action_counts, tuple(tuple(a + b for a, b in zip(s, t)) for s, t in zip(u.payoffs, v.payoffs)))

"""Exact rational linear programming.

Two-phase primal simplex on an all-integer tableau. Pivots use the
fraction-free update of Edmonds/Bareiss, so every tableau entry stays an
integer equal to the basis determinant times the true entry, and no gcd work
is done inside the loop. Entering columns follow Dantzig's rule; during a
run of degenerate pivots Bland's smallest-index rule takes over, which rules
out cycling. ``pivot_rule="bland"`` uses the smallest-index rule throughout.
"""

from __future__ import annotations

import contextlib
import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import NamedTuple, Optional, Sequence

from gameaxioms import kernels
from gameaxioms.errors import InvariantFailure, MalformedProgram
from gameaxioms.game import to_rational


class Relation(str, enum.Enum):
    LE = "<="
    EQ = "=="
    GE = ">="


class LPStatus(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Constraint:
    coefficients: tuple[Fraction, ...]
    relation: Relation
    rhs: Fraction

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        lhs = sum((c * v for c, v in zip(self.coefficients, x) if c), Fraction(0))
        if self.relation is Relation.LE:
            return lhs <= self.rhs
        if self.relation is Relation.GE:
            return lhs >= self.rhs
        return lhs == self.rhs

    def is_tight(self, x: Sequence[Fraction]) -> bool:
        return sum((c * v for c, v in zip(self.coefficients, x) if c), Fraction(0)) == self.rhs


@dataclass
class LinearProgram:
    """``sense`` of ``objective . x`` subject to constraints and bounds.

    Variables default to ``x >= 0``; a ``None`` lower bound makes a variable
    free below, a ``None`` upper bound (the default) free above.
    """

    num_variables: int
    objective: tuple[Fraction, ...] = ()
    sense: str = "max"
    constraints: list[Constraint] = field(default_factory=list)
    lower: list[Optional[Fraction]] = field(default_factory=list)
    upper: list[Optional[Fraction]] = field(default_factory=list)

    def __post_init__(self):
        m = self.num_variables
        if m < 1:
            raise MalformedProgram("a program needs at least one variable")
        if not self.objective:
            self.objective = (Fraction(0),) * m
        self.objective = tuple(to_rational(c) for c in self.objective)
        if len(self.objective) != m:
            raise MalformedProgram(f"objective has {len(self.objective)} coefficients for {m} variables")
        if self.sense not in ("max", "min"):
            raise MalformedProgram(f"sense must be 'max' or 'min', not {self.sense!r}")
        if not self.lower:
            self.lower = [Fraction(0)] * m
        if not self.upper:
            self.upper = [None] * m
        if len(self.lower) != m or len(self.upper) != m:
            raise MalformedProgram("bounds must be given for every variable")
        self.lower = [None if b is None else to_rational(b) for b in self.lower]
        self.upper = [None if b is None else to_rational(b) for b in self.upper]

    def add_constraint(self, coefficients, relation, rhs) -> None:
        coefficients = tuple(to_rational(c) for c in coefficients)
        if len(coefficients) != self.num_variables:
            raise MalformedProgram(
                f"constraint has {len(coefficients)} coefficients for {self.num_variables} variables"
            )
        try:
            relation = Relation(relation)
        except ValueError:
            raise MalformedProgram(f"unknown relation {relation!r}") from None
        self.constraints.append(Constraint(coefficients, relation, to_rational(rhs)))

    def feasible(self, x: Sequence[Fraction]) -> bool:
        for v, lo, hi in zip(x, self.lower, self.upper):
            if lo is not None and v < lo:
                return False
            if hi is not None and v > hi:
                return False
        return all(c.satisfied_by(x) for c in self.constraints)

    def value_at(self, x: Sequence[Fraction]) -> Fraction:
        return sum((c * v for c, v in zip(self.objective, x) if c), Fraction(0))


@dataclass(frozen=True)
class LPOutcome:
    status: LPStatus
    solution: Optional[tuple[Fraction, ...]] = None
    value: Optional[Fraction] = None

    @property
    def optimal(self) -> bool:
        return self.status is LPStatus.OPTIMAL


_recorders: list[list] = []


@contextlib.contextmanager
def record_programs():
    """Collect ``(program, outcome)`` for every :func:`solve` call in the block."""
    log: list = []
    _recorders.append(log)
    try:
        yield log
    finally:
        _recorders.remove(log)


def _lcm_scale(values: Sequence[Fraction]) -> list[int]:
    den = 1
    for v in values:
        d = v.denominator
        if den % d:
            den = den // gcd(den, d) * d
    return [v.numerator * (den // v.denominator) for v in values]


class _Tableau:
    def __init__(self, rows, basis, obj_rows, n_cols, stall_limit):
        self.rows = rows  # constraint rows followed by objective rows
        self.basis = basis
        self.m = len(basis)
        self.obj_rows = obj_rows
        self.n_cols = n_cols
        self.det = 1
        self.pivots = 0
        self.stall_limit = stall_limit

    def pivot(self, r: int, s: int) -> None:
        kernels.pivot(self.rows, r, s, self.det)
        self.det = self.rows[r][s]
        self.basis[r] = s
        self.pivots += 1
        if self.det < 0:
            self.rows = [[-v for v in row] for row in self.rows]
            self.det = -self.det

    def run(self, obj: int, allowed: Sequence[bool]) -> LPStatus:
        """Pivot until optimal or unbounded.

        Entering column: most negative reduced cost, except during a run of
        degenerate pivots, where Bland's smallest-index rule takes over until
        the objective strictly improves. Bland's rule cannot cycle, so this
        terminates.
        """
        bland = self.stall_limit == 0
        stalled = 0
        while True:
            rows = self.rows
            orow = rows[obj]
            s = -1
            if bland:
                for j in range(self.n_cols):
                    if allowed[j] and orow[j] < 0:
                        s = j
                        break
            else:
                best = 0
                for j in range(self.n_cols):
                    if allowed[j] and orow[j] < best:
                        s, best = j, orow[j]
            if s < 0:
                return LPStatus.OPTIMAL
            r = -1
            best_num = best_den = 0
            for i in range(self.m):
                a = rows[i][s]
                if a > 0:
                    b = rows[i][-1]
                    if r < 0:
                        r, best_num, best_den = i, b, a
                        continue
                    lhs, rhs = b * best_den, best_num * a
                    if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[r]):
                        r, best_num, best_den = i, b, a
            if r < 0:
                return LPStatus.UNBOUNDED
            if best_num == 0:
                stalled += 1
                if stalled >= self.stall_limit:
                    bland = True
            else:
                stalled = 0
                bland = self.stall_limit == 0
            self.pivot(r, s)


_STALL_LIMITS = {"dantzig": 50, "bland": 0}


def solve(lp: LinearProgram, pivot_rule: str = "dantzig") -> LPOutcome:
    """Solve ``lp`` exactly; optimal solutions are basic (vertex) solutions."""
    if pivot_rule not in _STALL_LIMITS:
        raise MalformedProgram(f"unknown pivot rule {pivot_rule!r}")
    outcome = _solve(lp, _STALL_LIMITS[pivot_rule])
    if outcome.optimal:
        x = outcome.solution
        if not lp.feasible(x) or lp.value_at(x) != outcome.value:
            raise InvariantFailure("simplex returned a solution that does not re-verify")
    for log in _recorders:
        log.append((lp, outcome))
    return outcome


def _solve(lp: LinearProgram, stall_limit: int) -> LPOutcome:
    m = lp.num_variables
    # Each original variable is offset + sum(sign * column).
    columns: list[list[tuple[int, int]]] = []
    offsets: list[Fraction] = []
    bound_rows: list[tuple[dict, Relation, Fraction]] = []
    ncol = 0
    for j in range(m):
        lo, hi = lp.lower[j], lp.upper[j]
        if lo is not None:
            columns.append([(ncol, 1)])
            offsets.append(lo)
            if hi is not None:
                if hi < lo:
                    return LPOutcome(LPStatus.INFEASIBLE)
                bound_rows.append(({ncol: Fraction(1)}, Relation.LE, hi - lo))
            ncol += 1
        elif hi is not None:
            columns.append([(ncol, -1)])
            offsets.append(hi)
            ncol += 1
        else:
            columns.append([(ncol, 1), (ncol + 1, -1)])
            offsets.append(Fraction(0))
            ncol += 2
    n_struct = ncol

    raw: list[tuple[dict, Relation, Fraction]] = []
    for con in lp.constraints:
        coeffs: dict[int, Fraction] = {}
        rhs = con.rhs
        for j, c in enumerate(con.coefficients):
            if not c:
                continue
            rhs -= c * offsets[j]
            for col, sign in columns[j]:
                coeffs[col] = coeffs.get(col, 0) + sign * c
        raw.append((coeffs, con.relation, rhs))
    raw.extend(bound_rows)

    # Integer rows with nonnegative right-hand sides.
    int_rows = []
    for coeffs, rel, rhs in raw:
        cols = sorted(coeffs)
        scaled = _lcm_scale([coeffs[c] for c in cols] + [rhs])
        if scaled[-1] < 0:
            scaled = [-v for v in scaled]
            rel = {Relation.LE: Relation.GE, Relation.GE: Relation.LE}.get(rel, rel)
        g = 0
        for v in scaled:
            g = gcd(g, v)
        if g > 1:
            scaled = [v // g for v in scaled]
        int_rows.append((dict(zip(cols, scaled[:-1])), rel, scaled[-1]))

    n_slack = sum(1 for _, rel, _ in int_rows if rel is not Relation.EQ)
    n_art = sum(1 for _, rel, _ in int_rows if rel is not Relation.LE)
    width = n_struct + n_slack + n_art
    art_start = n_struct + n_slack
    rows = []
    basis = []
    slack = n_struct
    art = art_start
    for coeffs, rel, rhs in int_rows:
        row = [0] * (width + 1)
        for c, v in coeffs.items():
            row[c] = v
        row[-1] = rhs
        if rel is Relation.LE:
            row[slack] = 1
            basis.append(slack)
            slack += 1
        else:
            if rel is Relation.GE:
                row[slack] = -1
                slack += 1
            row[art] = 1
            basis.append(art)
            art += 1
        rows.append(row)

    sign = 1 if lp.sense == "max" else -1
    cost = [Fraction(0)] * n_struct
    for j, c in enumerate(lp.objective):
        for col, s in columns[j]:
            cost[col] += sign * s * c
    phase2 = [-v for v in _lcm_scale(cost)] + [0] * (width - n_struct + 1)
    phase1 = [0] * (width + 1)
    for k in range(art_start, width):
        phase1[k] = 1
    for row, b in zip(rows, basis):
        if b >= art_start:
            phase1 = [p - v for p, v in zip(phase1, row)]

    n_con = len(rows)
    tab = _Tableau(rows + [phase2, phase1], basis, (n_con, n_con + 1), width, stall_limit)
    if n_art:
        tab.run(n_con + 1, [True] * width)
        if tab.rows[n_con + 1][-1] != 0:
            return LPOutcome(LPStatus.INFEASIBLE)
        for r in range(n_con):
            if tab.basis[r] >= art_start:
                row = tab.rows[r]
                for j in range(art_start):
                    if row[j]:
                        tab.pivot(r, j)
                        break
    allowed = [j < art_start for j in range(width)]
    status = tab.run(n_con, allowed)
    if status is LPStatus.UNBOUNDED:
        return LPOutcome(LPStatus.UNBOUNDED)

    col_values = [Fraction(0)] * width
    for r, b in enumerate(tab.basis):
        col_values[b] = Fraction(tab.rows[r][-1], tab.det)
    x = tuple(offsets[j] + sum((s * col_values[col] for col, s in columns[j]), Fraction(0)) for j in range(m))
    return LPOutcome(LPStatus.OPTIMAL, x, lp.value_at(x))


def is_vertex(lp: LinearProgram, x: Sequence[Fraction]) -> bool:
    """True iff the constraints and bounds tight at x have rank ``num_variables``."""
    m = lp.num_variables
    tight = []
    for c in lp.constraints:
        if c.is_tight(x):
            tight.append(list(c.coefficients))
    for j in range(m):
        unit = [Fraction(0)] * m
        unit[j] = Fraction(1)
        if lp.lower[j] is not None and x[j] == lp.lower[j]:
            tight.append(unit)
        elif lp.upper[j] is not None and x[j] == lp.upper[j]:
            tight.append(unit)
    return matrix_rank(tight, m) >= m


def matrix_rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    work = [list(map(Fraction, r)) for r in rows]
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(work)) if work[r][col] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        p = work[rank][col]
        for r in range(len(work)):
            if r != rank and work[r][col] != 0:
                f = work[r][col] / p
                work[r] = [a - f * b for a, b in zip(work[r], work[rank])]
        rank += 1
    return rank


class LinearSolution(NamedTuple):
    solution: Optional[tuple[Fraction, ...]]
    unique: bool


def solve_linear_system(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> LinearSolution:
    """Exact Gauss-Jordan solve of ``a x = b``.

    Returns ``(None, True)`` when inconsistent, ``(x, True)`` for a unique
    solution and ``(x, False)`` with one particular solution when the
    solution set is a continuum.
    """
    n = len(a[0]) if a else 0
    work = [[to_rational(v) for v in row] + [to_rational(rhs)] for row, rhs in zip(a, b)]
    pivots = []
    rank = 0
    for col in range(n):
        piv = next((r for r in range(rank, len(work)) if work[r][col] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        p = work[rank][col]
        work[rank] = [v / p for v in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col] != 0:
                f = work[r][col]
                work[r] = [u - f * v for u, v in zip(work[r], work[rank])]
        pivots.append(col)
        rank += 1
    if any(row[-1] != 0 for row in work[rank:]):
        return LinearSolution(None, True)
    x = [Fraction(0)] * n
    for r, col in enumerate(pivots):
        x[col] = work[r][-1]
    return LinearSolution(tuple(x), rank == n)


class ZeroSumValue(NamedTuple):
    value: Fraction
    strategy: tuple[Fraction, ...]


def _matrix(matrix) -> list[list[Fraction]]:
    rows = [[to_rational(v) for v in row] for row in matrix]
    if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
        raise MalformedProgram("payoff matrix must be a nonempty rectangle")
    return rows


def zero_sum_value(matrix) -> ZeroSumValue:
    """Maximin value and an optimal row strategy of a matrix game.

    The row player maximizes ``x^T M y``; the column player minimizes it.
    """
    rows = _matrix(matrix)
    r, c = len(rows), len(rows[0])
    lp = LinearProgram(r + 1, objective=(0,) * r + (1,), sense="max",
                       lower=[Fraction(0)] * r + [None])
    for j in range(c):
        lp.add_constraint([rows[i][j] for i in range(r)] + [-1], ">=", 0)
    lp.add_constraint([1] * r + [0], "==", 1)
    out = solve(lp)
    if not out.optimal:
        raise InvariantFailure(f"maximin program is {out.status.value}")
    return ZeroSumValue(out.value, out.solution[:r])


def column_player_value(matrix) -> ZeroSumValue:
    """Minimax value and an optimal column strategy (the dual program)."""
    rows = _matrix(matrix)
    r, c = len(rows), len(rows[0])
    lp = LinearProgram(c + 1, objective=(0,) * c + (1,), sense="min",
                       lower=[Fraction(0)] * c + [None])
    for i in range(r):
        lp.add_constraint(list(rows[i]) + [-1], "<=", 0)
    lp.add_constraint([1] * c + [0], "==", 1)
    out = solve(lp)
    if not out.optimal:
        raise InvariantFailure(f"minimax program is {out.status.value}")
    return ZeroSumValue(out.value, out.solution[:c])

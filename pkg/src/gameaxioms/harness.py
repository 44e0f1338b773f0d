"""Solution maps, axiom audits, and proposition verification on game families.

Axioms quantify over infinitely many games, so an audit can only refute.
Audits examine each family game together with games derived from it by the
witness constructions in :mod:`gameaxioms.transforms` (or by random
transfer sums for SE), which is exactly where a violation must show up if
the map is not an equilibrium concept.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional, Sequence

from gameaxioms.equilibria import (
    check_nudi,
    enumerate_ne_2p,
    enumerate_pne,
    find_cce,
    find_ce,
    find_maximizers,
    is_ce,
    is_cce,
    is_ne,
    is_strict_pne,
    welfare_objective,
)
from gameaxioms.errors import EmptyFamily, IncompatibleAxiom, NotAPureNashEquilibrium, PreconditionNotMet
from gameaxioms.game import (
    Behavior,
    CorrelatedDistribution,
    Game,
    MixedProfile,
    PureProfile,
    behavior_kind,
    condition,
    evaluate_payoff,
    marginal_self,
    payoff_against,
)
from gameaxioms.rationality import pir, pir_attaining_actions, pir_holds, pirar_holds
from gameaxioms.transforms import (
    WitnessCertificate,
    apply_offsets,
    pir_violation_witness,
    pirar_violation_witness,
    sm_elevation,
    strategically_equivalent,
    usm_contradiction,
)

AXIOMS = ("SE", "PIR", "PIRAR", "SM", "USM", "NUDI")
PROPOSITIONS = ("P1", "P2", "P3", "P4", "C1", "C2", "C3")
KINDS = ("pure", "mixed", "correlated")


def _always(game: Game) -> bool:
    return True


@dataclass(frozen=True)
class SolutionMap:
    """A named deterministic map from games to finite sets of behaviors."""

    name: str
    behavior_kind: str
    compute: Callable[[Game], Iterable[Behavior]]
    domain: Callable[[Game], bool] = _always

    def __call__(self, game: Game) -> frozenset:
        out = frozenset(self.compute(game))
        for x in out:
            if behavior_kind(x) != self.behavior_kind:
                raise TypeError(f"{self.name} produced a {behavior_kind(x)} behavior")
            x.check_shape(game.action_counts)
        return out


def as_kind(profile, kind: str, shape) -> Behavior:
    """A pure profile viewed as a behavior of the given kind."""
    actions = tuple(profile)
    if kind == "pure":
        return PureProfile(actions)
    if kind == "mixed":
        return MixedProfile.pure(shape, actions)
    return CorrelatedDistribution.point_mass(shape, actions)


def _welfare_max(u: Game):
    welfare = welfare_objective(u)
    top = max(welfare)
    return [PureProfile(a) for a, w in zip(u.profiles(), welfare) if w == top]


def _maximin_play(u: Game):
    choices = [pir_attaining_actions(u, i) for i in range(u.num_players)]
    return [PureProfile(a) for a in itertools.product(*choices)]


def _deviation_loss_product(u: Game, a: PureProfile) -> Fraction:
    prod = Fraction(1)
    for i in range(2):
        other = list(a.actions)
        other[i] = 1 - other[i]
        prod *= u.payoff(i, a.actions) - u.payoff(i, other)
    return prod


def _risk_dominant_2x2(u: Game):
    pne = enumerate_pne(u)
    strict = [a for a in pne if is_strict_pne(u, a)]
    if u.action_counts != (2, 2) or len(strict) != 2:
        return list(pne)
    products = [_deviation_loss_product(u, a) for a in strict]
    top = max(products)
    return [a for a, p in zip(strict, products) if p == top]


def _two_players(u: Game) -> bool:
    return u.num_players == 2


def builtin_solution_maps() -> list[SolutionMap]:
    return [
        SolutionMap("pne", "pure", enumerate_pne),
        SolutionMap("welfare_max", "pure", _welfare_max),
        SolutionMap("maximin_play", "pure", _maximin_play),
        SolutionMap("uniform_correlated", "correlated", lambda u: [CorrelatedDistribution.uniform(u.action_counts)]),
        SolutionMap("ne_2p", "mixed", lambda u: enumerate_ne_2p(u).equilibria, _two_players),
        SolutionMap("risk_dominant_2x2", "pure", _risk_dominant_2x2),
        SolutionMap("cce_welfare", "correlated", lambda u: [find_cce(u, welfare_objective(u))]),
        SolutionMap("ce_welfare", "correlated", lambda u: [find_ce(u, welfare_objective(u))]),
    ]


def solution_map(name: str) -> SolutionMap:
    for m in builtin_solution_maps():
        if m.name == name:
            return m
    raise KeyError(f"unknown solution map {name!r}; known: {', '.join(m.name for m in builtin_solution_maps())}")


@dataclass(frozen=True)
class GameFamilySpec:
    """Reproducible random game family: integer payoffs in ``values`` (inclusive)."""

    players: tuple[int, int] = (2, 2)
    actions: tuple[int, int] = (2, 2)
    values: tuple[int, int] = (-9, 9)
    seed: int = 0
    count: int = 100

    def __post_init__(self):
        for name in ("players", "actions", "values"):
            v = getattr(self, name)
            if isinstance(v, int):
                v = (v, v)
            object.__setattr__(self, name, (int(v[0]), int(v[1])))
        if self.players[0] < 1 or self.actions[0] < 1:
            raise ValueError("players and actions must be at least 1")
        if any(lo > hi for lo, hi in (self.players, self.actions, self.values)):
            raise ValueError("empty range in family spec")

    def games(self) -> Iterator[tuple[int, Game]]:
        for index in range(self.count):
            yield index, random_game(self, index)

    def to_dict(self) -> dict:
        return {
            "players": list(self.players),
            "actions": list(self.actions),
            "values": list(self.values),
            "seed": self.seed,
            "count": self.count,
        }


def _rng(*parts) -> random.Random:
    # str seeds are hashed with SHA-512, so this is stable across runs and platforms
    return random.Random("/".join(str(p) for p in parts))


def random_game(spec: GameFamilySpec, index: int) -> Game:
    rng = _rng("game", spec.seed, index)
    n = rng.randint(*spec.players)
    shape = tuple(rng.randint(*spec.actions) for _ in range(n))
    size = 1
    for k in shape:
        size *= k
    lo, hi = spec.values
    return Game(shape, tuple(tuple(rng.randint(lo, hi) for _ in range(size)) for _ in range(n)))


def strict_pne_games(spec: GameFamilySpec, minimum: int = 2, max_attempts: Optional[int] = None):
    """Rejection-sample ``spec.count`` family games with at least ``minimum`` strict PNE."""
    if max_attempts is None:
        max_attempts = 1000 * max(spec.count, 1)
    found = 0
    for index in range(max_attempts):
        if found >= spec.count:
            return
        game = random_game(spec, index)
        if sum(1 for a in enumerate_pne(game) if is_strict_pne(game, a)) >= minimum:
            found += 1
            yield index, game
    if found < spec.count:
        raise EmptyFamily(f"only {found} of {spec.count} games with {minimum} strict PNE in {max_attempts} draws")


def lattice_distribution(rng: random.Random, k: int, max_den: int = 8) -> tuple[Fraction, ...]:
    q = rng.randint(1, max_den)
    counts = [0] * k
    for _ in range(q):
        counts[rng.randrange(k)] += 1
    return tuple(Fraction(c, q) for c in counts)


def sample_behaviors(game: Game, kind: str, count: int, rng: random.Random) -> list[Behavior]:
    """All pure profiles, or ``count`` distinct lattice behaviors of the given kind."""
    shape = game.action_counts
    if kind == "pure":
        return [PureProfile(a) for a in game.profiles()]

    def draw():
        if kind == "mixed":
            return MixedProfile(tuple(lattice_distribution(rng, k) for k in shape))
        return CorrelatedDistribution(shape, lattice_distribution(rng, game.num_profiles))

    # distinct draws; the lattice is finite, so give up after a generous number of repeats
    seen: dict = {}
    for _ in range(50 * count):
        if len(seen) >= count:
            break
        seen.setdefault(draw(), None)
    return list(seen)


def _dedupe(items):
    return list(dict.fromkeys(items))


# --------------------------------------------------------------------------- audits


@dataclass
class Counterexample:
    game_index: int
    game: Game
    examined: Game
    behavior: Optional[Behavior]
    detail: str
    certificate: Optional[WitnessCertificate] = None


@dataclass
class AuditVerdict:
    map_name: str
    axiom: str
    status: str  # "PassedBudget" or "Violated"
    games_checked: int
    counterexample: Optional[Counterexample] = None

    @property
    def violated(self) -> bool:
        return self.status == "Violated"


def _axiom_failure(smap: SolutionMap, axiom: str, h: Game, sol: frozenset) -> Optional[tuple[Optional[Behavior], str]]:
    """First behavior on which ``axiom`` fails for ``sol = S(h)``, if any."""
    kind = smap.behavior_kind
    if axiom == "PIR":
        for x in sorted(sol, key=repr):
            ok = pir_holds(h, x)
            if not all(ok):
                i = ok.index(False)
                return x, f"player {i + 1}: u_i(x) = {evaluate_payoff(h, x, i)} is not above pir_i = {pir(h, i)}"
    elif axiom == "PIRAR":
        for x in sorted(sol, key=repr):
            for (i, a_i), ok in sorted(pirar_holds(h, x).items()):
                if not ok:
                    return x, f"player {i + 1}, recommendation {a_i}: follow payoff is not above pir_i = {pir(h, i)}"
    elif axiom == "NUDI":
        for x in sorted(sol, key=repr):
            rep = check_nudi(h, x)
            if not rep.holds:
                v = rep.violations[0]
                return x, f"player {v.player + 1} gains {v.gain} by deviating to {v.action}"
    elif axiom == "SM":
        for a in find_maximizers(h).weak_maximizers:
            x = as_kind(a, kind, h.action_counts)
            if x not in sol:
                return x, f"simultaneous maximizer {a.actions} is not a solution"
    elif axiom == "USM":
        a = find_maximizers(h).strict_maximizer
        if a is not None:
            x = as_kind(a, kind, h.action_counts)
            if sol != frozenset([x]):
                return x, f"strict simultaneous maximizer {a.actions} but the solution has {len(sol)} behaviors"
    return None


def _random_transfer_sum(u: Game, rng: random.Random) -> Game:
    lay = u.layout
    v = u
    for _ in range(rng.randint(1, 3)):
        i = rng.randrange(u.num_players)
        offs = [Fraction(0)] * len(lay.others_base[i])
        offs[rng.randrange(len(offs))] = Fraction(rng.randint(-20, 20), rng.randint(1, 4))
        v = apply_offsets(v, i, offs)
    return v


def _derived_games(smap: SolutionMap, axiom: str, u: Game, sol: frozenset, budget: int):
    """Equivalent games built by the witness constructions for this axiom."""
    out = []
    if axiom == "PIR":
        for x in sorted(sol, key=repr):
            rep = check_nudi(u, x)
            if not rep.holds:
                v = rep.violations[0]
                out.append(pir_violation_witness(u, x, v.player, v.action))
    elif axiom == "PIRAR":
        for x in sorted(sol, key=repr):
            rep = is_ce(u, x)
            if not rep.holds:
                v = rep.violations[0]
                out.append(pirar_violation_witness(u, x, v.player, v.recommendation, v.action))
    elif axiom == "SM":
        out = [sm_elevation(u, a) for a in enumerate_pne(u)]
    elif axiom == "USM":
        strict = [a for a in enumerate_pne(u) if is_strict_pne(u, a)]
        for a, b in itertools.combinations(strict, 2):
            out.extend(usm_contradiction(u, a, b))
    return out[:budget]


def check_axiom(smap: SolutionMap, axiom: str, family: GameFamilySpec, transform_budget: int = 10) -> AuditVerdict:
    """Audit ``smap`` against one axiom on every game of ``family``.

    Returns the first violation found (in game-index order) or PassedBudget.
    """
    if axiom not in AXIOMS:
        raise IncompatibleAxiom(f"unknown axiom {axiom!r}")
    if axiom == "PIRAR" and smap.behavior_kind != "correlated":
        raise IncompatibleAxiom("PIRAR is defined for correlated behaviors only")
    checked = 0
    for index, u in family.games():
        if not smap.domain(u):
            continue
        checked += 1
        sol = smap(u)
        if axiom == "SE":
            for t in range(transform_budget):
                v = _random_transfer_sum(u, _rng("se", family.seed, index, t))
                sol_v = smap(v)
                if sol_v != sol:
                    diff = sorted(sol.symmetric_difference(sol_v), key=repr)[0]
                    side = "original" if diff in sol else "transformed"
                    return AuditVerdict(smap.name, axiom, "Violated", checked, Counterexample(
                        index, u, v, diff, f"behavior is a solution of the {side} game only"))
            continue
        failure = _axiom_failure(smap, axiom, u, sol)
        if failure:
            return AuditVerdict(smap.name, axiom, "Violated", checked, Counterexample(index, u, u, *failure))
        for cert in _derived_games(smap, axiom, u, sol, transform_budget):
            h = cert.transformed
            failure = _axiom_failure(smap, axiom, h, smap(h))
            if failure:
                return AuditVerdict(smap.name, axiom, "Violated", checked, Counterexample(index, u, h, *failure, cert))
    return AuditVerdict(smap.name, axiom, "PassedBudget", checked)


def reverify_verdict(verdict: AuditVerdict, smap: SolutionMap) -> bool:
    """Recheck a Violated verdict from its counterexample alone."""
    if not verdict.violated:
        return True
    cx = verdict.counterexample
    if cx is None:
        return False
    if not strategically_equivalent(cx.game, cx.examined):
        return False
    if cx.certificate is not None:
        if not cx.certificate.verify() or cx.certificate.transformed != cx.examined:
            return False
    if verdict.axiom == "SE":
        return (cx.behavior in smap(cx.game)) != (cx.behavior in smap(cx.examined))
    failure = _axiom_failure(smap, verdict.axiom, cx.examined, smap(cx.examined))
    return failure is not None and failure == (cx.behavior, cx.detail)


# --------------------------------------------------------------------------- propositions


@dataclass
class PropositionReport:
    prop: str
    family: dict
    games: int = 0
    behaviors: int = 0
    witnesses: int = 0
    failures: list[str] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: "GameResult") -> None:
        self.games += 1
        self.behaviors += other.behaviors
        self.witnesses += other.witnesses
        self.failures.extend(other.failures)

    def to_dict(self) -> dict:
        return {
            "prop": self.prop,
            "family": self.family,
            "games": self.games,
            "behaviors": self.behaviors,
            "witnesses": self.witnesses,
            "failures": list(self.failures),
            "notes": dict(self.notes),
            "ok": self.ok,
        }


@dataclass
class GameResult:
    behaviors: int = 0
    witnesses: int = 0
    failures: list[str] = field(default_factory=list)

    def fail(self, index: int, message: str) -> None:
        self.failures.append(f"game {index}: {message}")


def p1_behaviors(u: Game, samples: int, rng: random.Random) -> list[Behavior]:
    """Pure profiles exhaustively, lattice samples, and equilibrium outputs."""
    shape = u.action_counts
    out: list[Behavior] = sample_behaviors(u, "pure", 0, rng)
    out += sample_behaviors(u, "mixed", samples, rng)
    out += sample_behaviors(u, "correlated", samples, rng)
    out.append(CorrelatedDistribution.uniform(shape))
    for a in enumerate_pne(u):
        out.append(MixedProfile.pure(shape, a.actions))
        out.append(CorrelatedDistribution.point_mass(shape, a.actions))
    if u.num_players == 2:
        out += enumerate_ne_2p(u).equilibria
    return _dedupe(out)


def _check_p1(index: int, u: Game, samples: int, seed: int, all_violations: bool = True) -> GameResult:
    res = GameResult()
    for x in p1_behaviors(u, samples, _rng("p1", seed, index)):
        res.behaviors += 1
        rep = check_nudi(u, x)
        reported = {(v.player, v.action) for v in rep.violations}
        targets = rep.violations if all_violations else rep.violations[:1]
        for viol in targets:
            i = viol.player
            try:
                cert = pir_violation_witness(u, x, i, viol.action)
            except PreconditionNotMet as exc:
                res.fail(index, f"{x}: no witness for reported deviation ({i}, {viol.action}): {exc}")
                continue
            res.witnesses += 1
            v = cert.transformed
            if not (cert.verify() and strategically_equivalent(u, v)
                    and pir(v, i) >= 0 and evaluate_payoff(v, x, i) < 0):
                res.fail(index, f"{x}: witness for ({i}, {viol.action}) does not verify")
        # the construction must be refused exactly on the non-improving deviations
        for i in range(u.num_players):
            for a_i in range(u.action_counts[i]):
                if (i, a_i) in reported:
                    continue
                try:
                    pir_violation_witness(u, x, i, a_i)
                except PreconditionNotMet:
                    continue
                res.fail(index, f"{x}: witness built for non-improving deviation ({i}, {a_i})")
    return res


def _check_p2(index: int, u: Game, samples: int, seed: int) -> GameResult:
    res = GameResult()
    rng = _rng("p2", seed, index)
    xs = sample_behaviors(u, "correlated", samples, rng)
    xs.append(CorrelatedDistribution.uniform(u.action_counts))
    xs += [CorrelatedDistribution.point_mass(u.action_counts, a.actions) for a in enumerate_pne(u)]
    for x in _dedupe(xs):
        res.behaviors += 1
        rep = is_ce(u, x)
        if rep.holds and not is_cce(u, x).holds:
            res.fail(index, f"{x}: correlated equilibrium that is not coarse correlated")
        reported = {(v.player, v.recommendation, v.action) for v in rep.violations}
        for viol in rep.violations:
            i, a_i, b_i = viol.player, viol.recommendation, viol.action
            try:
                cert = pirar_violation_witness(u, x, i, a_i, b_i)
            except PreconditionNotMet as exc:
                res.fail(index, f"{x}: no PIRAR witness for ({i}, {a_i} -> {b_i}): {exc}")
                continue
            res.witnesses += 1
            v = cert.transformed
            if not (cert.verify() and strategically_equivalent(u, v) and pir(v, i) >= 0
                    and payoff_against(v, i, a_i, condition(x, i, a_i)) < 0):
                res.fail(index, f"{x}: PIRAR witness for ({i}, {a_i} -> {b_i}) does not verify")
        for i in range(u.num_players):
            for a_i, mass in enumerate(marginal_self(x, i)):
                if not mass:
                    continue
                for b_i in range(u.action_counts[i]):
                    if b_i == a_i or (i, a_i, b_i) in reported:
                        continue
                    try:
                        pirar_violation_witness(u, x, i, a_i, b_i)
                    except PreconditionNotMet:
                        continue
                    res.fail(index, f"{x}: PIRAR witness built for non-improving switch ({i}, {a_i} -> {b_i})")
    return res


def _check_p3(index: int, u: Game, samples: int, seed: int) -> GameResult:
    res = GameResult()
    pne = set(enumerate_pne(u))
    for a in u.profiles():
        a = PureProfile(a)
        res.behaviors += 1
        if a not in pne:
            try:
                sm_elevation(u, a)
            except NotAPureNashEquilibrium:
                continue
            res.fail(index, f"elevation accepted non-equilibrium {a.actions}")
            continue
        cert = sm_elevation(u, a)
        res.witnesses += 1
        v = cert.transformed
        if not cert.verify() or not strategically_equivalent(u, v):
            res.fail(index, f"elevation certificate for {a.actions} does not verify")
        if a not in find_maximizers(v).weak_maximizers:
            res.fail(index, f"{a.actions} is not a weak simultaneous maximizer after elevation")
    return res


def _check_p4(index: int, u: Game, samples: int, seed: int) -> GameResult:
    res = GameResult()
    strict = [a for a in enumerate_pne(u) if is_strict_pne(u, a)]
    if len(strict) < 2:
        res.fail(index, "game has fewer than two strict pure equilibria")
        return res
    for a, b in itertools.combinations(strict, 2):
        res.behaviors += 1
        ca, cb = usm_contradiction(u, a, b)
        res.witnesses += 2
        v, w = ca.transformed, cb.transformed
        if not (ca.verify() and cb.verify()):
            res.fail(index, f"contradiction certificates for {a.actions}/{b.actions} do not verify")
        if not (strategically_equivalent(u, v) and strategically_equivalent(u, w) and strategically_equivalent(v, w)):
            res.fail(index, "contradiction games are not strategically equivalent")
        if find_maximizers(v).strict_maximizer != a or find_maximizers(w).strict_maximizer != b:
            res.fail(index, f"strict maximizers are not {a.actions} and {b.actions}")
    return res


def _check_c1(index: int, u: Game, samples: int, seed: int) -> GameResult:
    res = _check_p1(index, u, samples, seed, all_violations=False)
    for smap in builtin_solution_maps():
        if smap.name not in ("pne", "ne_2p", "cce_welfare") or not smap.domain(u):
            continue
        for x in sorted(smap(u), key=repr):
            res.behaviors += 1
            if not check_nudi(u, x).holds:
                res.fail(index, f"{smap.name} output {x} is not an equilibrium")
            if smap.name == "ne_2p" and not is_ne(u, x).holds:
                res.fail(index, f"{smap.name} output {x} fails is_ne")
    return res


def _check_c2(index: int, u: Game, samples: int, seed: int) -> GameResult:
    """Pure profiles split exactly into PIR-eliminated ones and SM-included ones."""
    res = GameResult()
    eliminated, included = set(), set()
    for a in u.profiles():
        a = PureProfile(a)
        res.behaviors += 1
        rep = check_nudi(u, a)
        if not rep.holds:
            v = rep.violations[0]
            cert = pir_violation_witness(u, a, v.player, v.action)
            res.witnesses += 1
            if cert.verify():
                eliminated.add(a)
        else:
            cert = sm_elevation(u, a)
            res.witnesses += 1
            if cert.verify() and a in find_maximizers(cert.transformed).weak_maximizers:
                included.add(a)
    if eliminated & included:
        res.fail(index, "a profile is both eliminated and included")
    if eliminated | included != {PureProfile(a) for a in u.profiles()}:
        res.fail(index, "some profile is neither eliminated nor included")
    if included != set(enumerate_pne(u)):
        res.fail(index, "included profiles differ from the pure Nash equilibria")
    return res


_CHECKS = {"P1": _check_p1, "P2": _check_p2, "P3": _check_p3, "P4": _check_p4, "C1": _check_c1, "C2": _check_c2}


def _run_one(args) -> GameResult:
    prop, index, game, samples, seed = args
    return _CHECKS[prop](index, game, samples, seed)


def verify_proposition(prop: str, family: GameFamilySpec, samples_per_game: int = 20,
                       transform_budget: int = 5, workers: int = 1) -> PropositionReport:
    """Mechanically check one proposition or corollary on every game of ``family``.

    P4 and C3 rejection-sample ``family.count`` games with two or more strict
    pure equilibria. ``workers > 1`` spreads games over processes; results are
    merged in game-index order so reports do not depend on scheduling.
    """
    if prop not in PROPOSITIONS:
        raise ValueError(f"unknown proposition {prop!r}; expected one of {', '.join(PROPOSITIONS)}")
    if family.count < 1:
        raise EmptyFamily("the family has no games")
    report = PropositionReport(prop, family.to_dict())
    if prop == "C3":
        return _verify_c3(report, family, transform_budget)
    games = strict_pne_games(family) if prop == "P4" else family.games()
    jobs = [(prop, index, game, samples_per_game, family.seed) for index, game in games]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, jobs, chunksize=8))
    else:
        results = [_run_one(job) for job in jobs]
    for res in results:
        report.merge(res)
    if prop == "C2":
        pne = solution_map("pne")
        for axiom in ("SE", "SM"):
            verdict = check_axiom(pne, axiom, family, transform_budget)
            report.notes[f"pne/{axiom}"] = verdict.status
            if verdict.violated:
                report.failures.append(f"pne violates {axiom}: {verdict.counterexample.detail}")
        # informational: an equilibrium paying exactly pir_i fails the strict inequality
        report.notes["pne/PIR"] = check_axiom(pne, "PIR", family, transform_budget).status
    return report


def _verify_c3(report: PropositionReport, family: GameFamilySpec, budget: int) -> PropositionReport:
    """Every built-in map must be refuted on SE or on USM."""
    sampled = GameFamilySpec(family.players, family.actions, family.values, family.seed, family.count)
    indexes = [index for index, _ in strict_pne_games(sampled)]
    report.games = len(indexes)
    for smap in builtin_solution_maps():
        refuted = None
        for axiom in ("USM", "SE"):
            verdict = check_axiom(smap, axiom, _IndexedFamily(sampled, indexes), budget)
            if verdict.violated:
                if not reverify_verdict(verdict, smap):
                    report.failures.append(f"{smap.name}: {axiom} counterexample does not re-verify")
                refuted = axiom
                report.witnesses += 1
                break
        report.notes[smap.name] = refuted or "not refuted"
        if refuted is None:
            report.failures.append(f"{smap.name} was refuted on neither SE nor USM")
    return report


class _IndexedFamily(GameFamilySpec):
    """A family restricted to selected indexes of another family."""

    def __init__(self, base: GameFamilySpec, indexes: Sequence[int]):
        super().__init__(base.players, base.actions, base.values, base.seed, len(indexes))
        object.__setattr__(self, "_indexes", tuple(indexes))

    def games(self):
        for index in self._indexes:
            yield index, random_game(self, index)

from fractions import Fraction as F

import pytest

import oracles
from gameaxioms import (
    AuditVerdict,
    CorrelatedDistribution,
    EmptyFamily,
    GameFamilySpec,
    IncompatibleAxiom,
    PureProfile,
    builtin_solution_maps,
    check_axiom,
    solution_map,
    verify_proposition,
)
from gameaxioms import evaluate_payoff, find_ce, marginal_self, pir, welfare_objective
from gameaxioms.fileformat import dumps
from gameaxioms.game import condition, payoff_against
from gameaxioms.harness import (
    SolutionMap,
    lattice_distribution,
    random_game,
    reverify_verdict,
    sample_behaviors,
    strict_pne_games,
    _rng,
)

SMALL = GameFamilySpec(players=(2, 3), actions=(2, 3), seed=4, count=12)


def test_family_is_reproducible():
    a = [g for _, g in SMALL.games()]
    b = [g for _, g in GameFamilySpec(players=(2, 3), actions=(2, 3), seed=4, count=12).games()]
    assert a == b
    c = [g for _, g in GameFamilySpec(players=(2, 3), actions=(2, 3), seed=5, count=12).games()]
    assert a != c
    for g in a:
        assert 2 <= g.num_players <= 3
        assert all(2 <= k <= 3 for k in g.action_counts)
        assert all(-9 <= v <= 9 for t in g.payoffs for v in t)


def test_family_spec_validation():
    with pytest.raises(ValueError):
        GameFamilySpec(players=(3, 2))
    assert GameFamilySpec(players=2).players == (2, 2)


def test_random_game_is_stable_across_runs():
    # frozen: the string-seeded generator must never change between releases
    g = random_game(GameFamilySpec(seed=0, count=1), 0)
    assert g.action_counts == (2, 2)
    assert g.payoffs == ((7, -1, 2, 1), (-7, 0, -7, -2))


def test_lattice_sampling():
    rng = _rng("t")
    for _ in range(50):
        p = lattice_distribution(rng, 4)
        assert sum(p) == 1 and all(q.denominator <= 8 for q in p)
    g = random_game(SMALL, 0)
    assert len(sample_behaviors(g, "pure", 0, rng)) == g.num_profiles
    assert len(sample_behaviors(g, "correlated", 7, rng)) == 7


def test_strict_pne_rejection_sampling():
    spec = GameFamilySpec(players=2, actions=(2, 3), seed=1, count=5)
    found = list(strict_pne_games(spec))
    assert len(found) == 5
    for _, g in found:
        u = oracles.as_dict(g.action_counts, g.payoffs)
        assert len(oracles.strict_pure_nash(g.action_counts, u)) >= 2
    with pytest.raises(EmptyFamily):
        list(strict_pne_games(GameFamilySpec(players=2, actions=1, count=1), max_attempts=5))


def test_solution_map_kind_is_enforced():
    bad = SolutionMap("bad", "mixed", lambda u: [PureProfile((0,) * u.num_players)])
    with pytest.raises(TypeError):
        bad(random_game(SMALL, 0))
    with pytest.raises(KeyError):
        solution_map("nope")


def test_pne_passes_its_axioms():
    pne = solution_map("pne")
    for axiom in ("SE", "SM", "NUDI"):
        assert check_axiom(pne, axiom, SMALL, 4).status == "PassedBudget"


def test_strict_pir_rejects_an_equilibrium_paying_exactly_pir(pd):
    # (D, D) pays 1 and pir is 1, so the strict inequality fails at the boundary
    fam = GameFamilySpec(players=2, actions=2, seed=0, count=30)
    verdict = check_axiom(solution_map("pne"), "PIR", fam, 2)
    assert verdict.violated
    cx = verdict.counterexample
    i = int(cx.detail.split(":")[0].split()[1]) - 1
    assert evaluate_payoff(cx.examined, cx.behavior, i) == pir(cx.examined, i)


def test_ce_outputs_satisfy_the_weak_form_of_pirar():
    fam = GameFamilySpec(players=2, actions=(2, 3), seed=2, count=10)
    for _, g in fam.games():
        x = find_ce(g, welfare_objective(g))
        for i in range(2):
            for a_i, mass in enumerate(marginal_self(x, i)):
                if mass:
                    assert payoff_against(g, i, a_i, condition(x, i, a_i)) >= pir(g, i)


def test_welfare_max_is_refuted_and_the_counterexample_reverifies():
    smap = solution_map("welfare_max")
    verdict = check_axiom(smap, "SE", SMALL, 5)
    assert verdict.violated
    assert reverify_verdict(verdict, smap)
    verdict = check_axiom(smap, "PIR", SMALL, 5)
    assert verdict.violated and reverify_verdict(verdict, smap)


def test_uniform_correlated_violates_usm():
    fam = GameFamilySpec(players=2, actions=2, seed=0, count=40)
    verdict = check_axiom(solution_map("uniform_correlated"), "USM", fam, 4)
    assert verdict.violated
    assert verdict.counterexample.certificate is None or verdict.counterexample.certificate.verify()


def test_incompatible_axiom():
    with pytest.raises(IncompatibleAxiom):
        check_axiom(solution_map("pne"), "PIRAR", SMALL)
    with pytest.raises(IncompatibleAxiom):
        check_axiom(solution_map("pne"), "XYZ", SMALL)


def test_passed_budget_is_not_a_proof():
    v = AuditVerdict("m", "SE", "PassedBudget", 3)
    assert not v.violated and v.counterexample is None


@pytest.mark.parametrize("prop", ["P1", "P2", "P3", "P4", "C1", "C2"])
def test_propositions_on_a_small_family(prop):
    fam = GameFamilySpec(players=(2, 2) if prop == "P2" else (2, 3), actions=(2, 3), seed=9, count=6)
    report = verify_proposition(prop, fam, samples_per_game=6, transform_budget=3)
    assert report.ok, report.failures
    assert report.games == 6
    if prop != "C2":
        assert report.witnesses > 0


def test_c3_refutes_every_builtin_map():
    fam = GameFamilySpec(players=2, actions=2, seed=3, count=20)
    report = verify_proposition("C3", fam, transform_budget=4)
    assert report.ok, report.failures
    assert set(report.notes) == {m.name for m in builtin_solution_maps()}
    assert all(v in ("SE", "USM") for v in report.notes.values())


def test_reports_are_deterministic():
    fam = GameFamilySpec(players=(2, 3), actions=(2, 3), seed=21, count=5)
    first = dumps(verify_proposition("P1", fam, samples_per_game=5))
    second = dumps(verify_proposition("P1", fam, samples_per_game=5))
    assert first == second


def test_workers_do_not_change_the_report():
    fam = GameFamilySpec(players=(2, 3), actions=(2, 3), seed=22, count=6)
    serial = verify_proposition("P3", fam, workers=1)
    parallel = verify_proposition("P3", fam, workers=2)
    assert dumps(serial) == dumps(parallel)


def test_point_mass_counts_as_correlated_solution():
    g = random_game(SMALL, 0)
    x = CorrelatedDistribution.point_mass(g.action_counts, (0,) * g.num_players)
    assert x.prob((0,) * g.num_players) == F(1)

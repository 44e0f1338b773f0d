"""Exact-arithmetic toolkit for finite normal-form games.

Games, behaviors and equilibrium tests live in :mod:`gameaxioms.game` and
:mod:`gameaxioms.equilibria`; transfer games and witness constructions in
:mod:`gameaxioms.transforms`; solution-map audits in :mod:`gameaxioms.harness`.
Everything is computed over :class:`fractions.Fraction`.
"""

__version__ = "0.1.0"

from gameaxioms.equilibria import (
    DeviationReport,
    MaximizerReport,
    SupportEnumeration,
    Violation,
    cce_program,
    ce_program,
    check_nudi,
    enumerate_ne_2p,
    enumerate_pne,
    find_cce,
    find_ce,
    find_maximizers,
    is_cce,
    is_ce,
    is_ne,
    is_pne,
    is_strict_pne,
    welfare_objective,
)
from gameaxioms.errors import (
    EmptyFamily,
    GameError,
    GameFormatError,
    IncompatibleAxiom,
    InvariantFailure,
    MalformedProgram,
    NotAPureNashEquilibrium,
    NotStrictPNE,
    PreconditionNotMet,
    ProfilesEqual,
    ShapeMismatch,
    UnsupportedPlayerCount,
    ZeroProbabilityCondition,
)
from gameaxioms.fileformat import (
    GameFile,
    format_behavior,
    parse_behavior,
    parse_game,
    parse_game_file,
    serialize_game,
)
from gameaxioms.game import (
    Behavior,
    CorrelatedDistribution,
    Game,
    MixedProfile,
    PureProfile,
    condition,
    evaluate_payoff,
    marginal_others,
    marginal_self,
)
from gameaxioms.harness import (
    AuditVerdict,
    GameFamilySpec,
    PropositionReport,
    SolutionMap,
    builtin_solution_maps,
    check_axiom,
    solution_map,
    verify_proposition,
)
from gameaxioms.lp import LinearProgram, LPOutcome, LPStatus, solve, zero_sum_value
from gameaxioms.rationality import cir, ir_2p, pir, pir_holds, pirar_holds, rationality_values
from gameaxioms.transforms import (
    EquivalenceCertificate,
    NotEquivalent,
    WitnessCertificate,
    apply_offsets,
    make_z_game,
    pir_violation_witness,
    pirar_violation_witness,
    sm_elevation,
    strategically_equivalent,
    usm_contradiction,
)

"""Command-line front end.

Exit status is 0 when nothing was refuted, 1 when a violation, refutation
or failed witness precondition was found, and 2 for usage or input errors.
Players are numbered from 1 on the command line and in all output; actions
may be given by label or by 0-based index.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from gameaxioms import __version__
from gameaxioms.equilibria import (
    check_nudi,
    enumerate_ne_2p,
    enumerate_pne,
    find_cce,
    find_ce,
    find_maximizers,
    is_ce,
    welfare_objective,
)
from gameaxioms.errors import GameError, GameFormatError, PreconditionNotMet
from gameaxioms.fileformat import (
    GameFile,
    dumps,
    format_behavior,
    format_rational,
    parse_behavior,
    parse_profile,
    read_game_file,
    serialize_game,
    write_game_file,
)
from gameaxioms.game import CorrelatedDistribution, PureProfile
from gameaxioms.harness import AXIOMS, PROPOSITIONS, GameFamilySpec, check_axiom, solution_map, verify_proposition
from gameaxioms.rationality import cir_solution, pir
from gameaxioms.transforms import (
    WitnessCertificate,
    pir_violation_witness,
    pirar_violation_witness,
    sm_elevation,
    strategically_equivalent,
    usm_contradiction,
)

CLEAN, FOUND, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fmt(q) -> str:
    return format_rational(q)


def _vector(values) -> str:
    return "(" + ", ".join(_fmt(v) for v in values) + ")"


def _range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or LO:HI, got {text!r}") from None


def _player(gf: GameFile, number: int) -> int:
    if not 1 <= number <= gf.game.num_players:
        raise UsageError(f"player {number} out of range 1..{gf.game.num_players}")
    return number - 1


def _action(gf: GameFile, i: int, token: str) -> int:
    names = gf.labels[i]
    if token in names:
        return names.index(token)
    if token.isdigit() and int(token) < len(names):
        return int(token)
    raise UsageError(f"player {i + 1} has no action {token!r} (actions: {' '.join(names)})")


def _load(path: str) -> GameFile:
    try:
        return read_game_file(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except GameFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _profile(gf: GameFile, text: str) -> PureProfile:
    try:
        return PureProfile(parse_profile(text, gf.labels))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, payload, text: str) -> None:
    if args.json:
        sys.stdout.write(dumps(payload, args.labels))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


# --------------------------------------------------------------------------- certificate text


def certificate_text(cert: WitnessCertificate, gf: GameFile) -> str:
    lines = [f"certificate: {cert.kind}"]
    params = []
    for key, value in cert.parameters.items():
        if key == "i":
            params.append(f"player={value + 1}")
        elif isinstance(value, int):
            params.append(f"{key}={value}")
        else:
            params.append(f"{key}={format_behavior(value, gf.labels)}")
    lines.append("parameters: " + " ".join(params))
    lines.append("transfers (amount, player, opponent profile):")
    shape = cert.original.action_counts
    for c, i, b in cert.equivalence.transfers(shape):
        others = ",".join(gf.labels[j][a] for j, a in zip([j for j in range(len(shape)) if j != i], b))
        lines.append(f"  z({_fmt(c)}, {i + 1}, ({others}))")
    lines.append("inequalities:")
    for q in cert.checked_inequalities:
        mark = "ok" if q.holds() else "FAILED"
        lines.append(f"  [{mark}] {q.description}: {_fmt(q.lhs)} {q.relation} {_fmt(q.rhs)}")
    lines.append("transformed game:")
    lines.extend("  " + ln for ln in serialize_game(cert.transformed, gf.labels).splitlines())
    lines.append(f"verified: {'yes' if cert.verify() else 'NO'}")
    return "\n".join(lines)


# --------------------------------------------------------------------------- subcommands


def cmd_analyze(args) -> int:
    gf = _load(args.file)
    args.labels = gf.labels
    u = gf.game
    n = u.num_players
    pirs = [pir(u, i) for i in range(n)]
    cirs = [cir_solution(u, i) for i in range(n)]
    pne = enumerate_pne(u)
    maxi = find_maximizers(u)
    welfare = welfare_objective(u)
    ce = find_ce(u, welfare)
    cce = find_cce(u, welfare)
    payload = {
        "players": n,
        "actions": list(u.action_counts),
        "pir": pirs,
        "cir": [{"value": s.value, "strategy": list(s.strategy)} for s in cirs],
        "pne": list(pne),
        "weak_maximizers": list(maxi.weak_maximizers),
        "strict_maximizer": maxi.strict_maximizer,
        "ce_welfare": ce,
        "cce_welfare": cce,
    }
    lines = [f"game: {n} players, actions {' x '.join(map(str, u.action_counts))}"]
    lines.append("pir: " + _vector(pirs))
    lines.append("cir: " + _vector(s.value for s in cirs))
    for i, s in enumerate(cirs):
        lines.append(f"  player {i + 1} guarantee strategy: {_vector(s.strategy)}")
    if n == 2:
        ne = enumerate_ne_2p(u)
        payload["ne"] = list(ne.equilibria)
        payload["ne_complete"] = ne.complete
        lines.append("ir: " + _vector(s.value for s in cirs))
    lines.append("PNE: {" + ", ".join("(" + gf.profile_text(a.actions) + ")" for a in pne) + "}")
    if n == 2:
        note = "" if ne.complete else " (degenerate game; list may be incomplete)"
        lines.append("NE: {" + ", ".join(format_behavior(x) for x in ne.equilibria) + "}" + note)
    lines.append("weak simultaneous maximizers: {"
                 + ", ".join("(" + gf.profile_text(a.actions) + ")" for a in maxi.weak_maximizers) + "}")
    strict = maxi.strict_maximizer
    lines.append("strict simultaneous maximizer: "
                 + ("(" + gf.profile_text(strict.actions) + ")" if strict else "none"))
    lines.append(f"CE (max welfare {_fmt(sum(w * p for w, p in zip(welfare, ce.weights)))}): "
                 + format_behavior(ce, gf.labels))
    lines.append(f"CCE (max welfare {_fmt(sum(w * p for w, p in zip(welfare, cce.weights)))}): "
                 + format_behavior(cce, gf.labels))
    _emit(args, payload, "\n".join(lines))
    return CLEAN


def _behavior(gf: GameFile, text: str):
    try:
        return parse_behavior(text, gf.game.action_counts, gf.labels)
    except (ValueError, GameError) as exc:
        raise UsageError(f"bad behavior {text!r}: {exc}") from None


def _refused(args, exc: Exception) -> int:
    message = f"precondition not met: {exc}"
    if args.json:
        sys.stdout.write(dumps({"certificate": None, "reason": str(exc)}))
    else:
        print(message)
    return FOUND


def _certificate_out(args, gf: GameFile, cert: WitnessCertificate) -> int:
    if args.write:
        write_game_file(args.write, cert.transformed, gf.labels)
    _emit(args, cert, certificate_text(cert, gf))
    return CLEAN if cert.verify() else FOUND


def cmd_witness(args) -> int:
    gf = _load(args.file)
    args.labels = gf.labels
    u = gf.game
    x = _behavior(gf, args.behavior)
    if args.kind == "nudi":
        if args.player is None:
            rep = check_nudi(u, x)
            if rep.holds:
                return _refused(args, PreconditionNotMet("no player gains by a unilateral deviation"))
            i, a = rep.violations[0].player, rep.violations[0].action
        else:
            i = _player(gf, args.player)
            if args.action is None:
                raise UsageError("--action is required with --player")
            a = _action(gf, i, args.action)
        try:
            cert = pir_violation_witness(u, x, i, a)
        except PreconditionNotMet as exc:
            return _refused(args, exc)
        return _certificate_out(args, gf, cert)
    if not isinstance(x, CorrelatedDistribution):
        raise UsageError("witness pirar needs a correlated behavior such as '1/2@C,C 1/2@D,D'")
    if args.player is None:
        rep = is_ce(u, x)
        if rep.holds:
            return _refused(args, PreconditionNotMet("every recommendation is a conditional best reply"))
        v = rep.violations[0]
        i, rec, a = v.player, v.recommendation, v.action
    else:
        i = _player(gf, args.player)
        if args.recommendation is None or args.action is None:
            raise UsageError("--recommendation and --action are required with --player")
        rec = _action(gf, i, args.recommendation)
        a = _action(gf, i, args.action)
    try:
        cert = pirar_violation_witness(u, x, i, rec, a)
    except (PreconditionNotMet, GameError) as exc:
        return _refused(args, exc)
    return _certificate_out(args, gf, cert)


def cmd_elevate(args) -> int:
    gf = _load(args.file)
    args.labels = gf.labels
    a = _profile(gf, args.profile)
    try:
        cert = sm_elevation(gf.game, a)
    except PreconditionNotMet as exc:
        return _refused(args, exc)
    return _certificate_out(args, gf, cert)


def cmd_contradict(args) -> int:
    gf = _load(args.file)
    args.labels = gf.labels
    a, b = _profile(gf, args.a), _profile(gf, args.b)
    try:
        first, second = usm_contradiction(gf.game, a, b)
    except PreconditionNotMet as exc:
        return _refused(args, exc)
    if args.write:
        write_game_file(args.write[0], first.transformed, gf.labels)
        write_game_file(args.write[1], second.transformed, gf.labels)
    text = "\n\n".join([certificate_text(first, gf), certificate_text(second, gf)])
    _emit(args, [first, second], text)
    return CLEAN if first.verify() and second.verify() else FOUND


def cmd_equiv(args) -> int:
    f1, f2 = _load(args.first), _load(args.second)
    args.labels = f1.labels
    if f1.game.action_counts != f2.game.action_counts:
        raise UsageError(f"games have different shapes {f1.game.action_counts} and {f2.game.action_counts}")
    result = strategically_equivalent(f1.game, f2.game)
    if result:
        lines = ["strategically equivalent", "transfers (amount, player, opponent profile):"]
        shape = f1.game.action_counts
        for c, i, b in result.transfers():
            others = ",".join(f1.labels[j][a] for j, a in zip([j for j in range(len(shape)) if j != i], b))
            lines.append(f"  z({_fmt(c)}, {i + 1}, ({others}))")
        if len(lines) == 2:
            lines.append("  none (the games are identical)")
        _emit(args, result, "\n".join(lines))
        return CLEAN
    i = result.player
    others = ",".join(f1.labels[j][a] for j, a in zip([j for j in range(len(f1.labels)) if j != i], result.others))
    names = f1.labels[i]
    text = (
        "not strategically equivalent\n"
        f"player {i + 1}, opponents ({others}): the payoff difference is {_fmt(result.difference)} "
        f"under {names[result.action]} but {_fmt(result.other_difference)} under {names[result.other_action]}"
    )
    _emit(args, result, text)
    return FOUND


def _family(args) -> GameFamilySpec:
    try:
        return GameFamilySpec(args.players, args.actions, args.values, args.seed, args.count)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_audit(args) -> int:
    args.labels = None
    try:
        smap = solution_map(args.map)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    try:
        verdict = check_axiom(smap, args.axiom, _family(args), args.budget)
    except GameError as exc:
        raise UsageError(str(exc)) from None
    lines = [f"{verdict.map_name} / {verdict.axiom}: {verdict.status} ({verdict.games_checked} games checked)"]
    cx = verdict.counterexample
    if cx is not None:
        lines.append(f"game index: {cx.game_index}")
        lines.append(f"behavior: {format_behavior(cx.behavior) if cx.behavior is not None else '-'}")
        lines.append(f"detail: {cx.detail}")
        lines.append("game:")
        lines.extend("  " + ln for ln in serialize_game(cx.game).splitlines())
        if cx.examined != cx.game:
            lines.append("equivalent game examined:")
            lines.extend("  " + ln for ln in serialize_game(cx.examined).splitlines())
    _emit(args, verdict, "\n".join(lines))
    return FOUND if verdict.violated else CLEAN


def cmd_verify(args) -> int:
    args.labels = None
    report = verify_proposition(args.prop, _family(args), args.samples, args.budget, args.workers)
    lines = [
        f"{report.prop}: {'ok' if report.ok else 'FAILED'}",
        f"games: {report.games}  behaviors: {report.behaviors}  witnesses: {report.witnesses}",
    ]
    for key in sorted(report.notes):
        lines.append(f"  {key}: {report.notes[key]}")
    lines.extend("  " + f for f in report.failures)
    _emit(args, report, "\n".join(lines))
    return CLEAN if report.ok else FOUND


# --------------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gameaxioms",
        description="Exact analysis of finite normal-form games and axiom audits of solution concepts.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("analyze", parents=[common], help="rationality values, equilibria and maximizers")
    p.add_argument("file")
    p.set_defaults(run=cmd_analyze)

    p = sub.add_parser("witness", help="build a witness game for a failed deviation test")
    wsub = p.add_subparsers(dest="kind", required=True, metavar="KIND")
    for kind, helptext in (("nudi", "behavior where some player gains by deviating"),
                           ("pirar", "correlated behavior that is not a correlated equilibrium")):
        w = wsub.add_parser(kind, parents=[common], help=helptext)
        w.add_argument("file")
        w.add_argument("--behavior", required=True, help="'D,D', '1/2,1/2;1/2,1/2' or '1/2@C,C 1/2@D,D'")
        w.add_argument("--player", type=int, help="deviating player (1-based); default: first violation")
        if kind == "pirar":
            w.add_argument("--recommendation", help="recommended action being abandoned")
        w.add_argument("--action", help="action deviated to (label or index)")
        w.add_argument("--write", metavar="PATH", help="also write the transformed game file")
        w.set_defaults(run=cmd_witness)

    p = sub.add_parser("elevate", parents=[common], help="make a pure equilibrium a simultaneous maximizer")
    p.add_argument("file")
    p.add_argument("--profile", required=True)
    p.add_argument("--write", metavar="PATH")
    p.set_defaults(run=cmd_elevate)

    p = sub.add_parser("contradict", parents=[common],
                       help="two equivalent games with different unique strict maximizers")
    p.add_argument("file")
    p.add_argument("--a", required=True, help="first strict pure equilibrium")
    p.add_argument("--b", required=True, help="second strict pure equilibrium")
    p.add_argument("--write", nargs=2, metavar=("PATH_A", "PATH_B"))
    p.set_defaults(run=cmd_contradict)

    p = sub.add_parser("equiv", parents=[common], help="decide strategic equivalence of two games")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(run=cmd_equiv)

    family = argparse.ArgumentParser(add_help=False)
    family.add_argument("--seed", type=int, default=0)
    family.add_argument("--count", type=int, default=100)
    family.add_argument("--players", type=_range, default=(2, 3), metavar="LO:HI")
    family.add_argument("--actions", type=_range, default=(2, 4), metavar="LO:HI")
    family.add_argument("--values", type=_range, default=(-9, 9), metavar="LO:HI")

    p = sub.add_parser("audit", parents=[common, family], help="audit a solution map against an axiom")
    p.add_argument("--map", required=True, help="pne, welfare_max, maximin_play, uniform_correlated, "
                                                "ne_2p, risk_dominant_2x2, cce_welfare or ce_welfare")
    p.add_argument("--axiom", required=True, choices=AXIOMS)
    p.add_argument("--budget", type=int, default=10, help="derived games examined per family game")
    p.set_defaults(run=cmd_audit)

    p = sub.add_parser("verify", parents=[common, family], help="check a proposition on a game family")
    p.add_argument("--prop", required=True, choices=PROPOSITIONS)
    p.add_argument("--samples", type=int, default=20, help="sampled behaviors per kind and game")
    p.add_argument("--budget", type=int, default=5)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(run=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else CLEAN
    try:
        return args.run(args)
    except UsageError as exc:
        print(f"gameaxioms: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())

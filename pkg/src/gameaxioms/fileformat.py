"""Plain-text game files, behavior strings, and JSON encodings.

A game file looks like::

    # prisoner's dilemma
    players: 2
    actions: 2 2
    labels 1: C D
    labels 2: C D
    payoffs 1:
      3 0
      4 1
    payoffs 2:
      3 4
      0 1

Players are numbered from 1 in the file. Each ``payoffs i:`` block lists one
exact rational (``p`` or ``p/q``) per profile in lexicographic order with
the last player's action varying fastest; values may start on the header
line and continue over any number of lines. ``#`` starts a comment.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Sequence

from gameaxioms.errors import GameFormatError
from gameaxioms.game import Behavior, CorrelatedDistribution, Game, MixedProfile, PureProfile, layout

_RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?\Z")
_TOKEN = re.compile(r"\S+")
_HEADER = re.compile(r"(players|actions|labels|payoffs)\b\s*(\d*)\s*:", re.IGNORECASE)
_LABEL_FORBIDDEN = set(",;@#:")

Labels = tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class GameFile:
    game: Game
    labels: Labels

    def label(self, i: int, a: int) -> str:
        return self.labels[i][a]

    def profile_text(self, actions: Sequence[int]) -> str:
        return ",".join(self.labels[i][a] for i, a in enumerate(actions))


def default_labels(shape: Sequence[int]) -> Labels:
    return tuple(tuple(str(a) for a in range(k)) for k in shape)


def _rational(token: str, line: int, column: int) -> Fraction:
    if not _RATIONAL.match(token):
        raise GameFormatError(f"expected a rational 'p' or 'p/q', got {token!r}", line, column)
    num, _, den = token.partition("/")
    if den and int(den) == 0:
        raise GameFormatError(f"zero denominator in {token!r}", line, column)
    return Fraction(int(num), int(den) if den else 1)


def _tokens(text: str, lineno: int, start: int = 0):
    for m in _TOKEN.finditer(text, start):
        yield m.group(), lineno, m.start() + 1


def parse_game_file(text: str) -> GameFile:
    """Parse a game file, keeping any action labels."""
    n: Optional[int] = None
    shape: Optional[tuple[int, ...]] = None
    labels: dict[int, tuple[str, ...]] = {}
    blocks: dict[int, list] = {}
    block_line: dict[int, int] = {}
    current: Optional[list] = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        stripped = body.lstrip()
        if not stripped:
            continue
        indent = len(body) - len(stripped)
        m = _HEADER.match(stripped)
        if m is None:
            if current is None:
                raise GameFormatError(f"unexpected text {stripped.split()[0]!r}", lineno, indent + 1)
            current.extend(_tokens(body, lineno))
            continue
        key, num = m.group(1).lower(), m.group(2)
        rest = m.end() + indent
        column = indent + 1
        current = None
        if key == "players":
            if n is not None:
                raise GameFormatError("duplicate 'players' line", lineno, column)
            if num:
                raise GameFormatError("'players' takes no index", lineno, column)
            toks = list(_tokens(body, lineno, rest))
            if len(toks) != 1 or not toks[0][0].isdigit() or int(toks[0][0]) < 1:
                raise GameFormatError("expected 'players: n' with n >= 1", lineno, column)
            n = int(toks[0][0])
            continue
        if n is None:
            raise GameFormatError("the first line must be 'players: n'", lineno, column)
        if key == "actions":
            if shape is not None:
                raise GameFormatError("duplicate 'actions' line", lineno, column)
            toks = list(_tokens(body, lineno, rest))
            if len(toks) != n:
                raise GameFormatError(f"expected {n} action counts, got {len(toks)}", lineno, column)
            for tok, ln, col in toks:
                if not tok.isdigit() or int(tok) < 1:
                    raise GameFormatError(f"action count must be a positive integer, got {tok!r}", ln, col)
            shape = tuple(int(t[0]) for t in toks)
            continue
        if shape is None:
            raise GameFormatError("'actions' must come before labels and payoffs", lineno, column)
        if not num:
            raise GameFormatError(f"'{key}' needs a player number, e.g. '{key} 1:'", lineno, column)
        player = int(num)
        if not 1 <= player <= n:
            raise GameFormatError(f"player {player} out of range 1..{n}", lineno, column)
        i = player - 1
        if key == "labels":
            if i in labels:
                raise GameFormatError(f"duplicate labels for player {player}", lineno, column)
            toks = list(_tokens(body, lineno, rest))
            if len(toks) != shape[i]:
                raise GameFormatError(
                    f"player {player} has {shape[i]} actions but {len(toks)} labels", lineno, column)
            for tok, ln, col in toks:
                bad = _LABEL_FORBIDDEN.intersection(tok)
                if bad:
                    raise GameFormatError(f"label {tok!r} contains {''.join(sorted(bad))!r}", ln, col)
            names = tuple(t[0] for t in toks)
            if len(set(names)) != len(names):
                raise GameFormatError(f"player {player} has repeated labels", lineno, column)
            labels[i] = names
        else:
            if i in blocks:
                raise GameFormatError(f"duplicate payoffs for player {player}", lineno, column)
            current = blocks[i] = list(_tokens(body, lineno, rest))
            block_line[i] = lineno

    if n is None:
        raise GameFormatError("empty game file: expected 'players: n'", 1, 1)
    if shape is None:
        raise GameFormatError("missing 'actions' line")
    size = math.prod(shape)
    payoffs = []
    for i in range(n):
        if i not in blocks:
            raise GameFormatError(f"missing 'payoffs {i + 1}:' block")
        toks = blocks[i]
        if len(toks) != size:
            raise GameFormatError(
                f"player {i + 1}: expected {size} payoffs, got {len(toks)}", block_line[i], 1)
        payoffs.append(tuple(_rational(*t) for t in toks))
    full = tuple(labels.get(i, tuple(str(a) for a in range(shape[i]))) for i in range(n))
    return GameFile(Game(shape, tuple(payoffs)), full)


def parse_game(text: str) -> Game:
    return parse_game_file(text).game


def read_game_file(path) -> GameFile:
    with open(path, encoding="utf-8") as fh:
        return parse_game_file(fh.read())


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def serialize_game(game: Game, labels: Optional[Sequence[Sequence[str]]] = None) -> str:
    """Canonical text for ``game``; one line per row of the last player's actions."""
    shape = game.action_counts
    lines = [f"players: {game.num_players}", "actions: " + " ".join(map(str, shape))]
    if labels is not None and tuple(map(tuple, labels)) != default_labels(shape):
        for i, names in enumerate(labels):
            lines.append(f"labels {i + 1}: " + " ".join(names))
    width = shape[-1]
    for i, values in enumerate(game.payoffs):
        lines.append(f"payoffs {i + 1}:")
        for start in range(0, len(values), width):
            lines.append("  " + " ".join(format_rational(q) for q in values[start:start + width]))
    return "\n".join(lines) + "\n"


def write_game_file(path, game: Game, labels=None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_game(game, labels))


# --------------------------------------------------------------------------- behaviors


def _action(token: str, i: int, labels: Labels) -> int:
    token = token.strip()
    if token in labels[i]:
        return labels[i].index(token)
    if token.isdigit() and int(token) < len(labels[i]):
        return int(token)
    raise ValueError(f"player {i + 1} has no action {token!r} (actions: {' '.join(labels[i])})")


def parse_profile(text: str, labels: Labels) -> tuple[int, ...]:
    """``"D,C"`` (labels or 0-based indices) to an action tuple."""
    parts = text.split(",")
    if len(parts) != len(labels):
        raise ValueError(f"profile {text!r} names {len(parts)} actions for {len(labels)} players")
    return tuple(_action(p, i, labels) for i, p in enumerate(parts))


def _probability(token: str) -> Fraction:
    token = token.strip()
    if not _RATIONAL.match(token):
        raise ValueError(f"expected a rational probability, got {token!r}")
    num, _, den = token.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in {token!r}")
    return Fraction(int(num), int(den) if den else 1)


def parse_behavior(text: str, shape: Sequence[int], labels: Optional[Labels] = None) -> Behavior:
    """Parse ``"D,D"``, ``"1/2,1/2;1/3,2/3"`` or ``"1/2@C,C 1/2@D,D"``.

    A ``pure:``, ``mixed:`` or ``correlated:`` prefix forces the kind;
    otherwise ``@`` means correlated, ``;`` means mixed, and anything else
    is a pure profile.
    """
    shape = tuple(shape)
    labels = labels if labels is not None else default_labels(shape)
    text = text.strip()
    kind = None
    head, sep, tail = text.partition(":")
    if sep and head.strip() in ("pure", "mixed", "correlated"):
        kind, text = head.strip(), tail.strip()
    if kind is None:
        kind = "correlated" if "@" in text else "mixed" if ";" in text else "pure"
    if kind == "pure":
        return PureProfile(parse_profile(text, labels))
    if kind == "mixed":
        parts = text.split(";")
        if len(parts) != len(shape):
            raise ValueError(f"mixed profile gives {len(parts)} strategies for {len(shape)} players")
        x = MixedProfile(tuple(tuple(_probability(p) for p in part.split(",")) for part in parts))
        x.check_shape(shape)
        return x
    masses: dict = {}
    for item in text.split():
        mass, at, prof = item.partition("@")
        if not at:
            raise ValueError(f"correlated entry {item!r} should look like 'p@a1,a2'")
        key = parse_profile(prof, labels)
        masses[key] = masses.get(key, 0) + _probability(mass)
    return CorrelatedDistribution.from_dict(shape, masses)


def format_behavior(x: Behavior, labels: Optional[Labels] = None) -> str:
    """Inverse of :func:`parse_behavior`."""
    if isinstance(x, PureProfile):
        labels = labels or default_labels([a + 1 for a in x.actions])
        return ",".join(labels[i][a] for i, a in enumerate(x.actions))
    if isinstance(x, MixedProfile):
        body = ";".join(",".join(format_rational(p) for p in s) for s in x.per_player)
        return "mixed:" + body if len(x.per_player) == 1 else body
    labels = labels or default_labels(x.action_counts)
    lay = layout(x.action_counts)
    items = []
    for idx, w in enumerate(x.weights):
        if w:
            a = _unflatten(idx, lay.shape)
            items.append(format_rational(w) + "@" + ",".join(labels[i][b] for i, b in enumerate(a)))
    return " ".join(items)


def _unflatten(idx: int, shape: Sequence[int]) -> tuple[int, ...]:
    out = []
    for k in reversed(shape):
        idx, r = divmod(idx, k)
        out.append(r)
    return tuple(reversed(out))


# --------------------------------------------------------------------------- JSON


def to_jsonable(obj: Any, labels: Optional[Labels] = None) -> Any:
    """Plain JSON data for games, behaviors, certificates and reports.

    Rationals become ``"p/q"`` strings and players are numbered from 1.
    """
    from gameaxioms.harness import AuditVerdict, Counterexample, PropositionReport
    from gameaxioms.transforms import EquivalenceCertificate, Inequality, NotEquivalent, WitnessCertificate

    def conv(o):
        return to_jsonable(o, labels)

    if isinstance(o := obj, Fraction):
        return format_rational(o)
    if isinstance(o, bool) or o is None or isinstance(o, (int, str)):
        return o
    if isinstance(o, Game):
        return {"actions": list(o.action_counts), "payoffs": [[conv(q) for q in t] for t in o.payoffs]}
    if isinstance(o, (PureProfile, MixedProfile, CorrelatedDistribution)):
        kind = {PureProfile: "pure", MixedProfile: "mixed", CorrelatedDistribution: "correlated"}[type(o)]
        return {"kind": kind, "spec": format_behavior(o, labels)}
    if isinstance(o, Inequality):
        return {"description": o.description, "lhs": conv(o.lhs), "relation": o.relation,
                "rhs": conv(o.rhs), "holds": o.holds()}
    if isinstance(o, EquivalenceCertificate):
        return {"equivalent": True, "transfers": [
            {"amount": conv(c), "player": i + 1, "opponents": list(b)}
            for c, i, b in o.transfers()
        ]}
    if isinstance(o, NotEquivalent):
        return {"equivalent": False, "player": o.player + 1, "opponents": list(o.others),
                "action": o.action, "other_action": o.other_action,
                "difference": conv(o.difference), "other_difference": conv(o.other_difference)}
    if isinstance(o, WitnessCertificate):
        params = {}
        for k, v in o.parameters.items():
            params[k] = v + 1 if k == "i" else conv(v)
        return {
            "kind": o.kind,
            "parameters": params,
            "original": conv(o.original),
            "transformed": conv(o.transformed),
            "equivalence": conv(o.equivalence),
            "inequalities": [conv(q) for q in o.checked_inequalities],
            "verified": o.verify(),
        }
    if isinstance(o, Counterexample):
        return {"game_index": o.game_index, "game": conv(o.game), "examined": conv(o.examined),
                "behavior": conv(o.behavior), "detail": o.detail,
                "certificate": conv(o.certificate)}
    if isinstance(o, AuditVerdict):
        return {"map": o.map_name, "axiom": o.axiom, "status": o.status,
                "games_checked": o.games_checked, "counterexample": conv(o.counterexample)}
    if isinstance(o, PropositionReport):
        return o.to_dict()
    if isinstance(o, dict):
        return {str(k): conv(v) for k, v in o.items()}
    if isinstance(o, (list, tuple, frozenset, set)):
        items = [conv(v) for v in o]
        return sorted(items, key=json.dumps) if isinstance(o, (set, frozenset)) else items
    raise TypeError(f"cannot encode {type(o).__name__} as JSON")


def dumps(obj: Any, labels: Optional[Labels] = None) -> str:
    """Deterministic JSON text (sorted keys, two-space indent)."""
    return json.dumps(to_jsonable(obj, labels), sort_keys=True, indent=2) + "\n"

"""Text and JSON serialization of patterns and collapse certificates.

Line format::

    PATTERN := INT ":" GROUP ("|" GROUP)*
    GROUP   := INT+

for example ``8: 0 2 6 | 0 1 3 4 5 7``.  The JSON form is
``{"period": 8, "components": [[0, 2, 6], [0, 1, 3, 4, 5, 7]]}``.
"""
from __future__ import annotations

import json
import re
from typing import Any

from .errors import PatternSyntaxError
from .pattern import Pattern, validate

_INT = re.compile(r"^-?\d+$")


def _int(token: str) -> int:
    if not _INT.match(token):
        raise PatternSyntaxError(f"expected an integer, got {token!r}")
    return int(token)


def parse_line(text: str) -> Pattern:
    head, sep, body = text.strip().partition(":")
    if not sep:
        raise PatternSyntaxError(f"missing ':' after the period in {text.strip()!r}")
    period = _int(head.strip())
    groups = []
    for raw in body.split("|"):
        tokens = raw.split()
        if not tokens:
            raise PatternSyntaxError(f"empty group in {text.strip()!r}")
        groups.append([_int(t) for t in tokens])
    return validate(period, groups)


def format_line(P: Pattern) -> str:
    return str(P)


def pattern_to_dict(P: Pattern) -> dict[str, Any]:
    return {"period": P.period, "components": [list(c) for c in P.components]}


def pattern_from_dict(data: Any) -> Pattern:
    if not isinstance(data, dict) or "period" not in data or "components" not in data:
        raise PatternSyntaxError("JSON pattern needs 'period' and 'components'")
    period, comps = data["period"], data["components"]
    if not isinstance(period, int) or isinstance(period, bool):
        raise PatternSyntaxError(f"period must be an integer, got {period!r}")
    if not isinstance(comps, list) or not all(
        isinstance(c, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in c)
        for c in comps
    ):
        raise PatternSyntaxError("components must be a list of integer lists")
    return validate(period, comps)


def parse_json(text: str) -> Pattern:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PatternSyntaxError(f"invalid JSON: {exc.msg}") from None
    return pattern_from_dict(data)


def format_json(P: Pattern) -> str:
    return json.dumps(pattern_to_dict(P), sort_keys=True)


def parse_pattern(text: str) -> Pattern:
    """Parse either representation, picking JSON when the text starts with ``{``."""
    text = text.strip()
    if text.startswith("{"):
        return parse_json(text)
    return parse_line(text)


def parse_many(text: str) -> list[Pattern]:
    """One pattern per non-blank line; ``#`` starts a comment."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_pattern(line))
    return out

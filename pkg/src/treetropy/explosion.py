"""2-explosions: doubling the period by blowing every point up into a block.

Point ``x`` of a period-``m`` pattern becomes the block ``{x, x+m}`` of the
period-``2m`` pattern.  Every block is a component of its own, and each old
component ``D`` is lifted by picking one copy (low ``x`` or high ``x+m``) of
each of its points.  Which copy a component takes at a point is what the lift
policy decides.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence, Union

from .collapse import combinatorial_collapse, maximal_trivial_structure
from .errors import CollapseInvalid, PolicyMismatch, VerificationFailed
from .pattern import Component, Pattern, StarKind, endpoints, star_class, trivial_pattern

LOW, HIGH = 0, 1
MAX_FALLBACK_CANDIDATES = 1 << 16


@dataclass(frozen=True)
class NonExpanding:
    """Split the lifts at every point of valence >= 2 across both copies.

    The lexicographically largest component through the point takes the high
    copy, the rest stay low, so no new endpoint appears.
    """


@dataclass(frozen=True)
class EE2:
    """Expanding explosion at ``pivot`` of a simplicial pattern.

    Every lift through the pivot takes the low copy, so the low copy gains one
    valence and the high copy becomes a new endpoint.
    """

    pivot: int = 0


@dataclass(frozen=True)
class Custom:
    """Explicit lift table: ``(component, point) -> LOW | HIGH``; missing entries are LOW."""

    table: Mapping[tuple[Component, int], int] = field(default_factory=dict)

    def __hash__(self):
        return hash(tuple(sorted(self.table.items())))


LiftPolicy = Union[NonExpanding, EE2, Custom]


def base_pattern(p0: int) -> Pattern:
    """Trivial pattern on ``0..p0-1``."""
    if p0 < 1:
        raise ValueError("p0 must be positive")
    return trivial_pattern(p0)


def _lift_table(P: Pattern, policy: LiftPolicy) -> dict[tuple[Component, int], int]:
    comps = P.components
    table: dict[tuple[Component, int], int] = {}
    if isinstance(policy, Custom):
        for c in comps:
            for x in c:
                table[c, x] = policy.table.get((c, x), LOW)
        return table
    pivot = policy.pivot if isinstance(policy, EE2) else None
    for x, member in enumerate(P.memberships):
        through = sorted(comps[j] for j in member)
        for c in through:
            table[c, x] = LOW
        if x != pivot and len(through) >= 2:
            table[through[-1], x] = HIGH
    return table


def _check_policy(P: Pattern, policy: LiftPolicy) -> None:
    if P.period < 2:
        raise PolicyMismatch("cannot double a period-1 pattern")
    if isinstance(policy, EE2):
        if P.is_trivial:
            raise PolicyMismatch("EE2 needs a nontrivial simplicial pattern")
        if any(len(c) != 2 for c in P.components):
            raise PolicyMismatch(f"EE2 needs a simplicial pattern, got {P}")
        if not 0 <= policy.pivot < P.period:
            raise PolicyMismatch(f"pivot {policy.pivot} out of range")
        vals = [len(m) for m in P.memberships]
        top = max(vals)
        if vals[policy.pivot] != top:
            raise PolicyMismatch(f"pivot {policy.pivot} does not have maximum valence {top}")
        if top >= 3 and vals.count(top) > 1:
            raise PolicyMismatch(f"maximum valence {top} is attained more than once")


def _assemble(P: Pattern, table: Mapping[tuple[Component, int], int]) -> Pattern:
    m = P.period
    comps = [(j, j + m) for j in range(m)]
    for c in P.components:
        comps.append(tuple(sorted(x + m * table[c, x] for x in c)))
    # always a hypertree: sizes add up to 2m + (m + |comps| - 1) and the
    # incidence graph folds onto that of P
    return Pattern._trusted(2 * m, tuple(sorted(comps)))


def _expected_endpoints(P: Pattern, policy: LiftPolicy) -> Optional[int]:
    if isinstance(policy, NonExpanding):
        return len(endpoints(P))
    if isinstance(policy, EE2):
        return len(endpoints(P)) + 1
    return None


def _verified(P: Pattern, Q: Pattern, policy: LiftPolicy) -> bool:
    S = maximal_trivial_structure(Q)
    if S is None or S.p != P.period:
        return False
    try:
        if combinatorial_collapse(Q, S) != P:
            return False
    except CollapseInvalid:
        return False
    want = _expected_endpoints(P, policy)
    if want is not None and len(endpoints(Q)) != want:
        return False
    if isinstance(policy, EE2) and star_class(Q).kind is not StarKind.SIMPLICIAL:
        return False
    if isinstance(policy, NonExpanding) and star_class(P).is_star:
        return star_class(Q).is_star
    return True


def _fallback(P: Pattern, policy: LiftPolicy) -> Optional[Pattern]:
    # search lift tables that respect the policy's shape at every point
    pivot = policy.pivot if isinstance(policy, EE2) else None
    slots: list[list[dict[tuple[Component, int], int]]] = []
    for x, member in enumerate(P.memberships):
        through = sorted(P.components[j] for j in member)
        if x == pivot or len(through) == 1:
            slots.append([{(c, x): LOW for c in through}])
            continue
        options = []
        for high in range(len(through)):
            options.append({(c, x): HIGH if i == high else LOW for i, c in enumerate(through)})
        slots.append(options)
    for count, choice in enumerate(itertools.product(*slots)):
        if count >= MAX_FALLBACK_CANDIDATES:
            break
        table: dict[tuple[Component, int], int] = {}
        for part in choice:
            table.update(part)
        Q = _assemble(P, table)
        if _verified(P, Q, policy):
            return Q
    return None


def double(P: Pattern, policy: LiftPolicy) -> Pattern:
    """2-explosion of ``P`` under ``policy``, checked by collapsing it back."""
    _check_policy(P, policy)
    Q = _assemble(P, _lift_table(P, policy))
    if _verified(P, Q, policy):
        return Q
    if not isinstance(policy, Custom):
        Q = _fallback(P, policy)
        if Q is not None:
            return Q
    raise VerificationFailed(f"no {type(policy).__name__} doubling of {P} collapses back onto it")


def explode_sequence(p0: int, policies: Sequence[LiftPolicy]) -> Pattern:
    P = base_pattern(p0)
    for policy in policies:
        P = double(P, policy)
    return P


def parse_policy_script(script: str) -> tuple[int, list[LiftPolicy]]:
    """Parse ``"base=3 ne ne ee2@0"`` into ``(3, [NonExpanding(), NonExpanding(), EE2(0)])``."""
    tokens = script.split()
    if not tokens or not tokens[0].startswith("base="):
        raise ValueError("policy script must start with base=<p0>")
    try:
        p0 = int(tokens[0][5:])
    except ValueError:
        raise ValueError(f"bad base token {tokens[0]!r}") from None
    policies: list[LiftPolicy] = []
    for tok in tokens[1:]:
        low = tok.lower()
        if low == "ne":
            policies.append(NonExpanding())
        elif low == "ee2" or low.startswith("ee2@"):
            pivot = low[4:] if "@" in low else "0"
            if not pivot.isdigit():
                raise ValueError(f"bad pivot in {tok!r}")
            policies.append(EE2(int(pivot)))
        else:
            raise ValueError(f"unknown policy token {tok!r}")
    return p0, policies

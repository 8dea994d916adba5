"""Trivial block structures, combinatorial collapse and strong collapsibility.

Under the cyclic shift the only partitions whose parts are permuted cyclically
are the residue classes modulo a divisor ``p`` of ``n`` (block ``i`` is
``{i, i+p, ...}``; block ``0`` holds point ``0``).  So a block structure is
determined by ``p`` alone and the search runs over divisors.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import CollapseInvalid, PatternError
from .pattern import Pattern, star_class, validate


def hull_points(P: Pattern, X: Iterable[int]) -> frozenset[int]:
    """Marked points in the convex hull of ``X``."""
    xs = sorted(set(X))
    if not xs:
        raise ValueError("hull of an empty set")
    tree = P.tree
    out = {xs[0]}
    for x in xs[1:]:
        out.update(tree.point_path(xs[0], x))
    return frozenset(out)


@dataclass(frozen=True)
class BlockStructure:
    period: int
    p: int
    blocks: tuple[tuple[int, ...], ...]
    trivial: bool
    maximal: bool

    @property
    def cardinality(self) -> int:
        return self.period // self.p


def _residue_blocks(n: int, p: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(range(i, n, p)) for i in range(p))


def _classes_trivial(n: int, comps: Iterable[tuple[int, ...]], p: int) -> bool:
    # each residue class must sit inside one component; point i of the class
    # lies in a component containing i+p, i+2p, ... iff it contains i+p too
    card = n // p
    owners: dict[int, int] = {}
    for idx, c in enumerate(comps):
        residues: dict[int, int] = {}
        for x in c:
            residues[x % p] = residues.get(x % p, 0) + 1
        for r, count in residues.items():
            if count == card:
                owners[r] = idx
    return len(owners) == p


def trivial_block_divisors(P: Pattern) -> list[int]:
    n = P.period
    found = [p for p in range(2, n) if n % p == 0 and _classes_trivial(n, P.components, p)]
    if __debug__:
        for p in found:
            assert is_separated(P, p), (str(P), p)
    return found


def is_separated(P: Pattern, p: int) -> bool:
    """Hull of every residue block avoids the points of the other blocks."""
    for block in _residue_blocks(P.period, p):
        if any(x % p != block[0] for x in hull_points(P, block)):
            return False
    return True


def block_structure(P: Pattern, p: int) -> BlockStructure:
    n = P.period
    if not (2 <= p < n and n % p == 0):
        raise ValueError(f"{p} is not a proper divisor of {n} with p >= 2")
    divisors = trivial_block_divisors(P)
    trivial = p in divisors
    return BlockStructure(n, p, _residue_blocks(n, p), trivial, trivial and p == divisors[0])


def maximal_trivial_structure(P: Pattern) -> Optional[BlockStructure]:
    """Trivial structure with the largest blocks (smallest ``p``), if any."""
    divisors = trivial_block_divisors(P)
    if not divisors:
        return None
    p = divisors[0]
    return BlockStructure(P.period, p, _residue_blocks(P.period, p), True, True)


def combinatorial_collapse(P: Pattern, S: Optional[BlockStructure] = None) -> Pattern:
    """Shrink every block of the maximal trivial structure to one point.

    Each component ``D`` contributes the set of block indices it meets; the
    inclusion-maximal sets with at least two indices are the components of the
    collapse.
    """
    if S is None:
        S = maximal_trivial_structure(P)
        if S is None:
            raise CollapseInvalid(f"{P} has no trivial block structure")
    if not S.trivial or not S.maximal:
        raise CollapseInvalid(f"structure p={S.p} is not the maximal trivial structure of {P}")
    p = S.p
    images = {frozenset(x % p for x in D) for D in P.components}
    images = {s for s in images if len(s) >= 2}
    kept = [s for s in images if not any(s < t for t in images)]
    try:
        C = validate(p, kept)
    except PatternError as exc:
        raise CollapseInvalid(f"collapse of {P} is not a pattern: {exc}") from exc
    covered_out = {(i, j) for c in C.components for i in c for j in c if i < j}
    covered_in = {(i, j) for s in images for i in s for j in s if i < j}
    if covered_out != covered_in:
        raise CollapseInvalid(f"collapse of {P} breaks the block-pair correspondence")
    return C


@dataclass(frozen=True)
class CollapseCertificate:
    """Chain of collapses ``patterns[0] <- ... <- patterns[-1]``.

    ``patterns[-1]`` is the certified pattern and ``patterns[0]`` is trivial;
    ``factors[0]`` is the period of ``patterns[0]`` and ``factors[i]`` the
    block cardinality used to collapse ``patterns[i]``.
    """

    patterns: tuple[Pattern, ...]
    factors: tuple[int, ...]
    valences: Optional[tuple[int, ...]] = None

    @property
    def depth(self) -> int:
        return len(self.patterns) - 1

    def to_dict(self) -> dict:
        from .formats import pattern_to_dict

        out = {"factors": list(self.factors),
               "patterns": [pattern_to_dict(P) for P in self.patterns]}
        if self.valences is not None:
            out["valences"] = list(self.valences)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "CollapseCertificate":
        from .formats import pattern_from_dict

        valences = data.get("valences")
        return cls(tuple(pattern_from_dict(d) for d in data["patterns"]),
                   tuple(data["factors"]),
                   tuple(valences) if valences is not None else None)


def is_strongly_collapsible(P: Pattern) -> Optional[CollapseCertificate]:
    """Certificate of zero entropy, or ``None`` when the entropy is positive."""
    chain = [P]
    factors = []
    current = P
    while not current.is_trivial:
        S = maximal_trivial_structure(current)
        if S is None:
            return None
        factors.append(S.cardinality)
        current = combinatorial_collapse(current, S)
        chain.append(current)
    factors.append(current.period)
    chain.reverse()
    factors.reverse()
    classes = [star_class(Q) for Q in chain]
    valences = tuple(c.k for c in classes) if all(c.is_star for c in classes) else None
    return CollapseCertificate(tuple(chain), tuple(factors), valences)


def collapse_failure(P: Pattern) -> Optional[Pattern]:
    """The first pattern in the collapse chain of ``P`` with no trivial structure."""
    current = P
    while not current.is_trivial:
        S = maximal_trivial_structure(current)
        if S is None:
            return current
        current = combinatorial_collapse(current, S)
    return None


def audit_certificate(cert: CollapseCertificate) -> None:
    """Replay a certificate, raising ``AssertionError`` on the first mismatch."""
    pats, factors = cert.patterns, cert.factors
    assert len(pats) == len(factors) >= 1, "length mismatch"
    assert pats[0].is_trivial, "first pattern is not trivial"
    assert pats[0].period == factors[0], "first factor is not the base period"
    product = factors[0]
    for i in range(1, len(pats)):
        Q = pats[i]
        assert not Q.is_trivial, f"level {i} is trivial"
        product *= factors[i]
        assert Q.period == product, f"level {i} has period {Q.period}, expected {product}"
        S = maximal_trivial_structure(Q)
        assert S is not None and S.cardinality == factors[i], f"level {i} structure mismatch"
        assert combinatorial_collapse(Q, S) == pats[i - 1], f"level {i} does not collapse to level {i - 1}"

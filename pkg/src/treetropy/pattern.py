"""Periodic tree patterns.

A pattern of period ``n`` lives on the time-labelled points ``0..n-1`` with
dynamics ``i -> i+1 mod n``.  Its spatial data is the family of discrete
components: maximal sets of pairwise consecutive points.  A family is a valid
pattern exactly when it is a hypertree (the point/component incidence graph is
a tree).

Every geometric question (intervals, convex hulls, coverings) is answered on
the incidence tree, which has one node per point and one hub node per
component.  Any tree realizing the pattern gives the same answers.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from .errors import (
    Cyclic,
    EmptyComponent,
    NonMaximal,
    NotConnected,
    OutOfRange,
    OverlapTooLarge,
    SingletonComponent,
)

Component = tuple[int, ...]


def _normalize(components: Iterable[Iterable[int]]) -> tuple[Component, ...]:
    return tuple(sorted({tuple(sorted(set(c))) for c in components}))


def _check(period: int, comps: tuple[Component, ...]) -> None:
    if not isinstance(period, int) or period < 1:
        raise OutOfRange(f"period must be a positive integer, got {period!r}")
    for c in comps:
        for x in c:
            if not 0 <= x < period:
                raise OutOfRange(f"point {x} outside 0..{period - 1}")
        if not c:
            raise EmptyComponent("empty component")
        if len(c) == 1 and period > 1:
            raise SingletonComponent(f"component {list(c)} has a single point")
    sets = [frozenset(c) for c in comps]
    for i, a in enumerate(sets):
        for b in sets[i + 1:]:
            if a <= b or b <= a:
                small, big = (a, b) if len(a) <= len(b) else (b, a)
                raise NonMaximal(f"component {sorted(small)} is contained in {sorted(big)}")
            if len(a & b) >= 2:
                raise OverlapTooLarge(f"components {sorted(a)} and {sorted(b)} share {sorted(a & b)}")
    covered = set().union(*sets) if sets else set()
    missing = sorted(set(range(period)) - covered)
    if missing:
        raise NotConnected(f"points {missing} belong to no component")
    # connectivity of the incidence graph via union-find over points
    root = list(range(period))

    def find(x: int) -> int:
        while root[x] != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    for c in comps:
        for x in c[1:]:
            root[find(x)] = find(c[0])
    if len({find(x) for x in range(period)}) > 1:
        raise NotConnected("incidence graph is disconnected")
    if sum(len(c) for c in comps) != period + len(comps) - 1:
        raise Cyclic("incidence graph contains a cycle")


@dataclass(frozen=True)
class Pattern:
    """A validated periodic pattern.

    ``components`` is stored canonically: each component sorted ascending, the
    list sorted lexicographically.  Equality is equality of this stored form;
    use :func:`equivalent` for equality up to rotation of labels.
    """

    period: int
    components: tuple[Component, ...]

    def __post_init__(self):
        comps = _normalize(self.components)
        _check(self.period, comps)
        object.__setattr__(self, "components", comps)

    @classmethod
    def _trusted(cls, period: int, components: tuple[Component, ...]) -> "Pattern":
        # hot-path constructor: components must already be normalized and valid
        obj = object.__new__(cls)
        object.__setattr__(obj, "period", period)
        object.__setattr__(obj, "components", components)
        return obj

    @property
    def is_trivial(self) -> bool:
        return len(self.components) == 1

    @cached_property
    def tree(self) -> "IncidenceTree":
        return IncidenceTree.build(self)

    @cached_property
    def memberships(self) -> tuple[tuple[int, ...], ...]:
        """For every point, the indices of the components containing it."""
        out: list[list[int]] = [[] for _ in range(self.period)]
        for idx, c in enumerate(self.components):
            for x in c:
                out[x].append(idx)
        return tuple(tuple(m) for m in out)

    def __str__(self) -> str:
        return f"{self.period}: " + " | ".join(" ".join(map(str, c)) for c in self.components)


def validate(period: int, raw_components: Iterable[Iterable[int]]) -> Pattern:
    """Build a :class:`Pattern`, raising a :class:`PatternError` subclass if invalid."""
    return Pattern(period, tuple(tuple(c) for c in raw_components))


def trivial_pattern(n: int) -> Pattern:
    return Pattern._trusted(n, (tuple(range(n)),))


def _rotated(n: int, comps: tuple[Component, ...], s: int) -> tuple[Component, ...]:
    return tuple(sorted(tuple(sorted((x + s) % n for x in c)) for c in comps))


def rotate(P: Pattern, s: int) -> Pattern:
    """Relabel every point ``x`` as ``x + s mod n``."""
    return Pattern._trusted(P.period, _rotated(P.period, P.components, s))


def canonical_form(P: Pattern) -> Pattern:
    """Lexicographically least stored form over all rotations."""
    n = P.period
    best = min(_rotated(n, P.components, s) for s in range(n))
    return Pattern._trusted(n, best)


def is_canonical(P: Pattern) -> bool:
    n, comps = P.period, P.components
    return all(comps <= _rotated(n, comps, s) for s in range(1, n))


def equivalent(P: Pattern, Q: Pattern) -> bool:
    return P.period == Q.period and canonical_form(P) == canonical_form(Q)


@dataclass(frozen=True, eq=False)
class IncidenceTree:
    """Bipartite point/hub tree.

    Nodes ``0..n-1`` are points; node ``n + j`` is the hub of component ``j``
    (components in the pattern's stored order).  ``parent`` and ``depth`` come
    from a BFS rooted at point 0.
    """

    n: int
    hubs: tuple[Component, ...]
    adjacency: tuple[tuple[int, ...], ...]
    parent: tuple[int, ...]
    depth: tuple[int, ...]

    @classmethod
    def build(cls, P: Pattern) -> "IncidenceTree":
        n = P.period
        size = n + len(P.components)
        adj: list[list[int]] = [[] for _ in range(size)]
        for j, c in enumerate(P.components):
            hub = n + j
            for x in c:
                adj[x].append(hub)
                adj[hub].append(x)
        parent = [-1] * size
        depth = [-1] * size
        depth[0] = 0
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if depth[v] < 0:
                    depth[v] = depth[u] + 1
                    parent[v] = u
                    queue.append(v)
        return cls(n, P.components, tuple(map(tuple, adj)), tuple(parent), tuple(depth))

    @property
    def num_nodes(self) -> int:
        return len(self.adjacency)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, nbrs in enumerate(self.adjacency) for v in nbrs if u < v]

    def is_hub(self, node: int) -> bool:
        return node >= self.n

    def node_path(self, a: int, b: int) -> list[int]:
        """All nodes (points and hubs) on the path from ``a`` to ``b``."""
        left, right = [a], [b]
        depth, parent = self.depth, self.parent
        while depth[a] > depth[b]:
            a = parent[a]
            left.append(a)
        while depth[b] > depth[a]:
            b = parent[b]
            right.append(b)
        while a != b:
            a, b = parent[a], parent[b]
            left.append(a)
            right.append(b)
        right.pop()
        return left + right[::-1]

    def point_path(self, a: int, b: int) -> list[int]:
        n = self.n
        return [v for v in self.node_path(a, b) if v < n]


def incidence_tree(P: Pattern) -> IncidenceTree:
    return P.tree


def tree_path(P: Pattern, a: int, b: int) -> list[int]:
    """Marked points on the interval ``[a, b]`` in order from ``a`` to ``b``."""
    return P.tree.point_path(a % P.period, b % P.period)


def valence(P: Pattern, i: int) -> int:
    """Number of components containing point ``i``."""
    return len(P.memberships[i])


def endpoints(P: Pattern) -> frozenset[int]:
    return frozenset(x for x, m in enumerate(P.memberships) if len(m) == 1)


def neighbors(P: Pattern, i: int) -> list[int]:
    """Points sharing a component with ``i``."""
    return sorted({y for j in P.memberships[i] for y in P.components[j] if y != i})


class StarKind(enum.Enum):
    TRIVIAL = "TrivialStar"
    INTERVAL = "IntervalPattern"
    SIMPLICIAL = "SimplicialStar"
    NON_SIMPLICIAL = "NonSimplicialStar"
    NOT_STAR = "NotStar"


@dataclass(frozen=True)
class StarClass:
    kind: StarKind
    k: Optional[int] = None

    @property
    def is_star(self) -> bool:
        return self.kind is not StarKind.NOT_STAR

    def __str__(self) -> str:
        if self.kind in (StarKind.INTERVAL, StarKind.NOT_STAR):
            return self.kind.value
        return f"{self.kind.value}({self.k})"


def star_class(P: Pattern) -> StarClass:
    """Classify ``P`` by the shape its points can take on a star.

    The returned ``k`` is the number of endpoints, which is also the number of
    branches of the star (2 for interval patterns).
    """
    ends = len(endpoints(P))
    if P.is_trivial:
        return StarClass(StarKind.TRIVIAL, P.period)
    sizes = [len(c) for c in P.components]
    vals = [len(m) for m in P.memberships]
    big = [s for s in sizes if s > 2]
    if not big:
        high = [v for v in vals if v > 2]
        if not high:
            return StarClass(StarKind.INTERVAL, ends)
        if len(high) == 1:
            return StarClass(StarKind.SIMPLICIAL, ends)
        return StarClass(StarKind.NOT_STAR)
    if len(big) == 1 and max(vals) <= 2:
        return StarClass(StarKind.NON_SIMPLICIAL, ends)
    return StarClass(StarKind.NOT_STAR)

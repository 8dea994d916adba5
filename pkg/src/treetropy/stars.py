"""Zero-entropy periodic orbits on k-stars.

A k-star admits a zero-entropy map with a period-n orbit meeting every branch
iff ``n = k * 2**q`` or ``n = 2**q`` with ``q >= k - 1``.  The constructors
here produce a certified pattern for every such pair.
"""
from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass
from typing import Optional, Union

from .collapse import CollapseCertificate, is_strongly_collapsible
from .errors import BadRange, NotRepresentable, PivotNotFound, VerificationFailed
from .explosion import EE2, NonExpanding, base_pattern, double
from .paths import spectral_radius, strongly_connected_components
from .pattern import Pattern, StarClass, StarKind, neighbors, star_class, trivial_pattern, validate

P2 = validate(4, [(0, 2), (0, 1), (1, 3)])


def _log2_exact(n: int) -> Optional[int]:
    if n >= 1 and n & (n - 1) == 0:
        return n.bit_length() - 1
    return None


def zero_possible(n: int, k: int) -> bool:
    if k < 3 or n < k:
        raise BadRange(f"need n >= k >= 3, got n={n}, k={k}")
    if n % k == 0 and _log2_exact(n // k) is not None:
        return True
    q = _log2_exact(n)
    return q is not None and q >= k - 1


def zero_possible_relaxed(n: int, k: int) -> bool:
    """Same question without requiring the orbit to reach every branch."""
    if n < 1 or k < 3:
        raise BadRange(f"need n >= 1 and k >= 3, got n={n}, k={k}")
    odd = n
    while odd % 2 == 0:
        odd //= 2
    return odd <= k


class CaseKind(enum.Enum):
    ROTATION_DOUBLING = "RotationDoubling"
    SIMPLICIAL_CHAIN = "SimplicialChain"
    CENTRAL_SPLIT = "CentralSplit"


@dataclass(frozen=True)
class StarZeroCase:
    kind: CaseKind
    n: int
    k: int
    q: Optional[int] = None


def star_zero_cases(n: int, k: int) -> list[StarZeroCase]:
    """Every construction route available for ``(n, k)``, in dispatch order."""
    cases = []
    if k >= 3 and n == 1 << (k - 1):
        cases.append(StarZeroCase(CaseKind.CENTRAL_SPLIT, n, k, k - 1))
    if n % k == 0 and _log2_exact(n // k) is not None:
        cases.append(StarZeroCase(CaseKind.ROTATION_DOUBLING, n, k, _log2_exact(n // k)))
    q = _log2_exact(n)
    if q is not None and q >= k:
        cases.append(StarZeroCase(CaseKind.SIMPLICIAL_CHAIN, n, k, q))
    return cases


def _bit_reverse(i: int, bits: int) -> int:
    out = 0
    for _ in range(bits):
        out = (out << 1) | (i & 1)
        i >>= 1
    return out


def _certify(P: Pattern, kind: Optional[StarKind], k: int) -> CollapseCertificate:
    cls = star_class(P)
    if not cls.is_star or cls.k != k or (kind is not None and cls.kind is not kind):
        raise VerificationFailed(f"{P} is {cls}, expected a {k}-star")
    cert = is_strongly_collapsible(P)
    if cert is None:
        raise VerificationFailed(f"{P} is not strongly collapsible")
    return cert


def bitrev_pattern(k: int, q: int) -> Pattern:
    """Period ``k * 2**q`` star: ``q`` non-expanding doublings of the ``k``-point rotation.

    Branch ``b`` carries the points ``b + k*rev(i)`` in chain order, where
    ``rev`` reverses ``q``-bit indices.
    """
    if k < 3 or q < 0:
        raise BadRange(f"need k >= 3 and q >= 0, got k={k}, q={q}")
    n = k << q
    comps = [tuple(range(k))]
    order = [_bit_reverse(i, q) for i in range(1 << q)]
    for b in range(k):
        for r, s in zip(order, order[1:]):
            comps.append((b + k * r, b + k * s))
    P = validate(n, comps)
    _certify(P, StarKind.TRIVIAL if q == 0 else StarKind.NON_SIMPLICIAL, k)
    return P


def ee2_chain(k: int) -> Pattern:
    """Period ``2**k`` simplicial pattern whose point 0 has valence ``k``."""
    if k < 2:
        raise BadRange(f"need k >= 2, got {k}")
    P = P2
    for _ in range(k - 2):
        P = double(P, EE2(0))
    _certify(P, StarKind.INTERVAL if k == 2 else StarKind.SIMPLICIAL, k)
    return P


def central_split(P: Pattern, pivot: int = 0) -> Pattern:
    """Fuse the two-point components through ``pivot`` into one branching component."""
    vals = [len(m) for m in P.memberships]
    through = [P.components[j] for j in P.memberships[pivot]] if 0 <= pivot < P.period else []
    if (not through or vals[pivot] != max(vals) or vals[pivot] < 2
            or any(len(c) != 2 for c in through)):
        raise PivotNotFound(f"point {pivot} is not a simplicial maximum-valence pivot of {P}")
    rest = [c for c in P.components if pivot not in c]
    fused = tuple([pivot] + neighbors(P, pivot))
    Q = validate(P.period, rest + [fused])
    _certify(Q, StarKind.NON_SIMPLICIAL, vals[pivot] + 1)
    return Q


def star_zero_pattern(n: int, k: int, kind: Optional[CaseKind] = None) -> Pattern:
    """A certified zero-entropy ``k``-star pattern of period ``n``.

    ``k = 2`` yields interval patterns (periods that are powers of 2).  With
    ``kind`` unset the first applicable route of :func:`star_zero_cases` wins.
    """
    if k == 2:
        q = _log2_exact(n)
        if q is None or q < 1:
            raise NotRepresentable(f"({n},2): interval zero-entropy periods are powers of 2")
        P = base_pattern(2) if q == 1 else P2
        for _ in range(max(0, q - 2)):
            P = double(P, NonExpanding())
        return P
    if k < 2 or n < k:
        raise BadRange(f"need n >= k >= 2, got n={n}, k={k}")
    cases = star_zero_cases(n, k)
    if kind is not None:
        cases = [c for c in cases if c.kind is kind]
    if not cases:
        raise NotRepresentable(f"({n},{k}) is excluded: no zero-entropy {k}-star pattern has period {n}")
    case = cases[0]
    if case.kind is CaseKind.CENTRAL_SPLIT:
        return central_split(ee2_chain(k - 1))
    if case.kind is CaseKind.ROTATION_DOUBLING:
        return bitrev_pattern(k, case.q)
    P = ee2_chain(k)
    for _ in range(case.q - k):
        P = double(P, NonExpanding())
    _certify(P, StarKind.SIMPLICIAL, k)
    return P


def expected_star_class(n: int, k: int) -> StarClass:
    """Star class that :func:`star_zero_pattern` returns for ``(n, k)``."""
    if k == 2:
        return StarClass(StarKind.TRIVIAL if n == 2 else StarKind.INTERVAL, 2)
    case = star_zero_cases(n, k)[0]
    if case.kind is CaseKind.SIMPLICIAL_CHAIN:
        return StarClass(StarKind.SIMPLICIAL, k)
    if case.kind is CaseKind.ROTATION_DOUBLING and case.q == 0:
        return StarClass(StarKind.TRIVIAL, k)
    return StarClass(StarKind.NON_SIMPLICIAL, k)


def relaxed_zero_pattern(n: int, k: int) -> tuple[int, Pattern]:
    """A zero-entropy pattern on at most ``k`` branches, with the branch count used.

    Prefers the largest usable branch count; the orbit need not reach every
    branch of the ``k``-star.
    """
    if not zero_possible_relaxed(n, k):
        raise NotRepresentable(f"({n},{k}) is excluded even when branches may stay empty")
    if n <= 2:
        return n, trivial_pattern(n)
    for ell in range(min(k, n), 1, -1):
        if ell == 2 or zero_possible(n, ell):
            try:
                return ell, star_zero_pattern(n, ell)
            except NotRepresentable:
                continue
    raise VerificationFailed(f"no construction found for ({n},{k})")


# --- maps on the star itself ------------------------------------------------
#
# A star pattern can have zero entropy as a pattern while every map of the
# k-star carrying it has positive entropy (the zero-entropy models live on
# other trees).  The (n, k) question is about maps of the star, so it needs
# the star's own Markov maps: orbit points plus the centre as vertices,
# monotone on every edge, with the centre sent to an orbit point or fixed.


@dataclass(frozen=True, eq=False)
class StarTree:
    """The k-star carrying a star pattern.

    Nodes ``0..n-1`` are orbit points; when the centre is not an orbit point
    it is node ``n``.  ``center`` is the centre's node id.
    """

    n: int
    center: int
    edges: tuple[tuple[int, int], ...]
    parent: tuple[int, ...]
    depth: tuple[int, ...]

    def path(self, u: int, v: int) -> list[int]:
        left, right = [u], [v]
        while self.depth[u] > self.depth[v]:
            u = self.parent[u]
            left.append(u)
        while self.depth[v] > self.depth[u]:
            v = self.parent[v]
            right.append(v)
        while u != v:
            u, v = self.parent[u], self.parent[v]
            left.append(u)
            right.append(v)
        right.pop()
        return left + right[::-1]


def star_tree(P: Pattern) -> StarTree:
    cls = star_class(P)
    n = P.period
    if cls.kind in (StarKind.TRIVIAL, StarKind.NON_SIMPLICIAL):
        center = n
        branching = max(P.components, key=len)
        edges = [(b, center) for b in branching]
        edges += [c for c in P.components if c != branching]
    elif cls.kind is StarKind.SIMPLICIAL or (cls.kind is StarKind.INTERVAL and n > 2):
        vals = [len(m) for m in P.memberships]
        center = vals.index(max(vals))
        edges = list(P.components)
    else:
        raise ValueError(f"{P} is not carried by a star with at least 2 branches")
    size = n + (center == n)
    adj: list[list[int]] = [[] for _ in range(size)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    parent, depth = [-1] * size, [-1] * size
    depth[center] = 0
    queue = deque([center])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if depth[v] < 0:
                depth[v], parent[v] = depth[u] + 1, u
                queue.append(v)
    norm = tuple(sorted(tuple(sorted(e)) for e in edges))
    return StarTree(n, center, norm, tuple(parent), tuple(depth))


def star_markov_matrix(P: Pattern, center_image: Optional[int] = None,
                       tree: Optional[StarTree] = None) -> list[list[int]]:
    """Successor lists of the Markov graph of a star map.

    Orbit points follow ``i -> i+1``; a centre outside the orbit goes to
    ``center_image`` (a node id, ``n`` meaning the centre is fixed).
    """
    T = tree or star_tree(P)
    n = P.period

    def image(u: int) -> int:
        if u < n:
            return (u + 1) % n
        return n if center_image is None else center_image

    index = {e: i for i, e in enumerate(T.edges)}
    succ = []
    for u, v in T.edges:
        route = T.path(image(u), image(v))
        succ.append(sorted(index[tuple(sorted(pair))] for pair in zip(route, route[1:])))
    return succ


def _zero_graph(succ: list[list[int]]) -> bool:
    for comp in strongly_connected_components(succ):
        members = set(comp)
        if any(sum(w in members for w in succ[v]) >= 2 for v in comp):
            return False
    return True


def center_images(P: Pattern, tree: Optional[StarTree] = None) -> list[Optional[int]]:
    T = tree or star_tree(P)
    if T.center < P.period:
        return [None]
    return list(range(P.period + 1))


def star_map_zero(P: Pattern) -> Union[int, None, bool]:
    """Centre image of a zero-entropy Markov map of the star carrying ``P``.

    Returns ``False`` when every such map has positive entropy.  A centre
    inside the orbit has no choice and the result is ``None`` on success.
    """
    T = star_tree(P)
    for z in center_images(P, T):
        if _zero_graph(star_markov_matrix(P, z, T)):
            return z
    return False


def min_star_entropy(P: Pattern, tol: float = 1e-9) -> float:
    """Least entropy over the Markov maps of the star carrying ``P``."""
    T = star_tree(P)
    best = math.inf
    for z in center_images(P, T):
        succ = star_markov_matrix(P, z, T)
        M = [[0] * len(succ) for _ in succ]
        for i, row in enumerate(succ):
            for j in row:
                M[i][j] = 1
        rho = spectral_radius(M, tol)
        best = min(best, math.log(rho) if rho > 1 else 0.0)
    return best

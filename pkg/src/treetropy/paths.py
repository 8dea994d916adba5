"""Basic paths, the covering digraph and pattern entropy.

A basic path is a pair of points inside one component.  Path ``{a, b}``
covers ``{c, d}`` when both ``c`` and ``d`` lie on the interval between the
images ``a+1`` and ``b+1``.  The entropy of the pattern is
``log max(rho(M), 1)`` for the 0/1 covering matrix ``M``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Sequence, Union

import numpy as np

from .errors import NonConvergence, NotAComponent, NotAdjacent
from .pattern import Pattern, tree_path, validate

DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITER = 100_000


class BasicPath(NamedTuple):
    a: int
    b: int

    def __str__(self) -> str:
        return f"{self.a}-{self.b}"


def basic_paths(P: Pattern) -> list[BasicPath]:
    """All 2-subsets of components, sorted.

    Two components share at most one point, so no pair is produced twice.
    """
    return sorted(BasicPath(a, b) for c in P.components for a, b in combinations(c, 2))


def covers(P: Pattern, pi: Sequence[int], pj: Sequence[int]) -> bool:
    n = P.period
    image = set(tree_path(P, (pi[0] + 1) % n, (pi[1] + 1) % n))
    return pj[0] in image and pj[1] in image


@dataclass(frozen=True)
class PathMatrix:
    paths: tuple[BasicPath, ...]
    adjacency: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.paths)

    def successors(self) -> list[list[int]]:
        return [[j for j, v in enumerate(row) if v] for row in self.adjacency]

    def edges(self) -> list[tuple[BasicPath, BasicPath]]:
        return [(self.paths[i], self.paths[j]) for i, row in enumerate(self.adjacency)
                for j, v in enumerate(row) if v]

    def to_array(self) -> np.ndarray:
        return np.array(self.adjacency, dtype=np.int64).reshape(len(self), len(self))

    def index(self, path: Sequence[int]) -> int:
        return self.paths.index(BasicPath(*sorted(path)))

    def to_csv(self) -> str:
        header = ",".join([""] + [str(p) for p in self.paths])
        rows = [",".join([str(p)] + [str(v) for v in row]) for p, row in zip(self.paths, self.adjacency)]
        return "\n".join([header] + rows) + "\n"

    def to_dot(self, name: str = "paths") -> str:
        lines = [f"digraph {name} {{"]
        for p in self.paths:
            lines.append(f'  "{p}";')
        for u, v in self.edges():
            lines.append(f'  "{u}" -> "{v}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def path_matrix(P: Pattern) -> PathMatrix:
    """Covering matrix over :func:`basic_paths` order.

    Two points of a tree path share a component exactly when they are
    consecutive on it, so the covered paths are the consecutive pairs of the
    image interval.
    """
    paths = basic_paths(P)
    index = {p: i for i, p in enumerate(paths)}
    n = P.period
    rows = []
    for a, b in paths:
        row = [0] * len(paths)
        image = tree_path(P, (a + 1) % n, (b + 1) % n)
        for x, y in zip(image, image[1:]):
            row[index[BasicPath(min(x, y), max(x, y))]] = 1
        rows.append(tuple(row))
    return PathMatrix(tuple(paths), tuple(rows))


def strongly_connected_components(succ: Sequence[Sequence[int]]) -> list[list[int]]:
    """Tarjan's algorithm, iterative; components come out in reverse topological order."""
    size = len(succ)
    index = [-1] * size
    low = [0] * size
    on_stack = [False] * size
    stack: list[int] = []
    out: list[list[int]] = []
    counter = 0
    for start in range(size):
        if index[start] >= 0:
            continue
        work = [(start, 0)]
        index[start] = low[start] = counter
        counter += 1
        stack.append(start)
        on_stack[start] = True
        while work:
            v, i = work[-1]
            if i < len(succ[v]):
                work[-1] = (v, i + 1)
                w = succ[v][i]
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                out.append(sorted(comp))
    return out


def _successor_lists(M) -> list[list[int]]:
    if isinstance(M, PathMatrix):
        return M.successors()
    arr = np.asarray(M)
    return [list(np.flatnonzero(row)) for row in arr]


def _perron_root(block: np.ndarray, tol: float, max_iter: int) -> float:
    # block is irreducible, so block + I is primitive and the Collatz-Wielandt
    # ratios of the iterates squeeze the Perron root from both sides
    shifted = block + np.eye(len(block))
    x = np.ones(len(block))
    for _ in range(max_iter):
        y = shifted @ x
        ratios = y / x
        lo, hi = ratios.min(), ratios.max()
        if hi - lo <= tol:
            return 0.5 * (lo + hi) - 1.0
        x = y / y.max()
    raise NonConvergence(f"power iteration did not reach tol={tol} in {max_iter} steps")


def spectral_radius(M: Union[PathMatrix, np.ndarray, Sequence[Sequence[int]]],
                    tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> float:
    """Spectral radius of a nonnegative matrix by power iteration on ``M + I``.

    The iteration runs separately on each strongly connected block (the
    spectrum of ``M`` is the union of the block spectra), which keeps it
    geometric even when ``M`` has nontrivial Jordan structure at the Perron
    root.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    arr = M.to_array() if isinstance(M, PathMatrix) else np.asarray(M, dtype=float)
    if arr.size == 0:
        raise ValueError("spectral radius of an empty matrix")
    succ = _successor_lists(arr)
    best = 0.0
    for comp in strongly_connected_components(succ):
        if len(comp) == 1 and arr[comp[0], comp[0]] == 0:
            continue
        block = arr[np.ix_(comp, comp)].astype(float)
        best = max(best, _perron_root(block, tol, max_iter))
    return best


def entropy(P: Pattern, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> float:
    """Topological entropy of ``P`` (natural log)."""
    M = path_matrix(P)
    if len(M) == 0:
        return 0.0
    rho = spectral_radius(M, tol, max_iter)
    return max(0.0, math.log(rho)) if rho > 0 else 0.0


def branching_witness(M: PathMatrix) -> tuple[BasicPath, list[BasicPath]] | None:
    """A path with two or more successors inside its own strong component.

    ``None`` means every strong component is a single cycle or an isolated
    vertex, i.e. ``rho(M) <= 1``.
    """
    succ = M.successors()
    for comp in strongly_connected_components(succ):
        members = set(comp)
        for v in comp:
            inside = [w for w in succ[v] if w in members]
            if len(inside) >= 2:
                return M.paths[v], [M.paths[w] for w in inside]
    return None


def is_zero_entropy_spectral(P: Pattern) -> bool:
    """Exact integer test of ``rho(M_P) <= 1``."""
    return branching_witness(path_matrix(P)) is None


def opening(P: Pattern, A: Sequence[int], B: Sequence[int]) -> Pattern:
    """Merge two components that meet in exactly one point."""
    a, b = tuple(sorted(A)), tuple(sorted(B))
    for c in (a, b):
        if c not in P.components:
            raise NotAComponent(f"{list(c)} is not a component of {P}")
    if len(set(a) & set(b)) != 1:
        raise NotAdjacent(f"{list(a)} and {list(b)} do not meet in exactly one point")
    rest = [c for c in P.components if c not in (a, b)]
    return validate(P.period, rest + [tuple(set(a) | set(b))])


def adjacent_pairs(P: Pattern) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    comps = P.components
    return [(comps[i], comps[j]) for i in range(len(comps)) for j in range(i + 1, len(comps))
            if len(set(comps[i]) & set(comps[j])) == 1]

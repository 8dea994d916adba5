"""Exhaustive and random generation of patterns, plus the cross-validation harness."""
from __future__ import annotations

import json
import math
import os
import random
from dataclasses import asdict, dataclass, field
from itertools import combinations, permutations, product
from typing import Iterator, Optional

from .collapse import _classes_trivial, is_strongly_collapsible
from .errors import CapExceeded
from .paths import is_zero_entropy_spectral
from .pattern import Component, Pattern, canonical_form, is_canonical, star_class
from .stars import expected_star_class, star_map_zero, star_zero_pattern, zero_possible

DEFAULT_CAP = 8
ENV_CAP = "TREETROPY_MAX_PERIOD"
EXHAUSTIVE_LIMIT = 250_000

Comps = tuple[Component, ...]


def max_period(cap: Optional[int] = None) -> int:
    if cap is not None:
        return cap
    raw = os.environ.get(ENV_CAP)
    return int(raw) if raw else DEFAULT_CAP


def _check_cap(n: int, cap: Optional[int]) -> None:
    limit = max_period(cap)
    if n > limit:
        raise CapExceeded(f"period {n} exceeds the enumeration cap {limit} (set {ENV_CAP} to raise it)")
    if n < 1:
        raise ValueError("period must be positive")


def _set_partitions(items: tuple[int, ...]) -> Iterator[list[tuple[int, ...]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [(first,)] + part
        for i in range(len(part)):
            yield part[:i] + [(first,) + part[i]] + part[i + 1:]


def labeled_hypertrees(n: int) -> Iterator[Comps]:
    """Every valid component family on ``0..n-1``, each exactly once.

    The incidence tree is grown breadth-first from point 0: the point at the
    head of the queue picks which unplaced points join it through new
    components and how they are grouped.  Every hypertree has exactly one
    such growth sequence.
    """
    if n == 1:
        yield ((0,),)
        return

    def grow(queue: list[int], head: int, remaining: tuple[int, ...], comps: list[Component]):
        if head == len(queue):
            if not remaining:
                yield tuple(sorted(comps))
            return
        v = queue[head]
        lowest = 1 if (remaining and head == len(queue) - 1) else 0
        for r in range(lowest, len(remaining) + 1):
            for chosen in combinations(remaining, r):
                rest = tuple(x for x in remaining if x not in chosen)
                for part in _set_partitions(chosen):
                    new = comps + [tuple(sorted((v,) + block)) for block in part]
                    yield from grow(queue + list(chosen), head + 1, rest, new)

    yield from grow([0], 0, tuple(range(1, n)), [])


def enumerate_patterns(n: int, cap: Optional[int] = None) -> Iterator[Pattern]:
    """One canonical representative per rotation class of period-``n`` patterns."""
    _check_cap(n, cap)
    for comps in labeled_hypertrees(n):
        P = Pattern._trusted(n, comps)
        if is_canonical(P):
            yield P


def random_pattern(n: int, rng: random.Random) -> Pattern:
    """Random valid pattern, grown one point at a time.

    Each new point either joins an existing component or forms a new 2-point
    component with an already placed point; every hypertree is reachable.
    """
    order = list(range(n))
    rng.shuffle(order)
    join = rng.uniform(0.05, 0.7)
    comps: list[list[int]] = []
    placed = [order[0]]
    for x in order[1:]:
        if comps and rng.random() < join:
            rng.choice(comps).append(x)
        else:
            comps.append([rng.choice(placed), x])
        placed.append(x)
    if not comps:
        comps = [[order[0]]]
    return Pattern(n, tuple(tuple(c) for c in comps))


def random_patterns(count: int, periods: range, seed: int) -> list[Pattern]:
    rng = random.Random(seed)
    return [random_pattern(rng.choice(periods), rng) for _ in range(count)]


def random_blocky_pattern(n: int, rng: random.Random) -> Pattern:
    """Random pattern with a trivial block structure, for stressing the zero-entropy side.

    A random pattern of period ``p | n`` is exploded: every point becomes the
    residue block ``{i, i+p, ...}`` (a component of its own) and every old
    component is lifted through random copies.  A few random openings then
    merge adjacent components, which keeps every block inside one component.
    """
    divisors = [p for p in range(1, n) if n % p == 0 and p < n]
    p = rng.choice(divisors)
    base = random_pattern(p, rng) if p > 1 else None
    comps = [tuple(range(i, n, p)) for i in range(p)]
    if base is not None:
        for c in base.components:
            comps.append(tuple(x + p * rng.randrange(n // p) for x in c))
    P = Pattern(n, tuple(comps))
    for _ in range(rng.randrange(3)):
        pairs = [(a, b) for i, a in enumerate(P.components) for b in P.components[i + 1:]
                 if len(set(a) & set(b)) == 1]
        if not pairs:
            break
        a, b = rng.choice(pairs)
        P = Pattern(n, tuple(c for c in P.components if c not in (a, b)) + (tuple(set(a) | set(b)),))
    return P


# --- star-shaped families ---------------------------------------------------

def _weak_cuts(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Sizes of ``parts`` (possibly empty) consecutive segments summing to ``total``."""
    if total < 0:
        return
    for bars in combinations(range(total + parts - 1), parts - 1):
        sizes, prev = [], -1
        for b in bars:
            sizes.append(b - prev - 1)
            prev = b
        sizes.append(total + parts - 2 - prev)
        yield tuple(sizes)


def _split(seq: tuple, sizes: tuple[int, ...]) -> list[tuple]:
    out, pos = [], 0
    for s in sizes:
        out.append(seq[pos:pos + s])
        pos += s
    return out


def _chain_components(head: int, chain: tuple[int, ...]) -> list[Component]:
    seq = (head,) + chain
    return [tuple(sorted(pair)) for pair in zip(seq, seq[1:])]


def _ns_structures(n: int, k: int, anchored: bool) -> Iterator[Comps]:
    points = range(n)
    bases = ((0,) + b for b in combinations(range(1, n), k - 1)) if anchored else combinations(points, k)
    for B in bases:
        rest = tuple(x for x in points if x not in B)
        for perm in permutations(rest):
            for sizes in _weak_cuts(len(rest), k):
                comps = [B]
                for root, chain in zip(B, _split(perm, sizes)):
                    comps.extend(_chain_components(root, chain))
                yield tuple(sorted(comps))


def _s_structures(n: int, k: int, anchored: bool) -> Iterator[Comps]:
    for c in ([0] if anchored else range(n)):
        rest = tuple(x for x in range(n) if x != c)
        for perm in permutations(rest):
            for sizes in _weak_cuts(len(rest) - k, k):
                legs = _split(perm, tuple(s + 1 for s in sizes))
                if any(legs[i][0] > legs[i + 1][0] for i in range(k - 1)):
                    continue
                comps = []
                for leg in legs:
                    comps.extend(_chain_components(c, leg))
                yield tuple(sorted(comps))


def _oriented(pairs: tuple[tuple[int, int], ...], flips: tuple[int, ...]) -> tuple[int, ...]:
    out: list[int] = []
    for (a, b), f in zip(pairs, flips):
        out.extend((b, a) if f else (a, b))
    return tuple(out)


def _ns_paired(n: int, k: int) -> Iterator[Comps]:
    m = n // 2
    for tail in combinations(range(1, n), k - 1):
        B = (0,) + tail
        inB = set(B)
        free = tuple((j, j + m) for j in range(m) if j not in inB and j + m not in inB)
        starts = [((x + m) % n,) if (x + m) % n not in inB else () for x in B]
        for perm in permutations(free):
            for flips in product((0, 1), repeat=len(free)):
                seq = _oriented(perm, flips)
                for sizes in _weak_cuts(len(free), k):
                    comps = [B]
                    pos = 0
                    for root, start, s in zip(B, starts, sizes):
                        comps.extend(_chain_components(root, start + seq[2 * pos:2 * (pos + s)]))
                        pos += s
                    yield tuple(sorted(comps))


def _s_paired(n: int, k: int) -> Iterator[Comps]:
    m = n // 2
    free = tuple((j, j + m) for j in range(1, m))
    for perm in permutations(free):
        for flips in product((0, 1), repeat=len(free)):
            seq = _oriented(perm, flips)
            # leg 0 starts at the partner m of the centre and may have no pairs;
            # the other k-1 legs hold at least one pair each
            for sizes in _weak_cuts(len(free) - (k - 1), k):
                counts = (sizes[0],) + tuple(s + 1 for s in sizes[1:])
                legs, pos = [], 0
                for s in counts:
                    legs.append(seq[2 * pos:2 * (pos + s)])
                    pos += s
                if any(legs[i][0] > legs[i + 1][0] for i in range(1, k - 1)):
                    continue
                comps = _chain_components(0, (m,) + legs[0])
                for leg in legs[1:]:
                    comps.extend(_chain_components(0, leg))
                yield tuple(sorted(comps))


def star_structures(n: int, k: int, family: str = "NS", anchored: bool = False,
                    paired: bool = False) -> Iterator[Comps]:
    """Labelled k-star component families of period ``n``.

    ``family`` is ``"NS"`` (one branching component of size ``k``, all other
    components 2-point chains hanging off its points) or ``"S"`` (2-point
    components only, one point of valence ``k``).  ``anchored`` puts point 0
    in the branching component / at the centre, which still meets every
    rotation class.  ``paired`` keeps only families in which each pair
    ``{j, j + n/2}`` lies inside one component (implies ``anchored``).
    """
    if k < 3 or n < k:
        raise ValueError(f"need n >= k >= 3, got n={n}, k={k}")
    if family not in ("NS", "S"):
        raise ValueError(f"family must be 'NS' or 'S', got {family!r}")
    if paired:
        if n % 2:
            return iter(())
        return _ns_paired(n, k) if family == "NS" else _s_paired(n, k)
    if family == "NS":
        return _ns_structures(n, k, anchored)
    if n - 1 < k:
        return iter(())
    return _s_structures(n, k, anchored)


def star_structure_count(n: int, k: int, family: str, anchored: bool = True) -> int:
    """Size of :func:`star_structures` without pairing (closed form)."""
    if family == "NS":
        lead = math.comb(n - 1, k - 1) if anchored else math.comb(n, k)
        return lead * math.factorial(n - k) * math.comb(n - 1, k - 1)
    if n - 1 < k:
        return 0
    lah = math.comb(n - 2, k - 1) * math.factorial(n - 1) // math.factorial(k)
    return lah if anchored else n * lah


def enumerate_star_patterns(n: int, k: int, family: Optional[str] = None,
                            cap: Optional[int] = None) -> Iterator[Pattern]:
    """Canonical k-star patterns of period ``n`` (both families unless ``family`` is given)."""
    _check_cap(n, cap)
    seen: set[Comps] = set()
    for fam in ([family] if family else ["NS", "S"]):
        for comps in star_structures(n, k, fam, anchored=True):
            C = canonical_form(Pattern._trusted(n, comps))
            if C.components not in seen:
                seen.add(C.components)
                yield C


# --- harnesses --------------------------------------------------------------

@dataclass
class EnumerationReport:
    period: Optional[int] = None
    labeled: int = 0
    classes: int = 0
    zero_classes: int = 0
    disagreements: list[str] = field(default_factory=list)
    filters: dict = field(default_factory=dict)
    rows: list[dict] = field(default_factory=list)
    mismatches: int = 0

    @property
    def ok(self) -> bool:
        return not self.disagreements and self.mismatches == 0

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def cross_validate(n: int, cap: Optional[int] = None) -> EnumerationReport:
    """Run the collapse decider and the spectral decider on every class of period ``n``."""
    _check_cap(n, cap)
    report = EnumerationReport(period=n)
    for comps in labeled_hypertrees(n):
        report.labeled += 1
        P = Pattern._trusted(n, comps)
        if not is_canonical(P):
            continue
        report.classes += 1
        by_collapse = is_strongly_collapsible(P) is not None
        by_spectrum = is_zero_entropy_spectral(P)
        report.zero_classes += by_collapse
        if by_collapse != by_spectrum:
            report.disagreements.append(str(P))
    return report


def _quick_reject(n: int, comps: Comps) -> bool:
    if len(comps) == 1:
        return False
    return not any(n % p == 0 and _classes_trivial(n, comps, p) for p in range(2, n))


def search_zero_star(n: int, k: int, limit: int = EXHAUSTIVE_LIMIT, on_star: bool = True) -> dict:
    """Look for a zero-entropy k-star pattern of period ``n``.

    With ``on_star`` the witness must carry a zero-entropy Markov map of the
    k-star itself; without it zero pattern entropy is enough (the infimum
    then runs over models on every tree).

    Exhaustive over anchored star families when they are small enough.
    Otherwise only families with a trivial structure of 2-point blocks are
    scanned: a nontrivial zero-entropy pattern needs a trivial block
    structure, and in a star pattern a 2-point component ending at an
    endpoint forces every trivial block to have 2 points.
    """
    total = star_structure_count(n, k, "NS") + star_structure_count(n, k, "S")
    method = "exhaustive" if total <= limit else "paired"
    checked = 0
    for fam in ("NS", "S"):
        for comps in star_structures(n, k, fam, anchored=True, paired=(method == "paired")):
            checked += 1
            if _quick_reject(n, comps):
                continue
            P = Pattern._trusted(n, comps)
            cert = is_strongly_collapsible(P)
            if cert is None:
                continue
            cls = star_class(P)
            if not is_zero_entropy_spectral(P) or cls.k != k:
                raise AssertionError(f"inconsistent witness {P}")
            if on_star and star_map_zero(P) is False:
                continue
            return {"found": True, "method": method, "checked": checked, "witness": str(P)}
    return {"found": False, "method": method, "checked": checked, "witness": None}


def verify_theorem_c(n_max: int, k_max: int, limit: int = EXHAUSTIVE_LIMIT,
                     on_star: bool = True) -> EnumerationReport:
    """Compare the (n, k) zero-entropy predicate with search results and constructors.

    ``on_star`` is passed to :func:`search_zero_star`.
    """
    if k_max > 5 or n_max > 12:
        raise CapExceeded("verification runs only for k <= 5 and n <= 12")
    report = EnumerationReport(filters={"n_max": n_max, "k_max": k_max, "on_star": on_star})
    for k in range(3, k_max + 1):
        for n in range(k, n_max + 1):
            predicted = zero_possible(n, k)
            row = {"n": n, "k": k, "predicted": predicted}
            row.update(search_zero_star(n, k, limit, on_star))
            if predicted:
                P = star_zero_pattern(n, k)
                good = (is_strongly_collapsible(P) is not None and is_zero_entropy_spectral(P)
                        and star_class(P) == expected_star_class(n, k)
                        and star_map_zero(P) is not False)
                row["constructed"] = str(P)
                row["constructor_ok"] = good
                if not good:
                    report.mismatches += 1
            if row["found"] != predicted:
                report.mismatches += 1
            report.rows.append(row)
    return report

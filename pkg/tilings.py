"""
Strongly separated set families and rhombus tilings.

A tiling of the zonogon Z_n is stored as its spectrum: the family of vertex
sets, each an int bitmask (bit i-1 <=> alternative i). Tiles, edges, snakes
and tracks are all derived views of that family, checked at runtime.
"""

from __future__ import annotations

import logging
import math
import random
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

import networkx as nx

from config import get_settings
from domains import Domain, is_peak_pit
from orders import LinearOrder, covers, inversions, weak_join, weak_meet

log = logging.getLogger(__name__)

U64_MAX = 2 ** 64 - 1

Point = tuple[float, float]


class SpectrumError(ValueError):
    """A family that breaks one of the spectrum invariants (named in the message)."""


class CountOverflowError(OverflowError):
    """A checked count went past its limit."""


# ─── Alternative sets as bitmasks ────────────────────────────────

def to_bits(members: Iterable[int]) -> int:
    bits = 0
    for x in members:
        if x < 1:
            raise ValueError(f"alternatives are numbered from 1, got {x}")
        bits |= 1 << (x - 1)
    return bits


def members_of(bits: int) -> list[int]:
    out, x = [], 1
    while bits:
        if bits & 1:
            out.append(x)
        bits >>= 1
        x += 1
    return out


def full_set(n: int) -> int:
    return (1 << n) - 1


def _by_size(bits: int) -> tuple[int, int]:
    return (bits.bit_count(), bits)


def ideal_chain(sigma: LinearOrder) -> list[int]:
    chain, acc = [0], 0
    for x in sigma.word:
        acc |= 1 << (x - 1)
        chain.append(acc)
    return chain


def ideals(sigma: LinearOrder) -> frozenset[int]:
    """The n+1 prefix sets of sigma's word."""
    return frozenset(ideal_chain(sigma))


def ideal_family(D: Domain) -> frozenset[int]:
    out: set[int] = set()
    for sigma in D.orders:
        out.update(ideal_chain(sigma))
    return frozenset(out)


# ─── Separation ──────────────────────────────────────────────────

def is_separated_pair(A: int, B: int) -> bool:
    d1, d2 = A & ~B, B & ~A
    if not d1 or not d2:
        return True
    lo1, hi1 = (d1 & -d1).bit_length(), d1.bit_length()
    lo2, hi2 = (d2 & -d2).bit_length(), d2.bit_length()
    return hi1 < lo2 or hi2 < lo1


def is_separated_family(F: Iterable[int]) -> bool:
    items = list(F)
    return all(is_separated_pair(a, b) for a, b in combinations(items, 2))


# ─── Spectra ─────────────────────────────────────────────────────

def spectrum_size(n: int) -> int:
    return n * (n - 1) // 2 + n + 1


@dataclass(frozen=True)
class Spectrum:
    n: int
    sets: frozenset[int]

    def __contains__(self, A: int) -> bool:
        return A in self.sets

    def __len__(self) -> int:
        return len(self.sets)

    def ordered(self) -> list[int]:
        """Members by (cardinality, bitmask value)."""
        return sorted(self.sets, key=_by_size)

    @property
    def key(self) -> str:
        return ".".join(format(s, "x") for s in sorted(self.sets))


@dataclass(frozen=True, order=True)
class Tile:
    i: int
    j: int
    base: int

    @property
    def colors(self) -> tuple[int, int]:
        return (self.i, self.j)

    @property
    def vertices(self) -> tuple[int, int, int, int]:
        """Corners in boundary order: A, A+i, A+ij, A+j."""
        bi, bj = 1 << (self.i - 1), 1 << (self.j - 1)
        return (self.base, self.base | bi, self.base | bi | bj, self.base | bj)


def edges(T: Spectrum) -> list[tuple[int, int, int]]:
    """One-element-difference pairs (A, A+x, x), sorted."""
    out = []
    for A in T.ordered():
        rest = full_set(T.n) & ~A
        while rest:
            low = rest & -rest
            if A | low in T.sets:
                out.append((A, A | low, low.bit_length()))
            rest ^= low
    return out


def _find_tiles(n: int, sets: frozenset[int]) -> dict[tuple[int, int], list[int]]:
    found: dict[tuple[int, int], list[int]] = {(i, j): [] for i, j in combinations(range(1, n + 1), 2)}
    for A in sets:
        free = [x for x in range(1, n + 1) if not A >> (x - 1) & 1]
        for i, j in combinations(free, 2):
            bi, bj = 1 << (i - 1), 1 << (j - 1)
            if A | bi in sets and A | bj in sets and A | bi | bj in sets:
                found[(i, j)].append(A)
    return found


def validate_spectrum(n: int, sets: Iterable[int], check_edges: bool = True) -> Spectrum:
    """Build a Spectrum, raising SpectrumError naming the first broken invariant."""
    if n < 1:
        raise ValueError("n must be >= 1")
    fam = frozenset(sets)
    full = full_set(n)
    if 0 not in fam or full not in fam:
        raise SpectrumError("contains ∅ and [n]: missing " + ("∅" if 0 not in fam else "[n]"))
    stray = [A for A in fam if A & ~full]
    if stray:
        raise SpectrumError(f"members ⊆ [n]: {members_of(stray[0])} exceeds [1..{n}]")
    if len(fam) != spectrum_size(n):
        raise SpectrumError(f"size C(n,2)+n+1: expected {spectrum_size(n)} sets, got {len(fam)}")
    for a, b in combinations(fam, 2):
        if not is_separated_pair(a, b):
            raise SpectrumError(f"pairwise separated: {members_of(a)} and {members_of(b)} are not")
    for (i, j), bases in _find_tiles(n, fam).items():
        if len(bases) != 1:
            raise SpectrumError(f"tile census: {len(bases)} tiles of colour ({i},{j}), expected 1")
    T = Spectrum(n, fam)
    if check_edges and len(edges(T)) != n * n:
        raise SpectrumError(f"edge count n²: expected {n * n} one-element differences, got {len(edges(T))}")
    return T


def tiles(T: Spectrum) -> list[Tile]:
    """One tile per pair i<j, sorted by colours."""
    out = []
    for (i, j), bases in sorted(_find_tiles(T.n, T.sets).items()):
        if len(bases) != 1:
            raise SpectrumError(f"tile census: {len(bases)} tiles of colour ({i},{j}), expected 1")
        out.append(Tile(i, j, bases[0]))
    return out


# ─── Extension (maximal separated families) ──────────────────────

def extend_to_maximal(
    F: Iterable[int],
    n: int,
    candidates: Optional[Sequence[int]] = None,
) -> Spectrum:
    """
    Greedily grow a separated family to a spectrum.

    Candidates default to all 2^n subsets by (cardinality, value); above the
    full-universe bound a candidate list must be supplied.
    """
    fam = set(F) | {0, full_set(n)}
    if any(A & ~full_set(n) for A in fam):
        raise ValueError(f"family has sets outside [1..{n}]")
    if not is_separated_family(fam):
        raise ValueError("family is not strongly separated")
    if candidates is None:
        bound = get_settings().full_universe_n
        if n > bound:
            raise ValueError(f"n={n} is above the full-universe bound {bound}; pass candidates")
        candidates = sorted(range(1 << n), key=_by_size)
    target = spectrum_size(n)
    members = list(fam)
    for c in candidates:
        if len(members) >= target:
            break
        if c in fam:
            continue
        if all(is_separated_pair(c, m) for m in members):
            fam.add(c)
            members.append(c)
    if len(fam) != target:
        raise RuntimeError(
            f"greedy extension stopped at {len(fam)} sets, expected {target} for n={n}"
        )
    return validate_spectrum(n, fam)


def random_separated_family(n: int, rng: random.Random, size: Optional[int] = None) -> frozenset[int]:
    """A separated family grown from shuffled subsets, stopped at `size` (random by default)."""
    if size is None:
        size = rng.randint(2, spectrum_size(n))
    pool = list(range(1 << n))
    rng.shuffle(pool)
    fam: list[int] = []
    for c in pool:
        if len(fam) >= size:
            break
        if all(is_separated_pair(c, m) for m in fam):
            fam.append(c)
    return frozenset(fam)


def random_spectrum(n: int, rng: random.Random) -> Spectrum:
    pool = list(range(1 << n))
    rng.shuffle(pool)
    return extend_to_maximal((), n, candidates=pool)


# ─── Snakes ──────────────────────────────────────────────────────

def count_chains(n: int, nodes: Iterable[int], limit: int = U64_MAX) -> int:
    """Number of ∅ -> [n] chains of one-element steps inside `nodes`."""
    node_set = set(nodes)
    full = full_set(n)
    ways = {0: 1} if 0 in node_set else {}
    for A in sorted(node_set, key=_by_size):
        w = ways.get(A)
        if not w:
            continue
        rest = full & ~A
        while rest:
            low = rest & -rest
            B = A | low
            if B in node_set:
                v = ways.get(B, 0) + w
                if v > limit:
                    raise CountOverflowError(f"chain count exceeds {limit}")
                ways[B] = v
            rest ^= low
    return ways.get(full, 0)


def count_snakes(T: Spectrum, limit: int = U64_MAX) -> int:
    return count_chains(T.n, T.sets, limit)


def sigma(T: Spectrum) -> Domain:
    """All orders whose ideals lie in the spectrum (the tiling's snakes)."""
    bound = get_settings().sigma_limit
    if T.n > bound:
        raise ValueError(f"Σ(T) is materialized only for n <= {bound}; use count_snakes")
    n, full = T.n, full_set(T.n)
    found: list[LinearOrder] = []
    word: list[int] = []

    def walk(A: int):
        if A == full:
            found.append(LinearOrder(tuple(word)))
            return
        for x in range(1, n + 1):
            b = 1 << (x - 1)
            if not A & b and A | b in T.sets:
                word.append(x)
                walk(A | b)
                word.pop()

    walk(0)
    return Domain(n, frozenset(found))


def in_sigma(T: Spectrum, s: LinearOrder) -> bool:
    return s.n == T.n and all(A in T.sets for A in ideal_chain(s))


def _require_snake(T: Spectrum, s: LinearOrder):
    if not in_sigma(T, s):
        raise ValueError(f"order {s} is not a snake of this tiling")


@dataclass(frozen=True)
class Snake:
    order: LinearOrder
    ideals: tuple[int, ...]    # ∅ = I_0 ⊂ I_1 ⊂ ... ⊂ I_n = [n]


def snake(T: Spectrum, s: LinearOrder) -> Snake:
    _require_snake(T, s)
    return Snake(s, tuple(ideal_chain(s)))


def snake_poset(T: Spectrum) -> nx.DiGraph:
    """Σ(T) with its Bruhat covers as edges."""
    members = list(sigma(T))
    g = nx.DiGraph()
    g.add_nodes_from(members)
    for a in members:
        for b in members:
            if a != b and covers(a, b):
                g.add_edge(a, b)
    return g


# ─── Geometry ────────────────────────────────────────────────────

def xi(n: int) -> list[Point]:
    """Unit generators, clockwise from the far left; all point upward."""
    out = []
    for i in range(1, n + 1):
        theta = math.pi / 2 + math.pi * (n + 1 - 2 * i) / (2 * n + 2)
        out.append((math.cos(theta), math.sin(theta)))
    return out


def vertex_position(n: int, A: int, vectors: Optional[list[Point]] = None) -> Point:
    vectors = vectors or xi(n)
    x = y = 0.0
    for m in members_of(A):
        x += vectors[m - 1][0]
        y += vectors[m - 1][1]
    return (x, y)


def tile_center(n: int, t: Tile, vectors: Optional[list[Point]] = None) -> Point:
    vectors = vectors or xi(n)
    bx, by = vertex_position(n, t.base, vectors)
    (ax, ay), (cx, cy) = vectors[t.i - 1], vectors[t.j - 1]
    return (bx + (ax + cx) / 2, by + (ay + cy) / 2)


def snake_polyline(T: Spectrum, s: LinearOrder) -> list[Point]:
    vectors = xi(T.n)
    return [vertex_position(T.n, A, vectors) for A in snake(T, s).ideals]


def _x_at(poly: list[Point], y: float) -> float:
    for (x0, y0), (x1, y1) in zip(poly, poly[1:]):
        if y0 <= y <= y1:
            return x0 + (x1 - x0) * (y - y0) / (y1 - y0)
    raise ValueError(f"height {y:.4f} is outside the snake")


# ─── Left regions ────────────────────────────────────────────────

def left_region(T: Spectrum, s: LinearOrder) -> list[Tile]:
    """Tiles left of the snake, read off the inversion set."""
    _require_snake(T, s)
    inv = inversions(s)
    return [t for t in tiles(T) if t.colors in inv]


def left_region_geometric(T: Spectrum, s: LinearOrder) -> list[Tile]:
    """Tiles whose centre lies left of the drawn snake."""
    poly = snake_polyline(T, s)
    vectors = xi(T.n)
    out = []
    for t in tiles(T):
        cx, cy = tile_center(T.n, t, vectors)
        if cx < _x_at(poly, cy):
            out.append(t)
    return out


# ─── Tracks ──────────────────────────────────────────────────────

def i_track(T: Spectrum, i: int) -> list[Tile]:
    """Tiles carrying colour i, left boundary to right boundary."""
    n = T.n
    if not 1 <= i <= n:
        raise ValueError(f"colour {i} outside [1..{n}]")
    bi = 1 << (i - 1)
    at_edge: dict[int, list[Tile]] = {}
    for t in tiles(T):
        if i not in t.colors:
            continue
        other = 1 << ((t.j if t.i == i else t.i) - 1)
        at_edge.setdefault(t.base, []).append(t)
        at_edge.setdefault(t.base | other, []).append(t)

    cur = full_set(i - 1)              # lower end of the i-edge ([i-1], [i])
    stop = full_set(n) & ~full_set(i)  # lower end of ({i+1..n}, {i..n})
    track: list[Tile] = []
    prev: Optional[Tile] = None
    while cur != stop:
        nxt = [t for t in at_edge.get(cur, []) if t != prev]
        if len(nxt) != 1:
            raise SpectrumError(f"track {i} breaks at edge {members_of(cur)} -> {members_of(cur | bi)}")
        t = nxt[0]
        other = 1 << ((t.j if t.i == i else t.i) - 1)
        cur = t.base | other if cur == t.base else t.base
        track.append(t)
        prev = t
    return track


# ─── Reduction ───────────────────────────────────────────────────

def reduce(T: Spectrum, X: Iterable[int]) -> Spectrum:
    """Restrict every member to X and relabel X order-preservingly as [|X|]."""
    keep = sorted(set(X))
    if not keep:
        raise ValueError("reduction needs a nonempty set of alternatives")
    if keep[0] < 1 or keep[-1] > T.n:
        raise ValueError(f"reduction set {keep} is not inside [1..{T.n}]")
    relabel = {x: k for k, x in enumerate(keep, start=1)}
    out = set()
    for A in T.sets:
        out.add(to_bits(relabel[x] for x in members_of(A) if x in relabel))
    return validate_spectrum(len(keep), out)


# ─── Flips ───────────────────────────────────────────────────────

@dataclass(frozen=True)
class Flip:
    triple: tuple[int, int, int]
    base: int
    direction: str               # "pit-to-peak" or "peak-to-pit"
    result: Spectrum


def flips(T: Spectrum) -> list[Flip]:
    """Every hexagon flip available in T."""
    n, sets = T.n, T.sets
    out = []
    for S in T.ordered():
        down = [x for x in members_of(S) if S & ~(1 << (x - 1)) in sets]
        up = [x for x in range(1, n + 1) if not S >> (x - 1) & 1 and S | 1 << (x - 1) in sets]
        if len(down) + len(up) != 3:
            continue
        if len(down) == 1 and len(up) == 2:
            # centre A+j of a pit-like hexagon
            j, (i, k) = down[0], up
            if not i < j < k:
                continue
            A = S & ~(1 << (j - 1))
            replacement = A | 1 << (i - 1) | 1 << (k - 1)
            direction = "pit-to-peak"
        elif len(down) == 2 and len(up) == 1:
            # centre A+ik of a peak-like hexagon
            (i, k), j = down, up[0]
            if not i < j < k:
                continue
            A = S & ~(1 << (i - 1)) & ~(1 << (k - 1))
            replacement = A | 1 << (j - 1)
            direction = "peak-to-pit"
        else:
            continue
        bi, bj, bk = 1 << (i - 1), 1 << (j - 1), 1 << (k - 1)
        ring = (A, A | bi, A | bk, A | bi | bj, A | bj | bk, A | bi | bj | bk)
        if replacement in sets or not all(v in sets for v in ring):
            continue
        rest = sets - {S}
        if not all(is_separated_pair(replacement, m) for m in rest):
            log.warning("discarding flip at %s (%d,%d,%d): result not separated", members_of(A), i, j, k)
            continue
        out.append(Flip((i, j, k), A, direction, Spectrum(n, rest | {replacement})))
    return out


def standard_spectrum(n: int) -> Spectrum:
    """The greedy extension of Id(alpha)."""
    return extend_to_maximal([full_set(k) for k in range(n + 1)], n)


def enumerate_tilings(n: int) -> list[Spectrum]:
    """All tilings of Z_n by breadth-first search over flips, sorted by key."""
    bound = get_settings().max_tiling_n
    if n < 1 or n > bound:
        raise ValueError(f"tiling enumeration supports 1 <= n <= {bound}, got {n}")
    seed = standard_spectrum(n)
    seen = {seed.key: seed}
    queue = deque([seed])
    while queue:
        T = queue.popleft()
        for f in flips(T):
            k = f.result.key
            if k not in seen:
                seen[k] = f.result
                queue.append(f.result)
        if len(seen) % 5000 == 0:
            log.info("n=%d: %d tilings found, %d queued", n, len(seen), len(queue))
    log.info("n=%d: %d tilings", n, len(seen))
    return [seen[k] for k in sorted(seen)]


def enumerate_tilings_cached(n: int) -> list[Spectrum]:
    """enumerate_tilings through the SQLite catalog."""
    import catalog

    catalog.init_db()
    rows = catalog.load_tilings(n)
    if rows:
        log.debug("catalog hit: %d tilings for n=%d", len(rows), n)
        return [Spectrum(n, frozenset(to_bits(s) for s in r["sets"])) for r in rows]
    spectra = enumerate_tilings(n)
    catalog.save_tilings(n, [
        {"key": T.key, "sets": [members_of(A) for A in T.ordered()], "snake_count": count_snakes(T)}
        for T in spectra
    ])
    return spectra


def gamma(n: int, allow_slow: bool = False) -> int:
    """Largest Σ(T) over all tilings of Z_n."""
    if n > 6 and not allow_slow:
        raise ValueError(f"gamma for n={n} enumerates every tiling; pass allow_slow")
    return max(count_snakes(T) for T in enumerate_tilings_cached(n))


# ─── Strong consistency ──────────────────────────────────────────

CRITERIA = ("tiling", "separation", "peak-pit", "lattice", "lattice-subset")


def strongly_consistent(s: LinearOrder, t: LinearOrder, criterion: str = "separation") -> bool:
    if s.n != t.n:
        raise ValueError(f"orders live on different ground sets (n={s.n} vs n={t.n})")
    both = ideals(s) | ideals(t)
    if criterion == "tiling":
        if not is_separated_family(both):
            return False
        T = extend_to_maximal(both, s.n)
        return in_sigma(T, s) and in_sigma(T, t)
    if criterion == "separation":
        return is_separated_family(both)
    if criterion == "peak-pit":
        return is_peak_pit(Domain(s.n, frozenset({s, t})))
    if criterion in ("lattice", "lattice-subset"):
        envelope = ideals(weak_join(s, t)) | ideals(weak_meet(s, t))
        return both == envelope if criterion == "lattice" else both <= envelope
    raise ValueError(f"unknown criterion {criterion!r} (expected one of {', '.join(CRITERIA)})")


def consistency_verdicts(s: LinearOrder, t: LinearOrder) -> dict[str, bool]:
    return {c: strongly_consistent(s, t, c) for c in CRITERIA}

"""
Fishburn's alternating scheme: peak at even middles, pit at odd middles.

Φ(n), the size of the resulting domain, is counted as the number of
∅ -> [n] chains through admissible sets, so n = 42 never touches a single
order. The concatenation construction and the counterexample report live
here too.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from anchors import load_anchors
from domains import Casting, Domain, triples
from tilings import (
    U64_MAX, Spectrum, count_chains, count_snakes, extend_to_maximal, full_set,
    sigma, spectrum_size, validate_spectrum,
)

log = logging.getLogger(__name__)

MAX_N = 64


def alternating_casting(n: int) -> Casting:
    if n < 3:
        raise ValueError("the alternating scheme needs n >= 3")
    return Casting(n, {t: ("peak" if t[1] % 2 == 0 else "pit") for t in triples(n)})


# ─── Admissible sets ─────────────────────────────────────────────

@lru_cache(maxsize=None)
def _parity_masks(n: int) -> tuple[int, int]:
    even = sum(1 << (x - 1) for x in range(2, n + 1, 2))
    return even, full_set(n) & ~even


def is_admissible(A: int, n: int) -> bool:
    """
    No triple i<j<k witnesses a violation inside the ideal A:
    an even j in A needs [j] ⊆ A or {j..n} ⊆ A; an odd j outside A needs
    no member below it or none above it. Checked on bit runs.
    """
    full = full_set(n)
    if A & ~full:
        raise ValueError(f"set has members outside [1..{n}]")
    if A == 0 or A == full:
        return True
    even, odd = _parity_masks(n)
    lead_ones = ((A + 1) & ~A).bit_length() - 1
    top_gap = (full ^ A).bit_length()           # largest non-member
    ones_ok = full_set(lead_ones) | (full & ~full_set(top_gap))
    if A & even & ~ones_ok:
        return False
    low = (A & -A).bit_length()                 # smallest member
    high = A.bit_length()                       # largest member
    zeros_ok = full_set(low - 1) | (full & ~full_set(high))
    return not (~A & odd & ~zeros_ok)


def is_admissible_bruteforce(A: int, n: int) -> bool:
    def has(x):
        return bool(A >> (x - 1) & 1)

    for i, j, k in combinations(range(1, n + 1), 3):
        if j % 2 == 0 and has(j) and not has(i) and not has(k):
            return False
        if j % 2 == 1 and has(i) and has(k) and not has(j):
            return False
    return True


# ─── The admissible-set DAG ──────────────────────────────────────

@dataclass(frozen=True)
class AdmissibleSetDag:
    n: int
    nodes: frozenset[int]

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for A in sorted(self.nodes, key=lambda s: (s.bit_count(), s)):
            for x in range(self.n):
                b = 1 << x
                if not A & b and A | b in self.nodes:
                    out.append((A, A | b))
        return out


@lru_cache(maxsize=128)
def fishburn_dag(n: int) -> AdmissibleSetDag:
    """Admissible sets on some ∅ -> [n] chain of one-element additions."""
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n must be in 1..{MAX_N}")
    full = full_set(n)
    reached = {0}
    level = [0]
    while level:
        nxt = set()
        for A in level:
            rest = full & ~A
            while rest:
                low = rest & -rest
                B = A | low
                if B not in reached and is_admissible(B, n):
                    nxt.add(B)
                rest ^= low
        reached |= nxt
        level = list(nxt)
    # keep only sets that can still reach [n]
    alive = {full} if full in reached else set()
    for A in sorted(reached, key=lambda s: -s.bit_count()):
        if A in alive:
            continue
        rest = full & ~A
        while rest:
            low = rest & -rest
            if A | low in alive:
                alive.add(A)
                break
            rest ^= low
    log.debug("fishburn dag n=%d: %d reachable, %d alive", n, len(reached), len(alive))
    if len(alive) != spectrum_size(n):
        raise RuntimeError(f"admissible DAG for n={n} has {len(alive)} nodes, expected {spectrum_size(n)}")
    return AdmissibleSetDag(n, frozenset(alive))


def phi(n: int, limit: int = U64_MAX) -> int:
    """Φ(n): number of orders obeying the alternating scheme."""
    return count_chains(n, fishburn_dag(n).nodes, limit)


def phi_table(ns: Iterable[int]) -> dict[int, int]:
    return {n: phi(n) for n in ns}


def fishburn_tiling(n: int) -> Spectrum:
    return validate_spectrum(n, fishburn_dag(n).nodes)


def fishburn_domain(n: int) -> Domain:
    return sigma(fishburn_tiling(n))


# ─── Concatenation ───────────────────────────────────────────────

def concat_seed(T: Spectrum, T2: Spectrum) -> frozenset[int]:
    """T below, T2 stacked on top of [n] with its colours shifted by n."""
    top = full_set(T.n)
    return frozenset(T.sets) | frozenset(top | (A << T.n) for A in T2.sets)


def concat_candidates(n: int, n2: int) -> list[int]:
    """Sets of the grid between the two stacked tilings: {a..n} ∪ {n+b..n+n2}."""
    left = [full_set(n) & ~full_set(a) for a in range(n + 1)]
    right = [(full_set(n2) & ~full_set(b)) << n for b in range(n2 + 1)]
    return sorted({x | y for x in left for y in right}, key=lambda s: (s.bit_count(), s))


def concat(T: Spectrum, T2: Spectrum) -> Spectrum:
    N = T.n + T2.n
    log.info("concatenating tilings on n=%d and n=%d", T.n, T2.n)
    return extend_to_maximal(concat_seed(T, T2), N, candidates=concat_candidates(T.n, T2.n))


# ─── Counterexample ──────────────────────────────────────────────

def counterexample_report(construct: bool = False) -> dict:
    """Φ(21)² against Φ(42), checked against anchors.yaml."""
    anchors = load_anchors()
    p21, p42 = phi(21), phi(42)
    report = {
        "phi21": p21,
        "phi42": p42,
        "phi21_squared": p21 * p21,
        "refuted": p21 * p21 > p42,
        "dag_nodes": {"21": len(fishburn_dag(21).nodes), "42": len(fishburn_dag(42).nodes)},
    }
    expected = {
        "phi21": anchors.phi[21],
        "phi42": anchors.phi[42],
        "phi21_squared": anchors.phi21_squared,
    }
    for key, want in expected.items():
        if report[key] != want:
            raise RuntimeError(f"{key} = {report[key]}, anchor value is {want}")
    if construct:
        T = fishburn_tiling(21)
        big = concat(T, T)
        count = count_snakes(big)
        report["constructed_sets"] = len(big)
        report["constructed_snakes"] = count
        if count < p21 * p21:
            raise RuntimeError(f"concatenated tiling has {count} snakes, fewer than Φ(21)²")
    return report

"""
Linear orders on [n] and the weak Bruhat order.

Conventions (used everywhere in this repo):
- An order is stored as its word x1 x2 ... xn, WORST first, BEST last.
  "i is preferred to j" means i appears later in the word.
- An inversion is a pair (i, j), i < j, with j placed before i.
- Inversion sets are int bitsets over the triangular index
  (i, j) -> (j-1)(j-2)/2 + i - 1, so pair tests and subset tests are O(1).

Tables/objects: LinearOrder, InversionSet, MaximalChain, ReducedWord.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

import networkx as nx


class ReducedWordError(ValueError):
    """A letter sequence that is not a reduced word of the longest order."""


# ─── Pair indexing ───────────────────────────────────────────────

def pair_index(i: int, j: int) -> int:
    if not 1 <= i < j:
        raise ValueError(f"pair must satisfy 1 <= i < j, got ({i}, {j})")
    return (j - 1) * (j - 2) // 2 + i - 1


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def all_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for j in range(2, n + 1) for i in range(1, j)]


# ─── Linear orders ───────────────────────────────────────────────

@dataclass(frozen=True, order=True)
class LinearOrder:
    word: tuple[int, ...]

    def __post_init__(self):
        word = tuple(self.word)
        object.__setattr__(self, "word", word)
        if not word:
            raise ValueError("a linear order needs at least one alternative")
        if sorted(word) != list(range(1, len(word) + 1)):
            raise ValueError(f"word {list(word)} is not a permutation of 1..{len(word)}")

    @property
    def n(self) -> int:
        return len(self.word)

    def position(self, x: int) -> int:
        """0-based rank from the worst end."""
        return self.word.index(x)

    def prefers(self, i: int, j: int) -> bool:
        return self.position(i) > self.position(j)

    def __str__(self) -> str:
        sep = "" if self.n < 10 else ","
        return sep.join(str(x) for x in self.word)

    def __repr__(self) -> str:
        return f"LinearOrder({str(self)})"


def alpha(n: int) -> LinearOrder:
    return LinearOrder(tuple(range(1, n + 1)))


def omega(n: int) -> LinearOrder:
    return LinearOrder(tuple(range(n, 0, -1)))


def all_orders(n: int) -> Iterator[LinearOrder]:
    """All n! orders, lexicographic by word."""
    for word in itertools.permutations(range(1, n + 1)):
        yield LinearOrder(word)


def parse_order(text: str) -> LinearOrder:
    """Parse the command-line form "3,1,2" (worst-to-best)."""
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) == 1 and len(parts[0]) > 1:
        parts = list(parts[0])  # compact "312" form, single digits only
    try:
        return LinearOrder(tuple(int(p) for p in parts))
    except ValueError as e:
        raise ValueError(f"cannot read order {text!r}: {e}")


def _same_n(sigma: LinearOrder, tau: LinearOrder):
    if sigma.n != tau.n:
        raise ValueError(f"orders live on different ground sets (n={sigma.n} vs n={tau.n})")


# ─── Inversion sets ──────────────────────────────────────────────

@dataclass(frozen=True)
class InversionSet:
    n: int
    bits: int

    def __contains__(self, pair) -> bool:
        i, j = pair
        return bool(self.bits >> pair_index(i, j) & 1)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset(p for p in all_pairs(self.n) if p in self)

    def issubset(self, other: "InversionSet") -> bool:
        return self.bits & ~other.bits == 0

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "InversionSet":
        bits = 0
        for i, j in pairs:
            if j > n:
                raise ValueError(f"pair ({i}, {j}) outside [1..{n}]")
            bits |= 1 << pair_index(i, j)
        return cls(n, bits)


def inversions(sigma: LinearOrder) -> InversionSet:
    bits = 0
    seen: list[int] = []
    for x in sigma.word:
        for y in seen:
            if y > x:
                bits |= 1 << pair_index(x, y)
        seen.append(x)
    return InversionSet(sigma.n, bits)


def inversion_count(sigma: LinearOrder) -> int:
    return len(inversions(sigma))


def decode(inv: InversionSet) -> LinearOrder:
    """The order whose inversion set is `inv`; rejects sets no order has."""
    n = inv.n
    slots = [0] * (n + 1)
    for x in range(1, n + 1):
        # elements placed before x
        before = sum(1 for y in range(1, x) if (y, x) not in inv)
        before += sum(1 for y in range(x + 1, n + 1) if (x, y) in inv)
        slots[x] = before
    word = [0] * n
    for x in range(1, n + 1):
        if word[slots[x]]:
            raise ValueError("inversion set is not transitively closed (or its complement is not)")
        word[slots[x]] = x
    order = LinearOrder(tuple(word))
    if inversions(order).bits != inv.bits:
        raise ValueError("inversion set is not transitively closed (or its complement is not)")
    return order


def _close(n: int, bits: int) -> int:
    """Close a pair set under (i,j),(j,k) => (i,k), Warshall style."""
    down = [0] * (n + 1)  # down[a]: mask of b < a with (b, a) in the set
    for j in range(2, n + 1):
        for i in range(1, j):
            if bits >> pair_index(i, j) & 1:
                down[j] |= 1 << i
    for m in range(1, n + 1):
        if not down[m]:
            continue
        for a in range(m + 1, n + 1):
            if down[a] >> m & 1:
                down[a] |= down[m]
    out = 0
    for j in range(2, n + 1):
        for i in range(1, j):
            if down[j] >> i & 1:
                out |= 1 << pair_index(i, j)
    return out


def is_valid_inversion_set(inv: InversionSet) -> bool:
    full = (1 << pair_count(inv.n)) - 1
    return _close(inv.n, inv.bits) == inv.bits and _close(inv.n, full ^ inv.bits) == full ^ inv.bits


# ─── Weak Bruhat order ───────────────────────────────────────────

def bruhat_leq(sigma: LinearOrder, tau: LinearOrder) -> bool:
    _same_n(sigma, tau)
    return inversions(sigma).issubset(inversions(tau))


def covers(sigma: LinearOrder, tau: LinearOrder) -> bool:
    """True iff tau covers sigma (one more inversion, containing sigma's)."""
    _same_n(sigma, tau)
    a, b = inversions(sigma), inversions(tau)
    return a.issubset(b) and len(b) == len(a) + 1


def _swap(word: tuple[int, ...], p: int) -> tuple[int, ...]:
    # p is 0-based: exchanges word[p] and word[p+1]
    return word[:p] + (word[p + 1], word[p]) + word[p + 2:]


def _ascents(word: tuple[int, ...]) -> list[int]:
    return [p for p in range(len(word) - 1) if word[p] < word[p + 1]]


def cover_successors(sigma: LinearOrder) -> frozenset[LinearOrder]:
    return frozenset(LinearOrder(_swap(sigma.word, p)) for p in _ascents(sigma.word))


def cover_predecessors(sigma: LinearOrder) -> frozenset[LinearOrder]:
    w = sigma.word
    return frozenset(
        LinearOrder(_swap(w, p)) for p in range(len(w) - 1) if w[p] > w[p + 1]
    )


def weak_join(sigma: LinearOrder, tau: LinearOrder) -> LinearOrder:
    _same_n(sigma, tau)
    bits = _close(sigma.n, inversions(sigma).bits | inversions(tau).bits)
    return decode(InversionSet(sigma.n, bits))


def weak_meet(sigma: LinearOrder, tau: LinearOrder) -> LinearOrder:
    _same_n(sigma, tau)
    n = sigma.n
    full = (1 << pair_count(n)) - 1
    keep = _close(n, (full ^ inversions(sigma).bits) | (full ^ inversions(tau).bits))
    return decode(InversionSet(n, full ^ keep))


def bruhat_digraph(n: int) -> nx.DiGraph:
    """Covers of the weak order; edge attribute `letter` is the swap position (1-based)."""
    g = nx.DiGraph()
    for sigma in all_orders(n):
        g.add_node(sigma)
        for p in _ascents(sigma.word):
            g.add_edge(sigma, LinearOrder(_swap(sigma.word, p)), letter=p + 1)
    return g


# ─── Maximal chains & reduced words ──────────────────────────────

@dataclass(frozen=True)
class MaximalChain:
    orders: tuple[LinearOrder, ...]

    def __post_init__(self):
        orders = tuple(self.orders)
        object.__setattr__(self, "orders", orders)
        if not orders:
            raise ValueError("empty chain")
        n = orders[0].n
        if len(orders) != pair_count(n) + 1:
            raise ValueError(f"a maximal chain on n={n} has {pair_count(n) + 1} orders, got {len(orders)}")
        if orders[0] != alpha(n) or orders[-1] != omega(n):
            raise ValueError("a maximal chain runs from alpha to omega")
        for a, b in zip(orders, orders[1:]):
            if not covers(a, b):
                raise ValueError(f"{a} -> {b} is not a Bruhat cover")

    @property
    def n(self) -> int:
        return self.orders[0].n


@dataclass(frozen=True, order=True)
class ReducedWord:
    n: int
    letters: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))


def maximal_chains(n: int, limit: Optional[int] = None) -> Iterator[MaximalChain]:
    """Depth-first, lexicographic by swap position; stops after `limit` chains."""
    if n < 1:
        raise ValueError("n must be >= 1")
    top = tuple(range(n, 0, -1))
    emitted = 0
    stack: list[tuple[int, ...]] = [tuple(range(1, n + 1))]

    def walk(word):
        nonlocal emitted
        if limit is not None and emitted >= limit:
            return
        if word == top:
            emitted += 1
            yield MaximalChain(tuple(LinearOrder(w) for w in stack))
            return
        for p in _ascents(word):
            nxt = _swap(word, p)
            stack.append(nxt)
            yield from walk(nxt)
            stack.pop()
            if limit is not None and emitted >= limit:
                return

    yield from walk(stack[0])


def chain_to_reduced_word(chain: MaximalChain) -> ReducedWord:
    letters = []
    for a, b in zip(chain.orders, chain.orders[1:]):
        diff = [p for p in range(a.n) if a.word[p] != b.word[p]]
        letters.append(diff[0] + 1)
    return ReducedWord(chain.n, tuple(letters))


def reduced_word_to_chain(w: ReducedWord) -> MaximalChain:
    n = w.n
    if len(w.letters) != pair_count(n):
        raise ReducedWordError(f"a reduced word of omega on n={n} has {pair_count(n)} letters, got {len(w.letters)}")
    word = tuple(range(1, n + 1))
    orders = [LinearOrder(word)]
    for step, s in enumerate(w.letters, start=1):
        if not 1 <= s <= n - 1:
            raise ReducedWordError(f"letter {s} at step {step} is outside 1..{n - 1}")
        p = s - 1
        if word[p] > word[p + 1]:
            raise ReducedWordError(f"letter s{s} at step {step} removes an inversion; word is not reduced")
        word = _swap(word, p)
        orders.append(LinearOrder(word))
    return MaximalChain(tuple(orders))


def reduced_words(n: int) -> Iterator[ReducedWord]:
    for chain in maximal_chains(n):
        yield chain_to_reduced_word(chain)


def commutation_class(w: ReducedWord) -> frozenset[ReducedWord]:
    """Closure under swapping adjacent letters s_i s_j with |i - j| > 1."""
    reduced_word_to_chain(w)
    seen = {w.letters}
    queue = deque([w.letters])
    while queue:
        letters = queue.popleft()
        for p in range(len(letters) - 1):
            if abs(letters[p] - letters[p + 1]) > 1:
                nxt = _swap(letters, p)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return frozenset(ReducedWord(w.n, letters) for letters in seen)


def commutation_classes(n: int) -> list[frozenset[ReducedWord]]:
    """Partition of all reduced words of omega, ordered by smallest member."""
    classes = []
    covered: set[ReducedWord] = set()
    for w in sorted(reduced_words(n)):
        if w in covered:
            continue
        cls = commutation_class(w)
        covered |= cls
        classes.append(cls)
    return classes

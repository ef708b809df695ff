"""
Condorcet-domain predicates, castings and the domains they induce,
the simple majority rule, and domains built from chains and reduced words.

A Domain is a set of LinearOrders on a common [n]. The checked constructors
insist on alpha and omega being present; the raw predicates do not.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional

import networkx as nx

from config import get_settings
from kinds import CYCLIC_PATTERNS, KINDS, get_kind, kinds_containing
from orders import (
    LinearOrder, MaximalChain, ReducedWord, _ascents, _swap, all_orders, alpha, bruhat_leq,
    covers, omega, reduced_word_to_chain, weak_join, weak_meet,
)

log = logging.getLogger(__name__)

Triple = tuple[int, int, int]


class CastingError(ValueError):
    """A chain whose restriction to some triple fits no local kind, or several."""


# ─── Domains ─────────────────────────────────────────────────────

@dataclass(frozen=True)
class Domain:
    n: int
    orders: frozenset[LinearOrder]

    def __post_init__(self):
        object.__setattr__(self, "orders", frozenset(self.orders))
        for o in self.orders:
            if o.n != self.n:
                raise ValueError(f"order {o} does not live on [1..{self.n}]")

    def __contains__(self, sigma) -> bool:
        return sigma in self.orders

    def __len__(self) -> int:
        return len(self.orders)

    def __iter__(self) -> Iterator[LinearOrder]:
        return iter(sorted(self.orders))

    def has_ends(self) -> bool:
        return alpha(self.n) in self.orders and omega(self.n) in self.orders


def make_domain(orders: Iterable, n: Optional[int] = None, require_ends: bool = True) -> Domain:
    """Build a Domain from LinearOrders or plain words."""
    items = [o if isinstance(o, LinearOrder) else LinearOrder(tuple(o)) for o in orders]
    if n is None:
        if not items:
            raise ValueError("cannot infer n from an empty domain")
        n = items[0].n
    if len(set(items)) != len(items):
        raise ValueError("domain lists the same order twice")
    d = Domain(n, frozenset(items))
    if require_ends and not d.has_ends():
        raise ValueError(f"domain must contain alpha={alpha(n)} and omega={omega(n)}")
    return d


def full_domain(n: int) -> Domain:
    return Domain(n, frozenset(all_orders(n)))


# ─── Restrictions to triples ─────────────────────────────────────

def restrict(sigma: LinearOrder, Y: Iterable[int]) -> tuple[int, ...]:
    """Subword of sigma on Y, keeping Y's own labels."""
    keep = set(Y)
    if not keep:
        raise ValueError("cannot restrict to an empty set of alternatives")
    bad = [y for y in keep if not 1 <= y <= sigma.n]
    if bad:
        raise ValueError(f"alternatives {sorted(bad)} are outside [1..{sigma.n}]")
    return tuple(x for x in sigma.word if x in keep)


def triples(n: int) -> list[Triple]:
    return list(itertools.combinations(range(1, n + 1), 3))


def local_word(sigma: LinearOrder, t: Triple) -> tuple[int, int, int]:
    """Restriction of sigma to t, relabeled i,j,k -> 1,2,3."""
    label = {t[0]: 1, t[1]: 2, t[2]: 3}
    return tuple(label[x] for x in sigma.word if x in label)


def restriction_sets(D: Domain) -> dict[Triple, set]:
    return {t: {local_word(s, t) for s in D.orders} for t in triples(D.n)}


def is_cyclic(D: Domain) -> bool:
    if len(D) < 3:
        return False
    for t, words in restriction_sets(D).items():
        if any(p <= words for p in CYCLIC_PATTERNS):
            return True
    return False


def is_peak_pit(D: Domain) -> bool:
    peak, pit = KINDS["peak"].words, KINDS["pit"].words
    return all(w <= peak or w <= pit for w in restriction_sets(D).values())


def is_complete_cd(D: Domain) -> bool:
    limit = get_settings().max_enum_n
    if D.n > limit:
        raise ValueError(f"completeness check enumerates n! orders; n={D.n} exceeds {limit}")
    if is_cyclic(D):
        return False
    rsets = restriction_sets(D)
    for sigma in all_orders(D.n):
        if sigma in D.orders:
            continue
        # adding sigma must close a cyclic pattern on some triple
        closes = False
        for t, words in rsets.items():
            w = local_word(sigma, t)
            if w in words:
                continue
            if any(w in p and (p - {w}) <= words for p in CYCLIC_PATTERNS):
                closes = True
                break
        if not closes:
            log.debug("%s can be added to the domain without a cycle", sigma)
            return False
    return True


def complete_cds_n3() -> dict[str, Domain]:
    """The four complete Condorcet domains on three alternatives, by kind."""
    return {k: make_domain(sorted(kind.words), n=3) for k, kind in KINDS.items()}


# ─── Connectivity in the Bruhat graph ────────────────────────────

def bruhat_subgraph(D: Domain) -> nx.Graph:
    """Undirected cover graph induced on D."""
    g = nx.Graph()
    g.add_nodes_from(D.orders)
    for sigma in D.orders:
        for p in _ascents(sigma.word):
            tau = LinearOrder(_swap(sigma.word, p))
            if tau in D.orders:
                g.add_edge(sigma, tau)
    return g


def is_semi_connected(D: Domain) -> bool:
    a, w = alpha(D.n), omega(D.n)
    if a not in D.orders or w not in D.orders:
        raise ValueError("semi-connectedness is defined for domains containing alpha and omega")
    return nx.has_path(bruhat_subgraph(D), a, w)


def is_connected(D: Domain) -> bool:
    if not D.orders:
        return False
    return nx.is_connected(bruhat_subgraph(D))


def chain_in_domain(D: Domain) -> Optional[MaximalChain]:
    """A maximal Bruhat chain alpha -> omega inside D, or None."""
    a, w = alpha(D.n), omega(D.n)
    if a not in D.orders or w not in D.orders:
        return None
    parent = {a: None}
    stack = [a]
    while stack:
        sigma = stack.pop()
        if sigma == w:
            path = []
            while sigma is not None:
                path.append(sigma)
                sigma = parent[sigma]
            return MaximalChain(tuple(reversed(path)))
        for p in _ascents(sigma.word):
            tau = LinearOrder(_swap(sigma.word, p))
            if tau in D.orders and tau not in parent:
                parent[tau] = sigma
                stack.append(tau)
    return None


def is_covering_sublattice(D: Domain) -> bool:
    """Closed under weak meet/join, and every cover inside D is a Bruhat cover."""
    members = sorted(D.orders)
    for s, t in itertools.combinations(members, 2):
        if weak_join(s, t) not in D.orders or weak_meet(s, t) not in D.orders:
            return False
    # covers of the induced order must be Bruhat covers
    for s in members:
        above = [t for t in members if t != s and bruhat_leq(s, t)]
        for t in above:
            if any(u != t and bruhat_leq(u, t) for u in above):
                continue
            if not covers(s, t):
                return False
    return True


# ─── Castings ────────────────────────────────────────────────────

@dataclass(frozen=True)
class Casting:
    n: int
    assignment: Mapping[Triple, str]

    def __post_init__(self):
        need = set(triples(self.n))
        have = set(self.assignment)
        if have != need:
            missing = sorted(need - have)
            extra = sorted(have - need)
            raise ValueError(f"casting must cover every triple exactly (missing {missing}, extra {extra})")
        for t, k in self.assignment.items():
            get_kind(k)
        object.__setattr__(self, "assignment", dict(sorted(self.assignment.items())))

    def kind_of(self, t: Triple) -> str:
        return self.assignment[tuple(t)]

    @classmethod
    def uniform(cls, n: int, kind: str) -> "Casting":
        return cls(n, {t: kind for t in triples(n)})


def domain_of_casting(c: Casting) -> Domain:
    """All orders whose every triple restriction lies in the assigned kind."""
    n = c.n
    limit = get_settings().max_enum_n + 4
    if n > limit:
        raise ValueError(f"casting domains are enumerated explicitly; n={n} exceeds {limit}")
    by_elem: dict[int, list] = {x: [] for x in range(1, n + 1)}
    for t, k in c.assignment.items():
        label = {t[0]: 1, t[1]: 2, t[2]: 3}
        viable = KINDS[k].prefixes
        for x in t:
            by_elem[x].append((t, label, viable))

    found: list[LinearOrder] = []
    word: list[int] = []
    pos: dict[int, int] = {}

    def feasible(x: int) -> bool:
        for t, label, viable in by_elem[x]:
            placed = sorted((pos[e], e) for e in t if e in pos)
            prefix = tuple(label[e] for _, e in placed) + (label[x],)
            if prefix not in viable:
                return False
        return True

    def extend():
        if len(word) == n:
            found.append(LinearOrder(tuple(word)))
            return
        for x in range(1, n + 1):
            if x in pos or not feasible(x):
                continue
            pos[x] = len(word)
            word.append(x)
            extend()
            word.pop()
            del pos[x]

    extend()
    log.debug("casting on n=%d admits %d orders", n, len(found))
    return Domain(n, frozenset(found))


def casting_of_chain(chain: MaximalChain) -> Casting:
    d = Domain(chain.n, frozenset(chain.orders))
    assignment = {}
    for t, words in restriction_sets(d).items():
        fits = kinds_containing(words)
        if len(fits) != 1:
            names = [k.key for k in fits] or ["none"]
            raise CastingError(f"triple {t}: chain restrictions {sorted(words)} fit {names}")
        assignment[t] = fits[0].key
    return Casting(chain.n, assignment)


def a_domain(chain: MaximalChain) -> Domain:
    return domain_of_casting(casting_of_chain(chain))


def gr_domain(words: Iterable[ReducedWord]) -> Domain:
    """Union of the chains of a set of reduced words (a commutation class)."""
    orders: set[LinearOrder] = set()
    n = None
    for w in words:
        n = w.n
        orders.update(reduced_word_to_chain(w).orders)
    if n is None:
        raise ValueError("no reduced words given")
    return Domain(n, frozenset(orders))


# ─── Opinions and the majority rule ──────────────────────────────

@dataclass(frozen=True)
class Opinion:
    counts: Mapping[LinearOrder, int]

    def __post_init__(self):
        counts = {o: int(c) for o, c in self.counts.items() if c}
        if any(c < 0 for c in counts.values()):
            raise ValueError("voter counts must be non-negative")
        if not counts:
            raise ValueError("an opinion needs at least one voter")
        ns = {o.n for o in counts}
        if len(ns) != 1:
            raise ValueError("all voted orders must share the same n")
        object.__setattr__(self, "counts", dict(sorted(counts.items())))

    @property
    def n(self) -> int:
        return next(iter(self.counts)).n

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def support(self) -> Domain:
        return Domain(self.n, frozenset(self.counts))


@dataclass(frozen=True)
class MajorityRelation:
    n: int
    pairs: frozenset[tuple[int, int]]   # (i, j): i socially preferred to j

    def prefers(self, i: int, j: int) -> bool:
        return (i, j) in self.pairs

    def is_complete(self) -> bool:
        return all(
            (i, j) in self.pairs or (j, i) in self.pairs
            for i, j in itertools.combinations(range(1, self.n + 1), 2)
        )

    def is_transitive(self) -> bool:
        return all(
            (a, c) in self.pairs
            for a, b in self.pairs for b2, c in self.pairs if b == b2 and a != c
        )

    def digraph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(1, self.n + 1))
        g.add_edges_from(self.pairs)
        return g

    def has_cycle(self) -> bool:
        return not nx.is_directed_acyclic_graph(self.digraph())

    def as_order(self) -> Optional[LinearOrder]:
        """The social order (worst first) when the relation is a linear order."""
        if not (self.is_complete() and self.is_transitive()):
            return None
        wins = {x: sum(1 for a, _ in self.pairs if a == x) for x in range(1, self.n + 1)}
        return LinearOrder(tuple(sorted(wins, key=wins.get)))


def majority_relation(nu: Opinion) -> MajorityRelation:
    n = nu.n
    pairs = set()
    for i, j in itertools.combinations(range(1, n + 1), 2):
        for_i = sum(c for o, c in nu.counts.items() if o.prefers(i, j))
        for_j = nu.total - for_i
        if for_i > for_j:
            pairs.add((i, j))
        elif for_j > for_i:
            pairs.add((j, i))
    return MajorityRelation(n, frozenset(pairs))

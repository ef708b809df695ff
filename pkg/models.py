"""
Pydantic models and JSON schemas for the on-disk formats.

Every reader parses, validates the shape with pydantic, then builds the
library object so its own invariants are checked too. Any failure comes out
as a FormatError naming where (line/column or field) and what broke.
Writers emit one canonical line per object so output is byte-stable.
"""

from __future__ import annotations

import json
from typing import Literal

from pydantic import BaseModel, Field, ValidationError, field_validator

from domains import Casting, Domain, Opinion, make_domain
from orders import LinearOrder
from tilings import Spectrum, is_separated_family, members_of, to_bits, validate_spectrum


class FormatError(ValueError):
    """Malformed input file, or one whose content breaks an invariant."""


# ─── Domain ──────────────────────────────────────────────────────

class DomainFile(BaseModel):
    n: int = Field(ge=1)
    orders: list[list[int]]


# ─── Casting ─────────────────────────────────────────────────────

class TripleKind(BaseModel):
    t: list[int] = Field(min_length=3, max_length=3)
    kind: Literal["peak", "pit", "right", "left"]

    @field_validator("t")
    @classmethod
    def _increasing(cls, v: list[int]) -> list[int]:
        if not v[0] < v[1] < v[2]:
            raise ValueError("triple must be increasing")
        return v


class CastingFile(BaseModel):
    n: int = Field(ge=3)
    triples: list[TripleKind]


# ─── Opinion ─────────────────────────────────────────────────────

class Vote(BaseModel):
    order: list[int]
    count: int = Field(ge=0)


class OpinionFile(BaseModel):
    votes: list[Vote] = Field(min_length=1)


# ─── Spectrum / set family ───────────────────────────────────────

class SetsFile(BaseModel):
    n: int = Field(ge=1)
    sets: list[list[int]]


# ─── Parsing helpers ─────────────────────────────────────────────

def _load(text: str, model: type[BaseModel], source: str) -> BaseModel:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"{source}:{e.lineno}:{e.colno}: {e.msg}")
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or "<root>"
        raise FormatError(f"{source}: field {where}: {first['msg']}")


def _order(word: list[int], source: str, n: int | None = None) -> LinearOrder:
    try:
        o = LinearOrder(tuple(word))
    except ValueError as e:
        raise FormatError(f"{source}: {e}")
    if n is not None and o.n != n:
        raise FormatError(f"{source}: order {word} has length {o.n}, expected n={n}")
    return o


def _set_bits(members: list[int], n: int, source: str) -> int:
    if len(set(members)) != len(members) or any(not 1 <= x <= n for x in members):
        raise FormatError(f"{source}: set {members} is not a subset of [1..{n}]")
    return to_bits(members)


def _dump(payload: BaseModel) -> str:
    return payload.model_dump_json() + "\n"


def _sorted_sets(sets) -> list[list[int]]:
    return [members_of(A) for A in sorted(sets, key=lambda s: (s.bit_count(), s))]


# ─── Readers / writers ───────────────────────────────────────────

def read_domain(text: str, source: str = "<domain>") -> Domain:
    f = _load(text, DomainFile, source)
    orders = [_order(w, source, f.n) for w in f.orders]
    if len(set(orders)) != len(orders):
        raise FormatError(f"{source}: distinctness: an order is listed twice")
    return make_domain(orders, n=f.n, require_ends=False)


def write_domain(D: Domain) -> str:
    return _dump(DomainFile(n=D.n, orders=[list(o.word) for o in D]))


def read_casting(text: str, source: str = "<casting>") -> Casting:
    f = _load(text, CastingFile, source)
    assignment = {}
    for tk in f.triples:
        t = tuple(tk.t)
        if t[2] > f.n:
            raise FormatError(f"{source}: triple {list(t)} is outside [1..{f.n}]")
        if t in assignment:
            raise FormatError(f"{source}: triple {list(t)} assigned twice")
        assignment[t] = tk.kind
    try:
        return Casting(f.n, assignment)
    except ValueError as e:
        raise FormatError(f"{source}: {e}")


def write_casting(c: Casting) -> str:
    rows = [TripleKind(t=list(t), kind=k) for t, k in c.assignment.items()]
    return _dump(CastingFile(n=c.n, triples=rows))


def read_opinion(text: str, source: str = "<opinion>") -> Opinion:
    f = _load(text, OpinionFile, source)
    counts: dict[LinearOrder, int] = {}
    for v in f.votes:
        o = _order(v.order, source)
        counts[o] = counts.get(o, 0) + v.count
    try:
        return Opinion(counts)
    except ValueError as e:
        raise FormatError(f"{source}: {e}")


def write_opinion(nu: Opinion) -> str:
    votes = [Vote(order=list(o.word), count=c) for o, c in nu.counts.items()]
    return _dump(OpinionFile(votes=votes))


def read_spectrum(text: str, source: str = "<spectrum>") -> Spectrum:
    f = _load(text, SetsFile, source)
    bits = [_set_bits(s, f.n, source) for s in f.sets]
    if len(set(bits)) != len(bits):
        raise FormatError(f"{source}: distinctness: a set is listed twice")
    try:
        return validate_spectrum(f.n, bits)
    except ValueError as e:
        raise FormatError(f"{source}: {e}")


def write_spectrum(T: Spectrum) -> str:
    return _dump(SetsFile(n=T.n, sets=_sorted_sets(T.sets)))


def read_family(text: str, source: str = "<family>") -> tuple[int, frozenset[int]]:
    """A separated set family (input of the extension step)."""
    f = _load(text, SetsFile, source)
    fam = frozenset(_set_bits(s, f.n, source) for s in f.sets)
    if not is_separated_family(fam):
        raise FormatError(f"{source}: pairwise separated: family is not strongly separated")
    return f.n, fam


def write_family(n: int, sets) -> str:
    return _dump(SetsFile(n=n, sets=_sorted_sets(sets)))


def read_file(path: str, reader):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise FormatError(f"{path}: {e.strerror}")
    return reader(text, source=path)

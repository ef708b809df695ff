"""
The four local domain kinds a casting may assign to a triple i<j<k.
Each kind is the 4-order domain on {1,2,3} cut out by one never-condition;
words are worst-to-best, with the triple relabeled i,j,k -> 1,2,3.
"""

from dataclasses import dataclass, field

LocalWord = tuple[int, int, int]


@dataclass(frozen=True)
class LocalKind:
    key: str
    symbol: str
    name: str
    never: str                       # the never-condition, for reports
    words: frozenset[LocalWord]
    prefixes: frozenset[tuple[int, ...]] = field(init=False, repr=False)

    def __post_init__(self):
        pre = {w[:k] for w in self.words for k in range(4)}
        object.__setattr__(self, "prefixes", frozenset(pre))

    def allows(self, local: LocalWord) -> bool:
        return tuple(local) in self.words

    def allows_prefix(self, prefix: tuple[int, ...]) -> bool:
        return tuple(prefix) in self.prefixes


KINDS: dict[str, LocalKind] = {}

# ─── Peak / pit: the two kinds maximal chains produce ────────────
KINDS["peak"] = LocalKind(
    key="peak",
    symbol="∩",
    name="Peak",
    never="the middle alternative is never the worst",
    words=frozenset({(1, 2, 3), (1, 3, 2), (3, 1, 2), (3, 2, 1)}),
)

KINDS["pit"] = LocalKind(
    key="pit",
    symbol="∪",
    name="Pit",
    never="the middle alternative is never the best",
    words=frozenset({(1, 2, 3), (2, 1, 3), (2, 3, 1), (3, 2, 1)}),
)

# ─── Right / left: never-middle kinds ────────────────────────────
KINDS["right"] = LocalKind(
    key="right",
    symbol="→",
    name="Right",
    never="the largest alternative is never in the middle",
    words=frozenset({(1, 2, 3), (2, 1, 3), (3, 1, 2), (3, 2, 1)}),
)

KINDS["left"] = LocalKind(
    key="left",
    symbol="←",
    name="Left",
    never="the smallest alternative is never in the middle",
    words=frozenset({(1, 2, 3), (1, 3, 2), (2, 3, 1), (3, 2, 1)}),
)

# The two cyclic triples of local words (ijk, jki, kij) and (kji, jik, ikj).
CYCLIC_PATTERNS: tuple[frozenset[LocalWord], ...] = (
    frozenset({(1, 2, 3), (2, 3, 1), (3, 1, 2)}),
    frozenset({(3, 2, 1), (2, 1, 3), (1, 3, 2)}),
)


def get_kind(key: str) -> LocalKind:
    try:
        return KINDS[key]
    except KeyError:
        raise ValueError(f"unknown local kind {key!r} (expected one of {', '.join(KINDS)})")


def get_kind_names() -> dict[str, str]:
    return {k: f"{v.name} ({v.symbol})" for k, v in KINDS.items()}


def kinds_containing(local_words) -> list[LocalKind]:
    """Every kind whose 4-order domain contains all of `local_words`."""
    need = {tuple(w) for w in local_words}
    return [k for k in KINDS.values() if need <= k.words]

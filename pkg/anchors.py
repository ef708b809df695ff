"""
Load reference values (Φ, tiling counts, γ) from anchors.yaml.
"""

import os
from dataclasses import dataclass
from functools import lru_cache

import yaml

ANCHOR_FILE = os.path.join(os.path.dirname(__file__), "anchors.yaml")


@dataclass(frozen=True)
class Anchors:
    phi: dict[int, int]
    phi21_squared: int
    tilings: dict[int, int]
    gamma: dict[int, int]


def _int_map(raw, name: str) -> dict[int, int]:
    if not isinstance(raw, dict):
        raise ValueError(f"{ANCHOR_FILE}: '{name}' must be a mapping")
    return {int(k): int(v) for k, v in raw.items()}


@lru_cache(maxsize=1)
def load_anchors(path: str = ANCHOR_FILE) -> Anchors:
    if not os.path.exists(path):
        raise FileNotFoundError(f"anchor file not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    return Anchors(
        phi=_int_map(data.get("phi"), "phi"),
        phi21_squared=int(data["phi21_squared"]),
        tilings=_int_map(data.get("tilings"), "tilings"),
        gamma=_int_map(data.get("gamma"), "gamma"),
    )

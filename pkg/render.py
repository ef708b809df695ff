"""
Drawings of tilings (SVG, TikZ) and of order posets (DOT).

Geometry comes from tilings.xi: vertex A sits at the sum of xi_i over i in A.
SVG coordinates are rounded to integers once, at emission, so output is
byte-stable for a given input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from graphviz import Digraph

from orders import LinearOrder, bruhat_digraph
from tilings import (
    Spectrum, edges, i_track, ideal_chain, in_sigma, snake_poset, tile_center,
    tiles, vertex_position, xi,
)

TARGETS = ("svg", "tikz", "dot")

# one colour per edge colour i, cycled
PALETTE = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f",
]

TILE_FILL = "#f3f1ea"
TRACK_FILL = "#fde9a9"


@dataclass(frozen=True)
class RenderSpec:
    target: str = "svg"
    scale: float = 60.0
    snake: Optional[LinearOrder] = None
    track: Optional[int] = None
    labels: bool = False

    def __post_init__(self):
        if self.target not in TARGETS:
            raise ValueError(f"unknown render target {self.target!r} (expected one of {', '.join(TARGETS)})")
        if not self.scale > 0:
            raise ValueError("scale must be positive")
        if self.target == "svg" and self.scale < 40:
            raise ValueError("svg output needs scale >= 40")


def _color(i: int) -> str:
    return PALETTE[(i - 1) % len(PALETTE)]


def _check_overlays(T: Spectrum, spec: RenderSpec):
    if spec.snake is not None and not in_sigma(T, spec.snake):
        raise ValueError(f"snake overlay {spec.snake} is not an order of this tiling")
    if spec.track is not None and not 1 <= spec.track <= T.n:
        raise ValueError(f"track overlay {spec.track} outside [1..{T.n}]")


def render_tiling(T: Spectrum, spec: RenderSpec = RenderSpec()) -> str:
    _check_overlays(T, spec)
    if spec.target == "svg":
        return _render_svg(T, spec)
    if spec.target == "tikz":
        return _render_tikz(T, spec)
    return render_sigma_dot(T)


# ─── SVG ─────────────────────────────────────────────────────────

SVG_PREAMBLE = """\
<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="%(width)d" height="%(height)d" viewBox="0 0 %(width)d %(height)d">
<rect x="0" y="0" width="%(width)d" height="%(height)d" fill="#ffffff"/>
"""

SVG_POSTAMBLE = "</svg>\n"


class _Canvas:
    """Collects unit-geometry points, maps them to integer pixels on emission."""

    def __init__(self, points, scale: float, pad: float = 0.5):
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        self.scale = scale
        self.min_x = min(xs) - pad
        self.max_y = max(ys) + pad
        self.width = round((max(xs) - min(xs) + 2 * pad) * scale)
        self.height = round((max(ys) - min(ys) + 2 * pad) * scale)
        self.commands: list[str] = []

    def px(self, p) -> tuple[int, int]:
        return round((p[0] - self.min_x) * self.scale), round((self.max_y - p[1]) * self.scale)

    def _pts(self, points) -> str:
        return " ".join("%d,%d" % self.px(p) for p in points)

    def polygon(self, points, cls: str, fill: str):
        self.commands.append(f'<polygon class="{cls}" points="{self._pts(points)}" fill="{fill}" stroke="none"/>')

    def line(self, a, b, cls: str, color: str, width: int = 2):
        (x1, y1), (x2, y2) = self.px(a), self.px(b)
        self.commands.append(
            f'<line class="{cls}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{color}" stroke-width="{width}"/>'
        )

    def polyline(self, points, cls: str, color: str, width: int = 5):
        self.commands.append(
            f'<polyline class="{cls}" points="{self._pts(points)}" fill="none" stroke="{color}" '
            f'stroke-width="{width}" stroke-linejoin="round" opacity="0.6"/>'
        )

    def circle(self, p, cls: str, r: int = 3):
        x, y = self.px(p)
        self.commands.append(f'<circle class="{cls}" cx="{x}" cy="{y}" r="{r}" fill="#000000"/>')

    def text(self, p, label: str, cls: str):
        x, y = self.px(p)
        self.commands.append(
            f'<text class="{cls}" x="{x}" y="{y}" font-size="12" text-anchor="middle" '
            f'dominant-baseline="middle">{label}</text>'
        )

    def document(self) -> str:
        head = SVG_PREAMBLE % {"width": self.width, "height": self.height}
        return head + "\n".join(self.commands) + "\n" + SVG_POSTAMBLE


def _render_svg(T: Spectrum, spec: RenderSpec) -> str:
    vectors = xi(T.n)
    pos = {A: vertex_position(T.n, A, vectors) for A in T.ordered()}
    canvas = _Canvas(list(pos.values()), spec.scale)
    all_tiles = tiles(T)
    for t in all_tiles:
        canvas.polygon([pos[v] for v in t.vertices], "tile", TILE_FILL)
    for A, B, x in edges(T):
        canvas.line(pos[A], pos[B], "edge", _color(x))
    for A in T.ordered():
        canvas.circle(pos[A], "vertex")
    # overlays
    if spec.track is not None:
        for t in i_track(T, spec.track):
            canvas.polygon([pos[v] for v in t.vertices], "track", TRACK_FILL)
    if spec.labels:
        for t in all_tiles:
            canvas.text(tile_center(T.n, t, vectors), f"{t.i}{t.j}", "label")
    if spec.snake is not None:
        canvas.polyline([pos[A] for A in ideal_chain(spec.snake)], "snake", "#000000")
    return canvas.document()


# ─── TikZ ────────────────────────────────────────────────────────

def _xy(p) -> str:
    return f"({p[0]:.3f},{p[1]:.3f})"


def _render_tikz(T: Spectrum, spec: RenderSpec) -> str:
    vectors = xi(T.n)
    pos = {A: vertex_position(T.n, A, vectors) for A in T.ordered()}
    lines = [
        f"% rhombus tiling of Z_{T.n}",
        f"\\begin{{tikzpicture}}[scale={spec.scale / 40:.3f},"
        " tile/.style={fill=black!5, draw=none},"
        " track/.style={fill=yellow!40, draw=none},"
        " edge/.style={line width=0.6pt},"
        " snake/.style={line width=2pt, opacity=0.6}]",
    ]
    track = set(i_track(T, spec.track)) if spec.track is not None else set()
    for t in tiles(T):
        style = "tile,track" if t in track else "tile"
        path = " -- ".join(_xy(pos[v]) for v in t.vertices)
        lines.append(f"\\filldraw[{style}] {path} -- cycle;")
    for A, B, x in edges(T):
        lines.append(f"\\draw[edge, color={{rgb,255:red,{_rgb(_color(x))}}}] {_xy(pos[A])} -- {_xy(pos[B])};")
    for A in T.ordered():
        lines.append(f"\\fill {_xy(pos[A])} circle (1.2pt);")
    if spec.labels:
        for t in tiles(T):
            lines.append(f"\\node[font=\\scriptsize] at {_xy(tile_center(T.n, t, vectors))} {{{t.i}{t.j}}};")
    if spec.snake is not None:
        path = " -- ".join(_xy(pos[A]) for A in ideal_chain(spec.snake))
        lines.append(f"\\draw[snake] {path};")
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines) + "\n"


def _rgb(hex_color: str) -> str:
    r, g, b = (int(hex_color[k:k + 2], 16) for k in (1, 3, 5))
    return f"{r};green,{g};blue,{b}"


# ─── DOT ─────────────────────────────────────────────────────────

def render_bruhat_dot(n: int) -> str:
    """Bruhat digraph: nodes are words, edges carry the swap letter."""
    if not 1 <= n <= 5:
        raise ValueError("the Bruhat digraph is exported for 1 <= n <= 5")
    g = bruhat_digraph(n)
    dot = Digraph(comment=f"weak Bruhat order, n={n}")
    dot.attr(rankdir="BT")
    for sigma in sorted(g.nodes):
        dot.node(str(sigma), str(sigma))
    for a, b, data in sorted(g.edges(data=True), key=lambda e: (e[0], e[1])):
        dot.edge(str(a), str(b), label=f"s{data['letter']}")
    return dot.source


def render_sigma_dot(T: Spectrum) -> str:
    """Σ(T) as a poset under the weak order, covers only."""
    g = snake_poset(T)
    dot = Digraph(comment=f"snake poset, n={T.n}, {g.number_of_nodes()} orders")
    dot.attr(rankdir="BT")
    for sigma in sorted(g.nodes):
        dot.node(str(sigma), str(sigma))
    for a, b in sorted(g.edges):
        dot.edge(str(a), str(b))
    return dot.source

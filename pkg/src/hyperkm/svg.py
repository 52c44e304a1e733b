"""Deterministic SVG rendering of disk scenes.

Output depends only on the scene and the style table version: coordinates
are printed with a fixed number of decimals and elements are emitted in the
scene's order.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence
from xml.sax.saxutils import escape

from . import __version__
from . import lattice as L
from .disk import DiskGeodesic, PolygonRegion, project_root_line, region_polygon
from .errors import DomainError

STYLES = {
    "v1": {
        "background": "#ffffff",
        "circle_stroke": "#000000",
        "circle_width": 1.5,
        "line_stroke": "#7f7f7f",
        "line_width": 0.6,
        "emph_stroke": "#c0392b",
        "emph_width": 1.6,
        "fill": "#f5c542",
        "fill_opacity": 0.55,
        "font_size": 12,
        "label_color": "#1a1a1a",
        "margin": 16,
    },
}
DEFAULT_STYLE = "v1"


@dataclass(frozen=True)
class SceneLine:
    root: tuple[int, int, int]
    label: str | None = None
    emphasis: bool = False


@dataclass(frozen=True)
class TesselationScene:
    lines: tuple[SceneLine, ...] = ()
    region: tuple[tuple[int, int, int], ...] | None = None
    size: int = 600
    labels: bool = True
    shade: bool = True
    style: str = DEFAULT_STYLE

    def to_json(self) -> dict:
        return {
            "lines": [{"root": list(s.root), "label": s.label, "emphasis": s.emphasis} for s in self.lines],
            "region": [list(r) for r in self.region] if self.region else None,
            "size": self.size, "labels": self.labels, "shade": self.shade, "style": self.style,
        }


def _fmt(x: float) -> str:
    s = f"{x:.4f}"
    return "0.0000" if s == "-0.0000" else s


def orbit_roots(depth: int) -> list[tuple[int, int, int]]:
    """Positive real roots reached from the simple roots by at most ``depth`` reflections."""
    seen = {L.to_coords(a) for a in L.SIMPLE_ROOTS}
    frontier = list(L.SIMPLE_ROOTS)
    for _ in range(depth):
        nxt = []
        for n in frontier:
            for a in L.SIMPLE_ROOTS:
                img = L.reflect(a, n)
                co = L.to_coords(img)
                if co[0] < 0 or co[1] < 0 or co[2] < 0:
                    img = -img
                    co = L.to_coords(img)
                if co not in seen:
                    seen.add(co)
                    nxt.append(img)
        frontier = nxt
    return sorted(seen, key=lambda c: (sum(c), c))


def _simple_label(co: Sequence[int]) -> str | None:
    for lab, a in zip(L.SIMPLE_LABELS, L.SIMPLE_ROOTS):
        if tuple(co) == L.to_coords(a):
            return f"α{lab}"
    return None


def fundamental_scene(depth: int = 5, size: int = 600, labels: bool = True,
                      shade: bool = True) -> TesselationScene:
    """Tesselation lines to the given reflection depth with the fundamental triangle shaded."""
    lines = []
    for co in orbit_roots(depth):
        lab = _simple_label(co)
        lines.append(SceneLine(co, lab, lab is not None))
    region = tuple(L.to_coords(a) for a in L.SIMPLE_ROOTS)
    return TesselationScene(tuple(lines), region, size, labels, shade)


def region_scene(roots: Sequence[Sequence[int]], depth: int = 3, size: int = 600,
                 labels: bool = True, shade: bool = True) -> TesselationScene:
    """Background tesselation plus the lines of ``roots`` emphasised and their region shaded."""
    chosen = [tuple(r) for r in roots]
    lines = [SceneLine(co) for co in orbit_roots(depth) if co not in chosen]
    for k, co in enumerate(chosen, 1):
        lines.append(SceneLine(co, f"β{k}", True))
    return TesselationScene(tuple(lines), tuple(chosen), size, labels, shade)


class _Canvas:
    def __init__(self, size: int, margin: float):
        self.c = size / 2
        self.r = size / 2 - margin

    def xy(self, p: tuple[float, float]) -> tuple[float, float]:
        return (self.c + self.r * p[0], self.c - self.r * p[1])

    def pt(self, p) -> str:
        x, y = self.xy(p)
        return f"{_fmt(x)} {_fmt(y)}"


def _sweep(canvas: _Canvas, p1, p2, center) -> int:
    (x1, y1), (x2, y2), (cx, cy) = canvas.xy(p1), canvas.xy(p2), canvas.xy(center)
    cross = (x1 - cx) * (y2 - cy) - (y1 - cy) * (x2 - cx)
    return 1 if cross > 0 else 0


def _segment(canvas: _Canvas, g: DiskGeodesic, p1, p2) -> str:
    """Path command continuing from ``p1`` to ``p2`` along ``g``."""
    if g.kind == "diameter":
        return f"L {canvas.pt(p2)}"
    rad = _fmt(g.radius * canvas.r)
    return f"A {rad} {rad} 0 0 {_sweep(canvas, p1, p2, g.center)} {canvas.pt(p2)}"


def _geodesic_path(canvas: _Canvas, g: DiskGeodesic) -> str:
    p1, p2 = g.endpoints
    return f"M {canvas.pt(p1)} {_segment(canvas, g, p1, p2)}"


def _region_path(canvas: _Canvas, poly: PolygonRegion) -> str:
    geos = [project_root_line(r) for r in poly.roots]
    pts = [v.point() for v in poly.vertices]
    k = len(pts)
    # vertex k-1 and vertex k both lie on edge order[k]
    parts = [f"M {canvas.pt(pts[-1])}"]
    for i in range(k):
        edge = geos[poly.order[i]]
        parts.append(_segment(canvas, edge, pts[i - 1], pts[i]))
    parts.append("Z")
    return " ".join(parts)


def render_svg(scene: TesselationScene) -> str:
    if scene.style not in STYLES:
        raise DomainError(f"unknown style {scene.style!r}")
    st = STYLES[scene.style]
    canvas = _Canvas(scene.size, st["margin"])
    s = scene.size
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{s}" height="{s}" '
        f'viewBox="0 0 {s} {s}">',
        f"<!-- hyperkm {__version__} style {scene.style} -->",
        f'<rect x="0" y="0" width="{s}" height="{s}" fill="{st["background"]}"/>',
    ]
    if scene.region and scene.shade:
        poly = region_polygon([L.to_matrix(r) for r in scene.region])
        if poly.is_finite:
            out.append(f'<path class="region" d="{_region_path(canvas, poly)}" fill="{st["fill"]}" '
                       f'fill-opacity="{st["fill_opacity"]}" stroke="none"/>')
    plain = [ln for ln in scene.lines if not ln.emphasis]
    emph = [ln for ln in scene.lines if ln.emphasis]
    for ln in plain + emph:
        g = project_root_line(L.to_matrix(ln.root))
        color = st["emph_stroke"] if ln.emphasis else st["line_stroke"]
        width = st["emph_width"] if ln.emphasis else st["line_width"]
        out.append(f'<path class="geodesic" data-root="{",".join(map(str, ln.root))}" '
                   f'd="{_geodesic_path(canvas, g)}" fill="none" stroke="{color}" stroke-width="{width}"/>')
    out.append(f'<circle cx="{_fmt(canvas.c)}" cy="{_fmt(canvas.c)}" r="{_fmt(canvas.r)}" fill="none" '
               f'stroke="{st["circle_stroke"]}" stroke-width="{st["circle_width"]}"/>')
    if scene.labels:
        for ln in scene.lines:
            if ln.label is None:
                continue
            g = project_root_line(L.to_matrix(ln.root))
            mx, my = g.midpoint()
            if g.kind == "diameter":
                dx, dy = g.direction
                mx, my = 0.55 * dx, 0.55 * dy
            x, y = canvas.xy((mx, my))
            out.append(f'<text x="{_fmt(x + 4)}" y="{_fmt(y - 4)}" font-family="serif" '
                       f'font-size="{st["font_size"]}" fill="{st["label_color"]}">{escape(ln.label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"

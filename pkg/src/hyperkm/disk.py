"""Poincare disk picture of the Weyl group of F.

A matrix ``[[x, y], [y, z]]`` has Minkowski coordinates ``t = (x + z) / 2``,
``u = (x - z) / 2``, ``w = y`` with ``det = t^2 - u^2 - w^2``, and the
bilinear form of F is ``-2 (t t' - u u' - w w')``.  The forward sheet of
``det = 1`` (positive trace, containing the identity) maps to the unit disk by
``(u, w) / (1 + t)``.

Every decision that feeds an index (angles, vertices, closedness) is made in
exact integer arithmetic; floats appear only in coordinates for drawing and
in the Gauss-Bonnet cross-check.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Sequence, Union

from . import lattice as L
from .errors import NonIntegralIndex, NotAPolygon, NotRealRoot, SameLine
from .lattice import SymMat2
from .linalg import primitive

RootLike = Union[SymMat2, Sequence[int]]
INFINITE = math.inf
AREA_TOL = 1e-9


def as_matrix(beta: RootLike) -> SymMat2:
    if isinstance(beta, SymMat2):
        return beta
    return L.to_matrix(tuple(beta))


def _real(beta: RootLike) -> SymMat2:
    n = as_matrix(beta)
    if not n.is_integral or L.norm(n) != 2:
        raise NotRealRoot(f"{n} is not a real root")
    return n


def _line_coeffs(beta: SymMat2) -> tuple[int, int, int]:
    """Coefficients of ``v -> (v, beta)`` on ``(a, b, c)``."""
    return (-int(beta.c), 2 * int(beta.b), -int(beta.a))


# ---------------------------------------------------------------------------
# Projection

def project_point(n: SymMat2) -> tuple[float, float]:
    """Disk image of a forward timelike or null vector (any positive scale)."""
    a, b, c = float(n.a), float(n.b), float(n.c)
    t, u, w = (a + c) / 2, (a - c) / 2, b
    d = t * t - u * u - w * w
    if t <= 0 or d < -1e-12 * max(1.0, t * t):
        raise ValueError(f"{n} is not forward timelike or null")
    if d <= 1e-15 * t * t:
        return (u / t, w / t)
    s = math.sqrt(d)
    t, u, w = t / s, u / s, w / s
    return (u / (1 + t), w / (1 + t))


def cusp_point(p: int, q: int) -> tuple[float, float]:
    """Boundary image of the null vector ``[[p^2, pq], [pq, q^2]]``."""
    s = p * p + q * q
    return ((p * p - q * q) / s, 2 * p * q / s)


@dataclass(frozen=True)
class DiskGeodesic:
    """Fixed line of the reflection in ``root``.

    ``kind`` is ``"diameter"`` (then ``direction`` is a unit vector) or
    ``"arc"`` (then ``center``/``radius`` describe a circle orthogonal to the
    unit circle).  ``cusps`` are the two ideal endpoints as primitive integer
    pairs ``(p, q)``, the null vectors ``[[p^2, pq], [pq, q^2]]``.
    """

    root: SymMat2
    kind: str
    cusps: tuple[tuple[int, int], tuple[int, int]]
    center: tuple[float, float] | None = None
    radius: float | None = None
    direction: tuple[float, float] | None = None

    @property
    def endpoints(self) -> tuple[tuple[float, float], tuple[float, float]]:
        return (cusp_point(*self.cusps[0]), cusp_point(*self.cusps[1]))

    def midpoint(self) -> tuple[float, float]:
        """Point of the geodesic closest to the origin."""
        if self.kind == "diameter":
            return (0.0, 0.0)
        cx, cy = self.center
        d = math.hypot(cx, cy)
        return (cx - self.radius * cx / d, cy - self.radius * cy / d)

    def to_json(self) -> dict:
        out = {"root": list(L.to_coords(self.root)), "matrix": str(self.root), "kind": self.kind,
               "cusps": [list(c) for c in self.cusps]}
        if self.kind == "arc":
            out["center"] = [round(x, 12) for x in self.center]
            out["radius"] = round(self.radius, 12)
        else:
            out["direction"] = [round(x, 12) for x in self.direction]
        return out


def ideal_cusps(beta: RootLike) -> tuple[tuple[int, int], tuple[int, int]]:
    """The two null directions ``[[p^2, pq], [pq, q^2]]`` orthogonal to ``beta``.

    They solve ``c x^2 - 2 b x + a = 0`` in ``x = p / q``; since
    ``b^2 - a c = 1`` the roots ``(b +/- 1) / c`` are rational.
    """
    n = _real(beta)
    a, b, c = int(n.a), int(n.b), int(n.c)
    if c == 0:
        # one root at infinity, the other at a / 2b (b = +/-1 here)
        pts = [(1, 0), primitive((a, 2 * b))]
    else:
        pts = [primitive((b + 1, c)), primitive((b - 1, c))]
    pts = [tuple(p) if p[1] >= 0 else (-p[0], -p[1]) for p in pts]
    for p, q in pts:
        if 2 * p * q * b - p * p * c - q * q * a != 0:
            raise ArithmeticError("cusp is not orthogonal to the root")
    return tuple(sorted(pts))


def project_root_line(beta: RootLike) -> DiskGeodesic:
    n = _real(beta)
    a, b, c = int(n.a), int(n.b), int(n.c)
    big_a, big_b, big_c = a + c, a - c, 2 * b
    cusps = ideal_cusps(n)
    if big_a == 0:
        h = math.hypot(big_b, big_c)
        return DiskGeodesic(n, "diameter", cusps, direction=(-big_c / h, big_b / h))
    center = (big_b / big_a, big_c / big_a)
    radius = 2 / abs(big_a)
    return DiskGeodesic(n, "arc", cusps, center=center, radius=radius)


# ---------------------------------------------------------------------------
# Angles

class AngleKind(str, Enum):
    INTERSECTING = "Intersecting"
    IDEAL = "Ideal"
    ULTRAPARALLEL = "Ultraparallel"


@dataclass(frozen=True)
class PairAngle:
    kind: AngleKind
    product: int
    theta: float | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind.value, "product": self.product}
        if self.theta is not None:
            out["theta"] = self.theta
            out["theta_over_pi"] = str(Fraction(self.theta / math.pi).limit_denominator(12))
        return out


def pair_angle(beta_i: RootLike, beta_j: RootLike) -> PairAngle:
    x, y = _real(beta_i), _real(beta_j)
    if x == y or x == -y:
        raise SameLine(f"{x} and {y} define the same line")
    v = int(L.bilinear(x, y))
    if abs(v) < 2:
        return PairAngle(AngleKind.INTERSECTING, v, math.acos(abs(v) / 2))
    if abs(v) == 2:
        return PairAngle(AngleKind.IDEAL, v)
    return PairAngle(AngleKind.ULTRAPARALLEL, v)


# weight 6 theta / pi of the interior angle arccos(-v / 2), v in {-1, 0, 1}
_ANGLE_SIXTHS = {-1: 2, 0: 3, 1: 4}


# ---------------------------------------------------------------------------
# Regions

@dataclass(frozen=True)
class Vertex:
    """Corner of a region where the lines of ``edges`` meet."""

    edges: tuple[int, int]
    vector: tuple[int, int, int]
    ideal: bool
    sixths: int  # interior angle in units of pi / 6

    @property
    def angle(self) -> float:
        return self.sixths * math.pi / 6

    def point(self) -> tuple[float, float]:
        return project_point(SymMat2(*self.vector))


@dataclass(frozen=True)
class PolygonRegion:
    roots: tuple[SymMat2, ...]
    order: tuple[int, ...]  # cyclic order of edges; empty if the area is infinite
    vertices: tuple[Vertex, ...]  # vertex k joins order[k] and order[k + 1]
    area: float

    @property
    def is_finite(self) -> bool:
        return self.area != INFINITE

    @property
    def vertex_angles(self) -> list[float | str]:
        return ["Ideal" if v.ideal else v.angle for v in self.vertices]

    def to_json(self) -> dict:
        return {
            "roots": [list(L.to_coords(r)) for r in self.roots],
            "finite": self.is_finite,
            "area": "Infinite" if not self.is_finite else self.area,
            "order": list(self.order),
            "vertex_angles": ["Ideal" if v.ideal else f"{v.sixths}pi/6" for v in self.vertices],
        }


def _cross(x: Sequence[int], y: Sequence[int]) -> tuple[int, int, int]:
    return (x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0])


def _q(beta: SymMat2, x: Fraction) -> Fraction:
    return beta.c * x * x - 2 * beta.b * x + beta.a


def boundary_arc_open(roots: Sequence[SymMat2]) -> bool:
    """True when the closed region meets the circle at infinity in an arc.

    On the boundary, parametrised by ``x = p / q``, the half plane
    ``(v, beta) >= 0`` is ``c x^2 - 2 b x + a <= 0``.  An open arc survives
    iff one of the gaps between consecutive cusps lies strictly inside every
    half plane.
    """
    pts = set()
    for r in roots:
        for p, q in ideal_cusps(r):
            if q:
                pts.add(Fraction(p, q))
    pts = sorted(pts)
    if not pts:
        probes = [Fraction(0)]
    else:
        probes = [pts[0] - 1, pts[-1] + 1]
        probes += [(x + y) / 2 for x, y in zip(pts, pts[1:])]
    return any(all(_q(r, x) < 0 for r in roots) for x in probes)


def _vertices(roots: Sequence[SymMat2]) -> list[Vertex]:
    coeffs = [_line_coeffs(r) for r in roots]
    out = []
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            k = _cross(coeffs[i], coeffs[j])
            if not any(k):
                raise SameLine(f"{roots[i]} and {roots[j]} define the same line")
            a, b, c = k
            det = a * c - b * b
            if det < 0:
                continue
            if a + c < 0:
                a, b, c = -a, -b, -c
            inside = all(2 * b * int(r.b) - a * int(r.c) - c * int(r.a) >= 0 for r in roots)
            if not inside:
                continue
            g = gcd(a, b, c)
            vec = (a // g, b // g, c // g)
            if det == 0:
                out.append(Vertex((i, j), vec, True, 0))
            else:
                v = int(L.bilinear(roots[i], roots[j]))
                out.append(Vertex((i, j), vec, False, _ANGLE_SIXTHS[v]))
    return out


def region_polygon(roots: Sequence[RootLike]) -> PolygonRegion:
    """The region ``{v forward : (v, beta) >= 0 for all beta}`` as a polygon.

    Raises :class:`NotAPolygon` when the lines do not cut out a single
    polygon with each line contributing one edge.
    """
    rs = tuple(_real(r) for r in roots)
    if len(rs) < 2:
        raise NotAPolygon("need at least two lines")
    if boundary_arc_open(rs):
        return PolygonRegion(rs, (), (), INFINITE)
    verts = _vertices(rs)
    by_vec: dict[tuple, list[Vertex]] = {}
    for v in verts:
        by_vec.setdefault(v.vector, []).append(v)
    for vec, vs in by_vec.items():
        if len(vs) > 1:
            raise NotAPolygon(f"more than two lines meet at {vec}")
    incident: dict[int, list[Vertex]] = {i: [] for i in range(len(rs))}
    for v in verts:
        for e in v.edges:
            incident[e].append(v)
    for e, vs in incident.items():
        if len(vs) != 2:
            raise NotAPolygon(f"line {e} meets the region in {len(vs)} corners")
    # walk the cycle edge -> vertex -> edge
    order = [0]
    chain: list[Vertex] = []
    prev = None
    cur = 0
    while True:
        v = next(x for x in incident[cur] if x is not prev)
        chain.append(v)
        nxt = v.edges[0] if v.edges[1] == cur else v.edges[1]
        prev, cur = v, nxt
        if cur == 0:
            break
        order.append(cur)
    if len(order) != len(rs):
        raise NotAPolygon("the lines do not form a single cycle")
    k = len(rs)
    sixths = 6 * (k - 2) - sum(v.sixths for v in chain)
    if sixths <= 0:
        raise NonIntegralIndex(f"non-positive area {sixths} pi / 6")
    area = sixths * math.pi / 6
    gb = (k - 2) * math.pi - sum(0.0 if v.ideal else math.acos(-int(L.bilinear(rs[v.edges[0]], rs[v.edges[1]])) / 2)
                                 for v in chain)
    if abs(gb - area) > AREA_TOL:
        raise NonIntegralIndex(f"Gauss-Bonnet area {gb} disagrees with {area}")
    return PolygonRegion(rs, tuple(order), tuple(chain), area)


def region_area(roots) -> float:
    """Hyperbolic area of the region, ``math.inf`` when it is unbounded."""
    return region_polygon(_roots_of(roots)).area


FUNDAMENTAL_AREA = math.pi / 6


def index_in_W(roots) -> int | float:
    """Index of the reflection subgroup in W as an area ratio (``math.inf`` if infinite)."""
    area = region_area(roots)
    if area == INFINITE:
        return INFINITE
    ratio = area / FUNDAMENTAL_AREA
    n = round(ratio)
    if n < 1 or abs(ratio - n) > AREA_TOL:
        raise NonIntegralIndex(f"area ratio {ratio} is not a positive integer")
    return n


def _roots_of(obj) -> list:
    roots = getattr(obj, "roots", obj)
    return list(roots)


def format_index(value) -> str | int:
    return "Infinite" if value == INFINITE else int(value)

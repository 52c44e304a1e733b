import math
import random
from collections import deque

import pytest

from hyperkm import lattice as L
from hyperkm.disk import (FUNDAMENTAL_AREA, AngleKind, boundary_arc_open, format_index,
                          ideal_cusps, index_in_W, pair_angle, project_point,
                          project_root_line, region_area, region_polygon)
from hyperkm.errors import NotAPolygon, NotRealRoot, SameLine
from hyperkm.lattice import SymMat2
from hyperkm.roots import F
from hyperkm.subalgebras import example_fixtures, series_rank_r2

SIMPLE = [L.to_coords(a) for a in L.SIMPLE_ROOTS]


def random_real_roots(n, seed=3, length=7):
    rng = random.Random(seed)
    out = []
    for _ in range(n):
        word = [rng.randrange(3) for _ in range(rng.randrange(length))]
        out.append(L.apply_word(word, L.SIMPLE_ROOTS[rng.randrange(3)]))
    return out


def hyperboloid_point(n):
    """Oracle projection: normalise to det 1 and use the stereographic formula."""
    a, b, c = (float(x) for x in (n.a, n.b, n.c))
    s = math.sqrt(a * c - b * b)
    a, b, c = a / s, b / s, c / s
    t, u, w = (a + c) / 2, (a - c) / 2, b
    return (u / (1 + t), w / (1 + t))


def chamber_count(roots, cap=400):
    """Oracle: flood-fill the Weyl chambers lying inside the region."""
    p0 = L.to_matrix((4, 10, 9))
    if p0.trace() < 0:
        p0 = -p0
    assert all(L.bilinear(p0, a) > 0 for a in L.SIMPLE_ROOTS)
    rs = [L.to_matrix(r) if not isinstance(r, SymMat2) else r for r in roots]

    def inside(g):
        x = L.weyl_apply(g, p0)
        return all(L.bilinear(x, r) > 0 for r in rs)

    start = None
    queue, seen = deque([L.IDENTITY]), {L.IDENTITY}
    while queue and start is None:
        g = queue.popleft()
        if inside(g):
            start = g
            break
        for h in L.GENERATORS:
            if g @ h not in seen:
                seen.add(g @ h)
                queue.append(g @ h)
    assert start is not None
    found, queue = {start}, deque([start])
    while queue:
        g = queue.popleft()
        for h in L.GENERATORS:
            n = g @ h
            if n not in found and inside(n):
                found.add(n)
                if len(found) > cap:
                    return math.inf
                queue.append(n)
    return len(found)


def test_project_point_origin():
    assert project_point(SymMat2(1, 0, 1)) == (0.0, 0.0)
    with pytest.raises(ValueError):
        project_point(SymMat2(-1, 0, -1))


def test_project_point_agrees_with_oracle():
    rng = random.Random(9)
    for _ in range(200):
        a, c = rng.randint(1, 30), rng.randint(1, 30)
        b = rng.randint(-5, 5)
        if a * c - b * b <= 0:
            continue
        n = SymMat2(a, b, c)
        x, y = project_point(n)
        ox, oy = hyperboloid_point(n)
        assert abs(x - ox) < 1e-12 and abs(y - oy) < 1e-12
        assert x * x + y * y < 1


def test_simple_root_lines():
    g1 = project_root_line(L.ALPHA_1)
    assert g1.kind == "diameter"
    g0 = project_root_line(L.ALPHA_0)
    assert g0.kind == "arc"
    gm = project_root_line(L.ALPHA_M1)
    assert gm.kind == "diameter"


def test_cusps_are_exact_null_vectors():
    for beta in random_real_roots(300):
        for p, q in ideal_cusps(beta):
            null = SymMat2(p * p, p * q, q * q)
            assert null.det() == 0
            assert L.bilinear(null, beta) == 0
            assert math.gcd(p, q) == 1


def test_arcs_are_orthogonal_to_boundary():
    for beta in random_real_roots(300):
        g = project_root_line(beta)
        if g.kind == "arc":
            cx, cy = g.center
            assert abs(cx * cx + cy * cy - (g.radius ** 2 + 1)) < 1e-9 * (1 + g.radius ** 2)


def test_hyperboloid_points_lie_on_geodesic():
    for beta in random_real_roots(100, seed=17):
        g = project_root_line(beta)
        (p1, q1), (p2, q2) = g.cusps
        n1 = SymMat2(p1 * p1, p1 * q1, q1 * q1)
        n2 = SymMat2(p2 * p2, p2 * q2, q2 * q2)
        for s, t in [(1, 1), (1, 3), (5, 2), (1, 10)]:
            x = n1 * s + n2 * t
            assert L.bilinear(x, beta) == 0
            px, py = hyperboloid_point(x)
            if g.kind == "arc":
                cx, cy = g.center
                assert abs(math.hypot(px - cx, py - cy) - g.radius) < 1e-9 * max(1, g.radius)
            else:
                dx, dy = g.direction
                assert abs(px * dy - py * dx) < 1e-9


def test_endpoints_on_unit_circle():
    for beta in random_real_roots(50):
        for x, y in project_root_line(beta).endpoints:
            assert abs(x * x + y * y - 1) < 1e-12


def test_non_real_rejected():
    with pytest.raises(NotRealRoot):
        project_root_line((0, 1, 1))


def test_pair_angles_simple():
    a = pair_angle(SIMPLE[0], SIMPLE[1])
    assert a.kind is AngleKind.INTERSECTING and abs(a.theta - math.pi / 3) < 1e-12
    b = pair_angle(SIMPLE[0], SIMPLE[2])
    assert b.kind is AngleKind.INTERSECTING and abs(b.theta - math.pi / 2) < 1e-12
    assert pair_angle(SIMPLE[1], SIMPLE[2]).kind is AngleKind.IDEAL
    s45 = example_fixtures()["example-4.5"].roots
    assert pair_angle(s45[1], s45[3]).kind is AngleKind.ULTRAPARALLEL
    with pytest.raises(SameLine):
        pair_angle(SIMPLE[0], tuple(-x for x in SIMPLE[0]))


def test_pair_angle_matches_circle_geometry():
    roots = random_real_roots(80, seed=23)
    checked = 0
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            x, y = roots[i], roots[j]
            if x == y or x == -y:
                continue
            gx, gy = project_root_line(x), project_root_line(y)
            if gx.kind != "arc" or gy.kind != "arc":
                continue
            pa = pair_angle(x, y)
            d = math.dist(gx.center, gy.center)
            cos_phi = (gx.radius ** 2 + gy.radius ** 2 - d * d) / (2 * gx.radius * gy.radius)
            if pa.kind is AngleKind.INTERSECTING:
                assert abs(abs(cos_phi) - abs(pa.product) / 2) < 1e-7
                checked += 1
            elif pa.kind is AngleKind.IDEAL:
                assert abs(abs(cos_phi) - 1) < 1e-7
            else:
                assert abs(cos_phi) > 1 - 1e-9
    assert checked > 0


def test_fundamental_region():
    poly = region_polygon(SIMPLE)
    assert poly.is_finite
    assert abs(poly.area - FUNDAMENTAL_AREA) < 1e-12
    assert sorted(v.sixths for v in poly.vertices) == [0, 2, 3]
    assert index_in_W(SIMPLE) == 1


EXPECTED = {"example-4.1": 6, "example-4.1b": 6, "example-4.2": math.inf,
            "example-4.3": math.inf, "example-4.4": math.inf, "example-4.5": 12}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_fixture_indices(name):
    roots = example_fixtures()[name].roots
    idx = index_in_W(roots)
    assert idx == EXPECTED[name]
    assert chamber_count(roots) == idx


@pytest.mark.parametrize("m", range(1, 7))
def test_rank_r2_indices(m):
    roots = series_rank_r2(F, m).roots
    expected = {1: 1, 2: 3}.get(m, math.inf)
    assert index_in_W(roots) == expected
    assert chamber_count(roots) == expected


def test_area_ratio_integral():
    area = region_area(example_fixtures()["example-4.5"])
    assert abs(area / FUNDAMENTAL_AREA - 12) < 1e-9


def test_boundary_arc_detection():
    assert not boundary_arc_open([L.to_matrix(r) for r in SIMPLE])
    assert boundary_arc_open([L.to_matrix(r) for r in example_fixtures()["example-4.2"].roots])


def test_not_a_polygon():
    with pytest.raises(NotAPolygon):
        region_polygon([SIMPLE[0]])


def test_format_index():
    assert format_index(math.inf) == "Infinite"
    assert format_index(6) == 6


def test_region_json():
    data = region_polygon(example_fixtures()["example-4.1"].roots).to_json()
    assert data["finite"] is True
    assert len(data["vertex_angles"]) == 3

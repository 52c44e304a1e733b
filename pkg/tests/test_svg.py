import math
import re
import xml.etree.ElementTree as ET

import pytest

from hyperkm import lattice as L
from hyperkm.disk import project_root_line
from hyperkm.errors import DomainError
from hyperkm.subalgebras import example_fixtures
from hyperkm.svg import (STYLES, TesselationScene, fundamental_scene, orbit_roots,
                         region_scene, render_svg)

NS = "{http://www.w3.org/2000/svg}"
TOKEN = re.compile(r"[MLAZ]|-?\d+\.\d+|\d+")


def svg_arc_center(x1, y1, r, sweep, x2, y2):
    """Oracle: centre of an SVG elliptical arc (equal radii, no rotation, small arc)."""
    hx, hy = (x1 - x2) / 2, (y1 - y2) / 2
    num = r * r - hx * hx - hy * hy
    sq = math.sqrt(max(0.0, num / (hx * hx + hy * hy)))
    sign = -1 if sweep == 0 else 1  # large-arc flag is always 0
    return (sign * sq * hy + (x1 + x2) / 2, -sign * sq * hx + (y1 + y2) / 2)


def parse_path(d):
    toks = TOKEN.findall(d)
    out, i = [], 0
    while i < len(toks):
        t = toks[i]
        if t in "ML":
            out.append((t, float(toks[i + 1]), float(toks[i + 2])))
            i += 3
        elif t == "A":
            r, _, _, large, sweep, x, y = toks[i + 1:i + 8]
            out.append(("A", float(r), int(large), int(sweep), float(x), float(y)))
            i += 8
        else:
            out.append(("Z",))
            i += 1
    return out


def to_screen(p, size, margin):
    c, rr = size / 2, size / 2 - margin
    return (c + rr * p[0], c - rr * p[1])


def check_geodesic_element(el, size):
    margin = STYLES["v1"]["margin"]
    root = tuple(int(x) for x in el.get("data-root").split(","))
    g = project_root_line(L.to_matrix(root))
    (_, x1, y1), seg = parse_path(el.get("d"))
    if g.kind == "diameter":
        assert seg[0] == "L"
        return
    _, r, large, sweep, x2, y2 = seg
    assert large == 0
    assert abs(r - g.radius * (size / 2 - margin)) < 1e-3
    cx, cy = svg_arc_center(x1, y1, r, sweep, x2, y2)
    ex, ey = to_screen(g.center, size, margin)
    assert math.hypot(cx - ex, cy - ey) < 1e-2 * max(1.0, r / 100)


def test_orbit_roots_are_positive_real():
    roots = orbit_roots(3)
    assert len(roots) == len(set(roots))
    for co in roots:
        assert min(co) >= 0
        assert L.to_matrix(co).det() == -1


def test_render_is_deterministic():
    a = render_svg(fundamental_scene(depth=3, size=400))
    b = render_svg(fundamental_scene(depth=3, size=400))
    assert a == b
    assert "-0.0000" not in a


def test_svg_is_well_formed_and_versioned():
    text = render_svg(fundamental_scene(depth=2))
    tree = ET.fromstring(text.split("\n", 1)[1])
    assert tree.tag == NS + "svg"
    assert "style v1" in text
    assert len(tree.findall(f"{NS}path[@class='region']")) == 1


@pytest.mark.parametrize("size", [300, 600])
def test_arc_centres_match_geodesics(size):
    text = render_svg(fundamental_scene(depth=4, size=size))
    tree = ET.fromstring(text.split("\n", 1)[1])
    paths = tree.findall(f"{NS}path[@class='geodesic']")
    assert paths
    for el in paths:
        check_geodesic_element(el, size)


def test_region_path_follows_edges():
    size = 500
    scene = region_scene(example_fixtures()["example-4.5"].roots, depth=2, size=size)
    tree = ET.fromstring(render_svg(scene).split("\n", 1)[1])
    region = tree.find(f"{NS}path[@class='region']")
    segs = parse_path(region.get("d"))
    assert segs[0][0] == "M" and segs[-1] == ("Z",)
    assert len(segs) == 2 + 4
    # every arc in the outline is centred on one of the four boundary geodesics
    margin = STYLES["v1"]["margin"]
    centres = [to_screen(project_root_line(r).center, size, margin)
               for r in scene.region if project_root_line(r).kind == "arc"]
    x, y = segs[0][1], segs[0][2]
    for s in segs[1:-1]:
        if s[0] == "A":
            c = svg_arc_center(x, y, s[1], s[3], s[4], s[5])
            assert min(math.dist(c, e) for e in centres) < 0.05
            x, y = s[4], s[5]
        else:
            x, y = s[1], s[2]


def test_infinite_region_is_not_shaded():
    scene = region_scene(example_fixtures()["example-4.2"].roots, depth=1)
    assert 'class="region"' not in render_svg(scene)


def test_flags_drop_labels_and_shading():
    text = render_svg(fundamental_scene(depth=1, labels=False, shade=False))
    assert "<text" not in text
    assert 'class="region"' not in text


def test_unknown_style():
    with pytest.raises(DomainError):
        render_svg(TesselationScene(style="v0"))


def test_scene_json():
    data = fundamental_scene(depth=1).to_json()
    assert data["style"] == "v1"
    assert len(data["region"]) == 3

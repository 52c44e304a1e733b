"""Reproduction checks for the published values and constructions.

Each ``check_*`` function returns a :class:`CheckResult`; :func:`run_all`
runs them in order.  The CLI ``verify-paper`` command and the acceptance
tests both go through this module.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable

from . import lattice as L
from .cartan import GeneralizedCartanMatrix
from .errors import DomainError
from .peterson import PetersonEngine
from .roots import F, FAmbient, OverextendedAmbient, root_string
from .series import level2_genfunc, level2_positive_coords, partition_p
from .subalgebras import (Validity, check_simple_set, example_fixtures, gamma0, serre_bound_holds,
                          series_h, series_rank_r1, series_rank_r2)


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] criterion {self.number}: {self.title} ({self.detail}; {self.seconds:.2f}s)"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "detail": self.detail, "seconds": round(self.seconds, 3)}


def _timed(number: int, title: str, fn: Callable[[], tuple[bool, str]], limit: float | None = None):
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except (DomainError, ArithmeticError, AssertionError) as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    dt = time.perf_counter() - t0
    if limit is not None and dt >= limit:
        ok, detail = False, f"{detail}; exceeded {limit:g}s"
    return CheckResult(number, title, ok, detail, dt)


# -- 1 -------------------------------------------------------------------------

def _c1():
    f = FAmbient(24).mult((2, 4, 4))
    h = PetersonEngine([[2, -3], [-3, 2]], max_height=8).mult((2, 2))
    return f == 7 and h == 1, f"Mult_F(2,4,4)={f}, Mult_H(3)(2,2)={h}"


def check_multiplicities() -> CheckResult:
    return _timed(1, "multiplicity oracle", _c1, limit=10)


# -- 2 -------------------------------------------------------------------------

def _c2():
    amb = FAmbient(26)
    bad = []
    for a in range(-1, 12):
        coords = tuple(-x for x in L.to_coords(L.SymMat2(a, 0, 1)))
        got = amb.mult(coords)
        if got != partition_p(a + 1):
            bad.append((a, got, partition_p(a + 1)))
    return not bad, f"13 level-1 forms checked, mismatches {bad}"


def check_level1() -> CheckResult:
    return _timed(2, "level-1 partition law", _c2, limit=60)


# -- 3 -------------------------------------------------------------------------

LEVEL2_FRONTIER = 48


def _c3():
    terms = 0
    while sum(level2_positive_coords(terms)) <= LEVEL2_FRONTIER:
        terms += 1
    coeffs = level2_genfunc(terms)
    first = [i for i in range(20) if coeffs[i] != partition_p(i)]
    amb = FAmbient(LEVEL2_FRONTIER)
    bad = [i for i in range(terms) if amb.mult(level2_positive_coords(i)) != coeffs[i]]
    ok = not first and not bad
    return ok, (f"first 20 equal p(n): {not first}; {terms} coefficients vs Peterson, "
                f"mismatches {bad}; coefficient 20 = {coeffs[20]} vs p(20) = {partition_p(20)}")


def check_level2() -> CheckResult:
    return _timed(3, "level-2 generating function", _c3)


# -- 4 -------------------------------------------------------------------------

SERIES_FINITE = tuple(f"A{r}" for r in range(1, 9)) + ("D4", "E6", "E7", "E8")


def _pattern_ok(c: GeneralizedCartanMatrix, m: int, block) -> bool:
    n = c.rank
    first = [2, -m] + [0] * (n - 2)
    if list(c.rows()[0]) != first or [row[0] for row in c.rows()] != first:
        return False
    return [row[1:] for row in c.rows()[1:]] == [list(r) for r in block]


def _c4():
    issues = []
    for m in range(1, 51):
        for sign in "+-":
            rep = check_simple_set(series_h(m, sign))
            if rep.cartan_entries != ((2, -m), (-m, 2)) or not rep.is_valid:
                issues.append(("H", m, sign))
    checked = 0
    for label in SERIES_FINITE:
        amb = OverextendedAmbient(label)
        ov = amb.data
        fin = ov.finite.rows()
        aff_m = ov.lorentzian.principal(range(1, ov.lorentzian.rank))
        aff = aff_m.rows()
        fin_det = ov.finite.det()
        sub_det = ov.finite.principal(range(1, ov.finite.rank)).det()
        for m in range(0, 11):
            rep = check_simple_set(series_rank_r1(amb, m))
            c = rep.cartan
            if not rep.is_valid or not _pattern_ok(c, m, fin):
                issues.append(("r+1", label, m))
            if c.det() != 2 * fin_det - m * m * sub_det:
                issues.append(("r+1 det", label, m))
            if label.startswith("A"):
                r = int(label[1:])
                if c.det() != 2 * (r + 1) - m * m * r:
                    issues.append(("A closed form", r, m))
            checked += 1
            if m >= 1:
                rep2 = check_simple_set(series_rank_r2(amb, m))
                c2 = rep2.cartan
                if not rep2.is_valid or not _pattern_ok(c2, m, aff):
                    issues.append(("r+2", label, m))
                if c2.det() != 2 * aff_m.det() - m * m * fin_det or aff_m.det() != 0:
                    issues.append(("r+2 det", label, m))
                checked += 1
    for m in range(1, 11):
        rep = check_simple_set(series_rank_r2(F, m))
        if rep.cartan_entries != ((2, -m, 0), (-m, 2, -2), (0, -2, 2)):
            issues.append(("F r+2", m))
    return not issues, f"{checked} over-extension series members, 100 rank-2 members; issues {issues}"


def check_series() -> CheckResult:
    return _timed(4, "series constructions", _c4)


# -- 5 -------------------------------------------------------------------------

EXPECTED_CARTANS = {
    "example-4.1": ((2, -2, -2), (-2, 2, -2), (-2, -2, 2)),
    "example-4.2": ((2, -10, -10), (-10, 2, -10), (-10, -10, 2)),
    "example-4.3": ((2, -6, -6), (-6, 2, -2), (-6, -2, 2)),
    "example-4.4": ((2, -3, -2), (-3, 2, -2), (-2, -2, 2)),
    "example-4.5": ((2, -2, -4, -2), (-2, 2, -2, -10), (-4, -2, 2, -2), (-2, -10, -2, 2)),
}

# stated simple-root expansions, as (n_-1, n_0, n_1)
EXPECTED_ROOTS = {
    "example-4.1": ((0, 0, 1), (0, 2, 1), (2, 2, 1)),
    "example-4.2": ((0, 2, 3), (2, 6, 3), (4, 4, 3)),
    "example-4.3": ((0, 0, 1), (2, 6, 3), (4, 6, 3)),
    "example-4.4": ((1, 1, 0), (0, 1, 2), (0, 4, 3)),
    "example-4.5": ((1, 1, 0), (2, 2, 3), (0, 2, 3), (0, 4, 3)),
}

GAMMA0_WORDS = {1: ((), 1), 2: ((1,), 2), 3: ((1, 2), 1), 4: ((1, 2, 1), 2)}


def _c5():
    issues = []
    fx = example_fixtures()
    for name, cm in EXPECTED_CARTANS.items():
        s = fx[name]
        if s.roots != EXPECTED_ROOTS[name]:
            issues.append((name, "roots"))
        rep = check_simple_set(s)
        if rep.cartan_entries != cm or not rep.is_valid:
            issues.append((name, "cartan"))
    deps = check_simple_set(fx["example-4.5"]).dependencies
    if deps != ((2, -1, 2, -1),):
        issues.append(("example-4.5", "dependency", deps))
    for m, (word, simple) in GAMMA0_WORDS.items():
        got = L.to_coords(L.apply_word(word, L.SIMPLE_ROOTS[simple]))
        if got != gamma0(m):
            issues.append(("gamma0", m, got))
    for m in range(1, 11):
        g = L.reflection_pgl2(L.to_matrix(gamma0(m)))
        if g != L.Pgl2Element(((-1, m), (0, 1))):
            issues.append(("gamma0 matrix", m))
    return not issues, f"5 Cartan matrices, dependency, 4 gamma0 words; issues {issues}"


def check_fixtures() -> CheckResult:
    return _timed(5, "worked examples", _c5)


# -- 6 -------------------------------------------------------------------------

def _c6():
    from .disk import INFINITE, index_in_W

    fx = example_fixtures()
    expected = {
        "example-4.1": 6, "example-4.1b": 6, "example-4.5": 12,
        "example-4.2": INFINITE, "example-4.3": INFINITE, "example-4.4": INFINITE,
    }
    got = {k: index_in_W(fx[k]) for k in expected}
    for m in range(2, 11):
        expected[f"rank-r2 m={m}"] = 3 if m == 2 else INFINITE
        got[f"rank-r2 m={m}"] = index_in_W(series_rank_r2(F, m))
    bad = {k: (got[k], v) for k, v in expected.items() if got[k] != v}
    return not bad, f"{len(expected)} configurations; mismatches {bad}"


def check_indices() -> CheckResult:
    return _timed(6, "Weyl subgroup indices", _c6)


# -- 7 -------------------------------------------------------------------------

def _random_mat(rng: random.Random, k: int = 30) -> L.SymMat2:
    return L.SymMat2(rng.randint(-k, k), rng.randint(-k, k), rng.randint(-k, k))


def _c7():
    rng = random.Random(20240601)
    issues = []
    for g, alpha in zip(L.GENERATORS, L.SIMPLE_ROOTS):
        for _ in range(10_000):
            x, y = _random_mat(rng), _random_mat(rng)
            gx, gy = L.weyl_apply(g, x), L.weyl_apply(g, y)
            if L.bilinear(gx, gy) != L.bilinear(x, y):
                issues.append(("invariance", g.entries))
                break
            if gx != L.reflect(alpha, x) or L.reflect(alpha, L.reflect(alpha, x)) != x:
                issues.append(("reflection", g.entries))
                break
    for _ in range(2_000):
        c = tuple(rng.randint(-40, 40) for _ in range(3))
        if L.to_coords(L.to_matrix(c)) != c:
            issues.append(("round trip", c))
            break
    r_m1, r_0, r_1 = L.GENERATORS
    power = lambda g, k: L.from_word(()) if k == 0 else g @ power(g, k - 1)  # noqa: E731
    relations = [power(r, 2) for r in L.GENERATORS] + [power(r_m1 @ r_0, 3), power(r_m1 @ r_1, 2)]
    if not all(x.is_identity() for x in relations):
        issues.append(("presentation",))
    if any(power(r_0 @ r_1, k).is_identity() for k in range(1, 25)):
        issues.append(("r0 r1 has finite order",))
    # root strings p - q = C_ji on simple pairs of F, over-extensions and the fixtures
    systems = [(F, [F.unit(i) for i in range(3)])]
    for label in ("A2", "D4", "E8"):
        amb = OverextendedAmbient(label)
        systems.append((amb, [amb.unit(i) for i in range(amb.rank)]))
    for s in example_fixtures().values():
        systems.append((F, list(s.roots)))
    pairs = 0
    for amb, roots in systems:
        for i, bi in enumerate(roots):
            for j, bj in enumerate(roots):
                if i == j:
                    continue
                p, q = root_string(bj, bi, amb)
                if p - q != amb.cartan_entry(bj, bi):
                    issues.append(("root string", amb.name, bj, bi))
                pairs += 1
    valid = 0
    sets = list(example_fixtures().values()) + [series_rank_r2(F, m) for m in range(1, 11)]
    sets += [series_h(m, s) for m in range(1, 11) for s in "+-"]
    for s in sets:
        rep = check_simple_set(s)
        if rep.validity is Validity.VALID:
            valid += 1
            if not serre_bound_holds(s, rep):
                issues.append(("serre", s.name))
    return not issues, f"{pairs} root-string pairs, {valid} valid reports; issues {issues}"


def check_properties() -> CheckResult:
    return _timed(7, "property suites", _c7)


# -- 8 -------------------------------------------------------------------------

def random_generator_profile(rng: random.Random, rank: int, bound: int):
    from .borcherds import GradedDims

    grades = {}
    for _ in range(rng.randint(1, 4)):
        g = tuple(rng.randint(0, 2) for _ in range(rank))
        if any(g) and sum(g) <= bound:
            grades[g] = rng.randint(0, 3)
    return GradedDims(grades, bound)


def _c8():
    from .borcherds import mu_simple_mults, plane_roots, witt_expand, witt_invert

    issues = []
    for m in (3, 4, 5):
        sl = plane_roots(m, 8)
        if any(r.mult_h > r.mult_f for r in sl.rows):
            issues.append(("inequality", m))
        if sl.root_set_mismatches():
            issues.append(("root sets", m, sl.root_set_mismatches()))
    gap = plane_roots(3, 4).row((2, 2)).gap
    if gap != 6:
        issues.append(("gap", gap))
    for m in (3, 4, 5):
        table = mu_simple_mults(m, 8)
        if not table.replay_ok or any(v < 0 for v in table.mu.values()):
            issues.append(("mu", m))
    rng = random.Random(7)
    for k in range(100):
        f = random_generator_profile(rng, 1 + k % 2, 6)
        dims = witt_expand(f)
        if witt_invert(dims).dims != f.dims or witt_expand(witt_invert(dims)).dims != dims.dims:
            issues.append(("witt", k))
            break
    return not issues, f"gap(2,2)={gap}, mu pipelines m=3,4,5 to height 8; issues {issues}"


def check_borcherds() -> CheckResult:
    return _timed(8, "Borcherds slice", _c8)


# -- 9 -------------------------------------------------------------------------

DETERMINISM_COMMANDS = (
    ["mult", "--ambient", "F", "--root", "2,4,4"],
    ["subalgebra", "fixtures"],
    ["disk", "index", "--fixture", "example-4.5"],
    ["disk", "svg", "--fixture", "example-4.5"],
    ["disk", "svg", "--figure", "--depth", "4"],
    ["borcherds", "plane", "--m", "3", "--bound", "5"],
)


def _c9():
    from .cli import run

    diffs = []
    for argv in DETERMINISM_COMMANDS:
        a = run(list(argv))
        b = run(list(argv))
        if a != b or a[0] != 0:
            diffs.append(" ".join(argv))
    return not diffs, f"{len(DETERMINISM_COMMANDS)} commands run twice; differing {diffs}"


def check_determinism() -> CheckResult:
    return _timed(9, "determinism", _c9)


ALL_CHECKS = (check_multiplicities, check_level1, check_level2, check_series, check_fixtures,
              check_indices, check_properties, check_borcherds, check_determinism)


def run_all() -> list[CheckResult]:
    return [c() for c in ALL_CHECKS]


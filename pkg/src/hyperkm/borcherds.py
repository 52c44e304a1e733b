"""Borcherds subalgebras of F cut out by the plane of a rank 2 subalgebra.

For ``m >= 3`` the roots ``b0 = a_-1`` and ``b1 = m (a_0 + a_1) - a_1`` span
the hyperbolic algebra H(m) with Cartan matrix ``[[2, -m], [-m, 2]]``.  A
point ``a0 b0 + a1 b1`` of the plane has F coordinates
``(a0, m a1, (m - 1) a1)``.  All root spaces of F on the plane form a
Borcherds algebra G(m) containing H(m); this module compares the two
multiplicity functions, grows H(m) into G(m) one height at a time by
adjoining imaginary simple roots, and handles the free Lie algebra
bookkeeping (graded Witt formula) needed for the line example.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, gcd
from typing import Iterable, Mapping, Sequence

from . import __version__
from .errors import DomainError, EngineInconsistency, NegativeGeneratorCount, NegativeMu
from .peterson import PetersonEngine
from .roots import FAmbient

Grade = tuple[int, ...]


# ---------------------------------------------------------------------------
# Plane geometry

def _check_m(m: int) -> None:
    if m < 3:
        raise DomainError("the plane construction needs m >= 3")


def plane_to_f(m: int, a0: int, a1: int) -> tuple[int, int, int]:
    return (a0, m * a1, (m - 1) * a1)


def plane_pair(m: int, x: Sequence[int], y: Sequence[int]) -> int:
    """Bilinear form on the plane: Gram ``[[2, -m], [-m, 2]]``."""
    return 2 * x[0] * y[0] + 2 * x[1] * y[1] - m * (x[0] * y[1] + x[1] * y[0])


def hheight(beta: Sequence[int]) -> int:
    """Height ``a0 + a1`` relative to the simple roots of H(m).

    This is the grading used for the recursive extension; it differs from
    the height of the same vector as a root of F.
    """
    a0, a1 = beta
    if a0 < 0 or a1 < 0:
        raise DomainError("coefficients must be nonnegative")
    return a0 + a1


def _points(bound: int, exact: int | None = None) -> list[tuple[int, int]]:
    hs = [exact] if exact is not None else range(1, bound + 1)
    return [(a0, h - a0) for h in hs for a0 in range(h + 1)]


@lru_cache(maxsize=None)
def _f_ambient(max_height: int) -> FAmbient:
    return FAmbient(max_height)


@lru_cache(maxsize=None)
def _h_engine(m: int, max_height: int) -> PetersonEngine:
    return PetersonEngine([[2, -m], [-m, 2]], max_height=max_height, weyl_reduce=True)


def _f_height_needed(m: int, bound: int) -> int:
    """Largest F height met after Weyl reduction of plane roots up to ``bound``."""
    amb = _f_ambient(1)
    worst = 1
    for a0, a1 in _points(bound):
        v = plane_to_f(m, a0, a1)
        if amb.is_root(v):
            y, _ = amb.descend(v)
            worst = max(worst, sum(y))
    return worst


class PlaneOracle:
    """Multiplicities of F and H(m) at plane points ``(a0, a1)``."""

    def __init__(self, m: int, bound: int):
        _check_m(m)
        self.m = m
        self.bound = bound
        self.f = _f_ambient(max(24, _f_height_needed(m, bound)))
        self.h = _h_engine(m, max(bound, 2))

    def mult_f(self, beta: Sequence[int]) -> int:
        v = plane_to_f(self.m, *beta)
        if not self.f.is_root(v):
            return 0
        return self.f.mult(v)

    def mult_h(self, beta: Sequence[int]) -> int:
        return self.h.mult(beta)


@dataclass(frozen=True)
class PlaneRow:
    beta: tuple[int, int]
    f_coords: tuple[int, int, int]
    norm: int
    mult_f: int
    mult_h: int

    @property
    def gap(self) -> int:
        return self.mult_f - self.mult_h

    def to_json(self) -> dict:
        return {"beta": list(self.beta), "f_coords": list(self.f_coords), "norm": self.norm,
                "hheight": sum(self.beta), "mult_F": self.mult_f, "mult_H": self.mult_h, "gap": self.gap}


@dataclass(frozen=True)
class PlaneSlice:
    m: int
    bound: int
    rows: tuple[PlaneRow, ...]

    @property
    def span(self) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
        return ((1, 0, 0), plane_to_f(self.m, 0, 1))

    def row(self, beta: Sequence[int]) -> PlaneRow:
        beta = tuple(beta)
        for r in self.rows:
            if r.beta == beta:
                return r
        raise KeyError(beta)

    def root_set_mismatches(self) -> list[tuple[int, int]]:
        """Plane points that are roots of exactly one of F and H(m)."""
        return [r.beta for r in self.rows if (r.mult_f > 0) != (r.mult_h > 0)]

    def to_json(self) -> dict:
        return {"version": __version__, "m": self.m, "bound": self.bound,
                "span": [list(s) for s in self.span], "rows": [r.to_json() for r in self.rows]}


def plane_roots(m: int, hheight_bound: int) -> PlaneSlice:
    """All F roots ``a0 b0 + a1 b1`` with ``0 < a0 + a1 <= hheight_bound``."""
    oracle = PlaneOracle(m, hheight_bound)
    rows = []
    for beta in _points(hheight_bound):
        v = plane_to_f(m, *beta)
        if not oracle.f.is_root(v):
            continue
        rows.append(PlaneRow(beta, v, plane_pair(m, beta, beta), oracle.mult_f(beta), oracle.mult_h(beta)))
    return PlaneSlice(m, hheight_bound, tuple(rows))


def plane_gap_table(m: int, bound: int) -> list[PlaneRow]:
    return list(plane_roots(m, bound).rows)


# ---------------------------------------------------------------------------
# Graded free Lie algebras

@dataclass(frozen=True)
class GradedDims:
    """Nonnegative integers on the positive cone of a grading lattice, truncated at total degree ``bound``."""

    dims: Mapping[Grade, int]
    bound: int

    def __post_init__(self):
        clean = {}
        for g, v in self.dims.items():
            g = (g,) if isinstance(g, int) else tuple(g)
            if any(x < 0 for x in g) or not any(g):
                raise DomainError(f"grade {g} is not in the positive cone")
            if sum(g) > self.bound:
                raise DomainError(f"grade {g} exceeds the bound {self.bound}")
            if v:
                clean[g] = int(v)
        object.__setattr__(self, "dims", dict(sorted(clean.items())))

    def __getitem__(self, g) -> int:
        g = (g,) if isinstance(g, int) else tuple(g)
        return self.dims.get(g, 0)

    @property
    def rank(self) -> int:
        return len(next(iter(self.dims))) if self.dims else 1

    def to_json(self) -> dict:
        return {"bound": self.bound, "dims": {",".join(map(str, g)): str(v) for g, v in self.dims.items()}}


Poly = dict


def _poly_mul(x: Poly, y: Poly, bound: int) -> Poly:
    out: Poly = {}
    for gx, cx in x.items():
        for gy, cy in y.items():
            g = tuple(a + b for a, b in zip(gx, gy))
            if sum(g) <= bound:
                out[g] = out.get(g, 0) + cx * cy
    return {g: c for g, c in out.items() if c}


def _mobius(n: int) -> int:
    res, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            res = -res
        p += 1
    return -res if n > 1 else res


def witt_expand(gens: GradedDims) -> GradedDims:
    """Graded dimensions of the free Lie algebra on ``gens`` generators per grade.

    With ``F = sum f(b) x^b`` put ``M(g) = sum_n [x^g] F^n / n``; then
    ``L(g) = sum_{d | g} mobius(d) / d * M(g / d)``.
    """
    from fractions import Fraction

    bound = gens.bound
    base: Poly = dict(gens.dims)
    m_vals: dict[Grade, Fraction] = {}
    power = dict(base)
    n = 1
    while power:
        for g, c in power.items():
            m_vals[g] = m_vals.get(g, Fraction(0)) + Fraction(c, n)
        power = _poly_mul(power, base, bound)
        n += 1
    out = {}
    for g in m_vals:
        total = Fraction(0)
        k = gcd(*g)
        for d in range(1, k + 1):
            if k % d == 0:
                sub = tuple(x // d for x in g)
                total += Fraction(_mobius(d), d) * m_vals.get(sub, 0)
        if total.denominator != 1:
            raise ArithmeticError(f"non-integral dimension at {g}")
        out[g] = int(total)
    return GradedDims(out, bound)


def witt_invert(dims: GradedDims) -> GradedDims:
    """Generator counts ``f`` with ``prod (1 - x^b)^L(b) = 1 - sum f(b) x^b``.

    Raises :class:`NegativeGeneratorCount` if some count is negative, i.e. the
    input is not the dimension profile of a free Lie algebra.
    """
    bound = dims.bound
    acc: Poly = {}
    zero = None
    for g, l in dims.dims.items():
        zero = zero or tuple(0 for _ in g)
        factor = {}
        k = 0
        while k * sum(g) <= bound:
            factor[tuple(k * x for x in g)] = comb(l, k) * (-1) ** k
            k += 1
            if k > l:
                break
        acc = factor if not acc else _poly_mul(acc, factor, bound)
    if not acc:
        return GradedDims({}, bound)
    f = {g: -c for g, c in acc.items() if g != zero}
    bad = {g: c for g, c in f.items() if c < 0}
    if bad:
        g = min(bad)
        raise NegativeGeneratorCount(f"generator count {bad[g]} at grade {g}")
    return GradedDims(f, bound)


# ---------------------------------------------------------------------------
# Line example in H(3)

@dataclass(frozen=True)
class LineReport:
    bound: int
    dims: tuple[int, ...]  # dims[n - 1] = mult of n (b0 + b1), n = 1..bound
    m_plus: GradedDims
    generators: GradedDims

    def to_json(self) -> dict:
        return {
            "version": __version__,
            "bound": self.bound,
            "line_mults": {str(n + 1): str(d) for n, d in enumerate(self.dims)},
            "sl2": {"grade": 1, "root_space_dim": self.dims[0], "cartan": "h1+h2"},
            "M_plus_dims": {str(g[0]): str(v) for g, v in self.m_plus.dims.items()},
            "free_generators": {str(g[0]): str(v) for g, v in self.generators.dims.items()},
        }


def line_borcherds_h3(height_bound: int) -> LineReport:
    """Root spaces of H(3) along ``n (b0 + b1)``.

    Grade 1 together with ``h1 + h2`` forms sl2; the grades ``n >= 2`` form
    the free Lie algebra M+, whose generators are counted by
    :func:`witt_invert`.
    """
    if height_bound < 1:
        raise DomainError("height bound must be >= 1")
    eng = _h_engine(3, max(2 * height_bound, 2))
    dims = tuple(eng.mult((n, n)) for n in range(1, height_bound + 1))
    m_plus = GradedDims({(n,): dims[n - 1] for n in range(2, height_bound + 1)}, height_bound)
    return LineReport(height_bound, dims, m_plus, witt_invert(m_plus))


# ---------------------------------------------------------------------------
# Imaginary simple multiplicities

@dataclass
class SimpleMultTable:
    m: int
    bound: int
    mu: dict[tuple[int, int], int] = field(default_factory=dict)
    replay_ok: bool = False

    @property
    def simples(self) -> list[tuple[tuple[int, int], int]]:
        return [(b, k) for b, k in sorted(self.mu.items()) if k]

    def to_json(self) -> dict:
        return {"version": __version__, "m": self.m, "frontier": self.bound,
                "replay_consistent": self.replay_ok,
                "mu": {f"{b[0]},{b[1]}": v for b, v in sorted(self.mu.items())},
                "imaginary_simples": [{"beta": list(b), "mu": k} for b, k in self.simples]}


class _ExtendedPlane:
    """H(m) plus imaginary simple roots, in a free lattice of rank ``2 + k``.

    Coordinates are ``(x0, x1, y_1, ..., y_k)`` over ``b0, b1`` and the
    adjoined simples; the multiplicity at a plane point is the sum over all
    lattice vectors projecting to it.
    """

    def __init__(self, m: int, simples: Sequence[tuple[tuple[int, int], int]], max_height: int):
        self.m = m
        self.simples = list(simples)
        basis = [(1, 0), (0, 1)] + [b for b, _ in self.simples]
        gram = [[plane_pair(m, x, y) for y in basis] for x in basis]
        mults = [1, 1] + [k for _, k in self.simples]
        self.engine = PetersonEngine(gram, simple_mults=mults, max_height=max_height)

    def _fiber(self, beta: tuple[int, int]) -> Iterable[tuple[int, ...]]:
        k = len(self.simples)

        def rec(j: int, rest: tuple[int, int], acc: list[int]):
            if j == k:
                if rest[0] >= 0 and rest[1] >= 0:
                    yield (rest[0], rest[1], *acc)
                return
            s = self.simples[j][0]
            y = 0
            while rest[0] - y * s[0] >= 0 and rest[1] - y * s[1] >= 0:
                yield from rec(j + 1, (rest[0] - y * s[0], rest[1] - y * s[1]), acc + [y])
                y += 1

        return rec(0, beta, [])

    def dim(self, beta: tuple[int, int]) -> int:
        return sum(self.engine.mult(v) for v in self._fiber(beta) if any(v))


def mu_simple_mults(m: int, hheight_bound: int) -> SimpleMultTable:
    """Grow H(m) level by level until every plane root space of F is reached.

    At H-height ``i`` each plane point ``b`` receives
    ``mu(b) = Mult_F(b) - dim G^(i-1)_b`` new imaginary simple roots.  After
    each level the extended algebra is rebuilt from scratch and its
    dimensions compared with F at every processed point.
    """
    oracle = PlaneOracle(m, hheight_bound)
    table = SimpleMultTable(m, hheight_bound)
    found: list[tuple[tuple[int, int], int]] = []
    for i in range(1, hheight_bound + 1):
        ext = _ExtendedPlane(m, found, i)
        new = []
        for beta in _points(hheight_bound, exact=i):
            target = oracle.mult_f(beta)
            mu = target - ext.dim(beta)
            if mu < 0:
                raise NegativeMu(f"mu{beta} = {mu} at height {i}")
            if mu > 0 and (plane_pair(m, beta, (1, 0)) > 0 or plane_pair(m, beta, (0, 1)) > 0):
                raise EngineInconsistency(f"new simple root {beta} outside the fundamental chamber")
            table.mu[beta] = mu
            if mu:
                new.append((beta, mu))
        found.extend(new)
        replay = _ExtendedPlane(m, found, i)
        for beta in _points(i):
            if replay.dim(beta) != oracle.mult_f(beta):
                raise EngineInconsistency(f"replay mismatch at {beta} after height {i}")
    table.replay_ok = True
    return table


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)

"""Root multiplicities by the Peterson recursion.

For a symmetric integer Gram matrix ``G`` of simple roots and a vector ``b``
of simple-root coefficients, put ``c_b = sum_{k | b} mult(b / k) / k``.  Then

    (b, b - 2 rho) c_b = sum_{b' + b'' = b} (b', b'') c_{b'} c_{b''}

where the sum runs over ordered pairs of nonzero nonnegative vectors and
``(b, 2 rho) = sum_j b_j G_jj``.  The same identity holds for generalized
(Borcherds) Kac-Moody algebras once imaginary simple roots are given their
own coordinates, so the engine accepts arbitrary diagonal entries and a
multiplicity for every simple root.

Values of ``c`` are kept as integers scaled by ``L = lcm(1..H)`` where ``H``
bounds the height, so the recursion never leaves exact integer arithmetic.
"""
from __future__ import annotations

import json
from fractions import Fraction
from itertools import product
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import EngineInconsistency, HeightOverflow

Vector = tuple[int, ...]


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


class PetersonEngine:
    """Memoised multiplicity table for one (generalized) Cartan datum.

    Parameters
    ----------
    gram:
        Symmetric integer matrix ``(a_i, a_j)`` of the simple roots.
    simple_mults:
        Multiplicity of each simple root (1 for real simple roots).
    max_height:
        Largest coefficient sum the engine will process; requests beyond it
        raise :class:`HeightOverflow`.
    weyl_reduce:
        Before running the recursion, move the query down by simple
        reflections in real simple roots (multiplicities are Weyl
        invariant).  Only valid when every simple root with positive norm is
        a genuine real simple root.
    """

    def __init__(self, gram: Sequence[Sequence[int]], simple_mults: Sequence[int] | None = None,
                 max_height: int = 24, weyl_reduce: bool = False):
        self.gram = tuple(tuple(int(x) for x in row) for row in gram)
        self.rank = len(self.gram)
        for i in range(self.rank):
            for j in range(self.rank):
                if self.gram[i][j] != self.gram[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        self.simple_mults = tuple(simple_mults) if simple_mults is not None else (1,) * self.rank
        self.max_height = max_height
        self.weyl_reduce = weyl_reduce
        self._scale = lcm(*range(1, max_height + 1))
        self._c: dict[Vector, int] = {}
        self._mult: dict[Vector, int] = {}
        self._support: dict[Vector, int] = {}
        self._frozen = False

    # -- basic form -------------------------------------------------------
    def pair(self, x: Sequence[int], y: Sequence[int]) -> int:
        g = self.gram
        n = self.rank
        return sum(x[i] * g[i][j] * y[j] for i in range(n) if x[i] for j in range(n) if y[j])

    def _rho2(self, x: Sequence[int]) -> int:
        return sum(x[i] * self.gram[i][i] for i in range(self.rank))

    @property
    def frontier(self) -> int:
        return self.max_height

    def freeze(self) -> "PetersonEngine":
        """Forbid further table growth; later lookups must already be cached."""
        self._frozen = True
        return self

    # -- public queries ---------------------------------------------------
    def mult(self, beta: Iterable[int]) -> int:
        beta = tuple(int(x) for x in beta)
        if len(beta) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(beta)}")
        if all(x == 0 for x in beta):
            return 0
        if all(x <= 0 for x in beta):
            beta = tuple(-x for x in beta)
        elif any(x < 0 for x in beta):
            return 0
        if self.weyl_reduce:
            reduced = self._descend(beta)
            if reduced is None:
                return 0
            beta = reduced
        if beta not in self._mult:
            self._fill(beta)
        return self._mult[beta]

    def c_value(self, beta: Sequence[int]) -> Fraction:
        beta = tuple(beta)
        if beta not in self._c:
            self._fill(beta)
        return Fraction(self._c[beta], self._scale)

    def table(self, max_height: int | None = None) -> dict[Vector, int]:
        """Multiplicities of every positive vector with height <= ``max_height``."""
        h = self.max_height if max_height is None else max_height
        if h > self.max_height:
            raise HeightOverflow(f"height {h} exceeds bound {self.max_height}")
        out = {}
        for v in _vectors_up_to(self.rank, h):
            self._ensure(v)
            out[v] = self._mult[v]
        return out

    # -- recursion ----------------------------------------------------------
    def _descend(self, beta: Vector) -> Vector | None:
        g = self.gram
        while True:
            if sum(beta) == 1:
                return beta
            for i in range(self.rank):
                if g[i][i] <= 0:
                    continue
                p = sum(beta[k] * g[k][i] for k in range(self.rank))
                if p > 0:
                    step = 2 * p // g[i][i]
                    beta = beta[:i] + (beta[i] - step,) + beta[i + 1:]
                    if beta[i] < 0:
                        return None
                    break
            else:
                return beta

    def _fill(self, beta: Vector) -> None:
        h = sum(beta)
        if h > self.max_height:
            raise HeightOverflow(f"height {h} exceeds bound {self.max_height}")
        if self._frozen:
            raise HeightOverflow(f"table is frozen; {beta} was not computed")
        for v in sorted(product(*(range(x + 1) for x in beta)), key=sum):
            if any(v) and v not in self._c:
                self._compute(v)

    def _ensure(self, v: Vector) -> None:
        if v not in self._c:
            self._fill(v)

    def _compute(self, beta: Vector) -> None:
        scale = self._scale
        h = sum(beta)
        g = gcd(*beta)
        # contributions of proper divisors, scaled by L
        div_part = 0
        for k in _divisors(g)[1:]:
            sub = tuple(x // k for x in beta)
            div_part += self._mult[sub] * scale // k
        if h == 1:
            i = beta.index(1)
            m = self.simple_mults[i]
            self._store(beta, m * scale, m)
            return
        coef = self.pair(beta, beta) - self._rho2(beta)
        rhs = 0
        support = self._support
        for v, cv in support.items():
            if any(v[i] > beta[i] for i in range(self.rank)):
                continue
            w = tuple(beta[i] - v[i] for i in range(self.rank))
            cw = support.get(w)
            if cw is None:
                continue
            rhs += self.pair(v, w) * cv * cw
        # rhs carries scale**2
        if coef == 0:
            if rhs != 0:
                raise EngineInconsistency(f"vanishing coefficient with nonzero sum at {beta}")
            self._store(beta, div_part, 0)
            return
        num = rhs
        den = coef * scale
        if num % den:
            raise EngineInconsistency(f"non-integral scaled value at {beta}")
        c_scaled = num // den
        m_scaled = c_scaled - div_part
        if m_scaled % scale or m_scaled < 0:
            raise EngineInconsistency(f"multiplicity at {beta} is {Fraction(m_scaled, scale)}")
        self._store(beta, c_scaled, m_scaled // scale)

    def _store(self, beta: Vector, c_scaled: int, mult: int) -> None:
        self._c[beta] = c_scaled
        self._mult[beta] = mult
        if c_scaled:
            self._support[beta] = c_scaled

    # -- export ---------------------------------------------------------------
    def to_json(self) -> str:
        """Computed multiplicities as a JSON map ``"n1,n2,..." -> "decimal"``."""
        data = {",".join(map(str, k)): str(v) for k, v in sorted(self._mult.items())}
        return json.dumps({"gram": [list(r) for r in self.gram], "frontier": self.max_height,
                           "multiplicities": data}, sort_keys=True)


def _vectors_up_to(rank: int, h: int) -> list[Vector]:
    out: list[Vector] = []

    def rec(prefix: list[int], left: int):
        if len(prefix) == rank:
            if any(prefix):
                out.append(tuple(prefix))
            return
        for x in range(left + 1):
            rec(prefix + [x], left - x)

    rec([], h)
    out.sort(key=lambda v: (sum(v), v))
    return out


def multiplicity_table_from_json(text: str) -> dict[Vector, int]:
    data = json.loads(text)
    return {tuple(int(x) for x in k.split(",")): int(v) for k, v in data["multiplicities"].items()}

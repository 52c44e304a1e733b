"""Partition numbers and the level-2 multiplicity generating function of F."""
from __future__ import annotations

from functools import lru_cache

from . import lattice as L
from .lattice import SymMat2

_P = [1]


def partition_p(n: int) -> int:
    """Number of partitions of ``n`` (Euler's pentagonal recurrence)."""
    if n < 0:
        return 0
    while len(_P) <= n:
        m = len(_P)
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * _P[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * _P[m - g2]
            k += 1
        _P.append(total)
    return _P[n]


def _mul(x: list[int], y: list[int], n: int) -> list[int]:
    out = [0] * n
    for i, a in enumerate(x[:n]):
        if a:
            for j, b in enumerate(y[: n - i]):
                if b:
                    out[i + j] += a * b
    return out


def _product(factors, n: int) -> list[int]:
    """Truncated product of ``(1 + sign q^e)`` over ``(sign, e)`` pairs."""
    acc = [1] + [0] * (n - 1)
    for sign, e in factors:
        if e >= n:
            continue
        nxt = acc[:]
        for i in range(n - e):
            nxt[i + e] += sign * acc[i]
        acc = nxt
    return acc


@lru_cache(maxsize=None)
def level2_genfunc(terms: int) -> tuple[int, ...]:
    """First ``terms`` coefficients of the level-2 generating function.

    The series is ``P(q) * prod (1 - q^(4j-2)) * q^-3 / 2 *
    (prod (1 + q^(2j-1)) - prod (1 - q^(2j-1)) - 2q)`` with ``P`` the
    partition generating function.  The coefficient of ``q^(2a)`` is the
    multiplicity of ``[[a, 1], [1, 2]]`` and that of ``q^(2a+1)`` the
    multiplicity of ``[[a, 0], [0, 2]]``.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    n = terms + 3
    p = [partition_p(k) for k in range(n)]
    evens = _product([(-1, 4 * j - 2) for j in range(1, n)], n)
    plus = _product([(1, 2 * j - 1) for j in range(1, n)], n)
    minus = _product([(-1, 2 * j - 1) for j in range(1, n)], n)
    bracket = [x - y for x, y in zip(plus, minus)]
    bracket[1] -= 2
    if any(bracket[:3]):
        raise ArithmeticError("bracket does not start at q^3")
    if any(x % 2 for x in bracket):
        raise ArithmeticError("bracket has odd coefficients")
    shifted = [x // 2 for x in bracket[3:]] + [0, 0, 0]
    out = _mul(_mul(p, evens, n), shifted, n)
    return tuple(out[:terms])


def level2_root(index: int) -> SymMat2:
    """The level-2 normal form whose multiplicity is coefficient ``index``."""
    a, odd = divmod(index, 2)
    return SymMat2(a, 0, 2) if odd else SymMat2(a, 1, 2)


def level2_index(n: SymMat2) -> int:
    """Inverse of :func:`level2_root`: ``det + 1``."""
    if n.c != 2 or n.b not in (0, 1):
        raise ValueError(f"{n} is not a level-2 normal form")
    return int(n.det()) + 1


def first_partition_divergence(terms: int) -> int | None:
    """First index where the generating function differs from ``p(index)``."""
    for i, c in enumerate(level2_genfunc(terms)):
        if c != partition_p(i):
            return i
    return None


def level2_positive_coords(index: int) -> tuple[int, int, int]:
    """Positive simple-root coordinates of the negated level-2 normal form."""
    return tuple(-x for x in L.to_coords(level2_root(index)))

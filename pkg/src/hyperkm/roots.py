"""Root membership, normal forms and root strings.

Two kinds of ambient algebra are supported.  :class:`KMAmbient` works from a
symmetrizable generalized Cartan matrix and decides membership with the
Weyl-descent criterion: a positive vector is a real root iff simple
reflections carry it to a simple root, and an imaginary root iff they carry
it to a vector with connected support pairing non-positively with every
simple root.  :class:`FAmbient` is the rank 3 algebra F, where membership is
simply ``det >= -1`` in the matrix model.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from . import cartan as _cartan
from . import lattice as L
from .errors import (NotLightcone, NotRealRoot, NotRoot, WrongLevel, ZeroVector)
from .lattice import SymMat2, Pgl2Element
from .peterson import PetersonEngine

Vector = tuple[int, ...]


class Verdict(str, Enum):
    ROOT = "IsRoot"
    NOT_ROOT = "NotRoot"
    UNKNOWN = "Unknown"


class RootKind(str, Enum):
    REAL = "Real"
    NULL = "Null"
    TIMELIKE = "TimelikeImaginary"


class Sign(str, Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"


@dataclass(frozen=True)
class RootStatus:
    is_root: bool
    kind: RootKind | None
    sign: Sign | None

    def to_json(self) -> dict:
        return {"is_root": self.is_root,
                "kind": self.kind.value if self.kind else None,
                "sign": self.sign.value if self.sign else None}


def _sign_of(coords: Sequence[int]) -> Sign | None:
    if all(x >= 0 for x in coords) and any(coords):
        return Sign.POSITIVE
    if all(x <= 0 for x in coords) and any(coords):
        return Sign.NEGATIVE
    return None


# ---------------------------------------------------------------------------
# Ambient algebras

class KMAmbient:
    """A Kac-Moody algebra given by a symmetrizable generalized Cartan matrix."""

    name = "KM"

    def __init__(self, cm, labels: Sequence[str] | None = None, name: str | None = None,
                 max_height: int = 24):
        self.cartan = cm if isinstance(cm, _cartan.GeneralizedCartanMatrix) else _cartan.validate_gcm(cm)
        self.gram = _cartan.integer_gram(_cartan.gram_matrix(self.cartan))
        self.rank = self.cartan.rank
        self.labels = tuple(labels) if labels else tuple(str(i) for i in range(self.rank))
        if name:
            self.name = name
        self.max_height = max_height

    # -- form -----------------------------------------------------------------
    def pair(self, x: Sequence[int], y: Sequence[int]) -> int:
        g = self.gram
        return sum(x[i] * g[i][j] * y[j] for i in range(self.rank) if x[i]
                   for j in range(self.rank) if y[j])

    def norm(self, x: Sequence[int]) -> int:
        return self.pair(x, x)

    def coroot_pair(self, x: Sequence[int], i: int) -> int:
        """``<x, a_i^vee> = 2 (x, a_i) / (a_i, a_i)``."""
        p = sum(x[k] * self.gram[k][i] for k in range(self.rank))
        q, r = divmod(2 * p, self.gram[i][i])
        if r:
            raise ValueError("lattice vector pairs non-integrally with a coroot")
        return q

    def cartan_entry(self, x: Sequence[int], y: Sequence[int]) -> int:
        """``2 (x, y) / (y, y)`` for a real root ``y``."""
        q, r = divmod(2 * self.pair(x, y), self.norm(y))
        if r:
            raise ValueError("Cartan entry is not an integer")
        return q

    def unit(self, i: int) -> Vector:
        return tuple(int(k == i) for k in range(self.rank))

    @cached_property
    def max_simple_norm(self) -> int:
        return max(self.gram[i][i] for i in range(self.rank))

    # -- membership -----------------------------------------------------------
    def descend(self, x: Sequence[int]) -> tuple[Vector | None, tuple[int, ...]]:
        """Lower a positive vector by simple reflections.

        Returns ``(y, word)`` where ``y`` is either a simple root or pairs
        non-positively with every simple root, and ``word`` lists the
        reflections applied in order.  ``y`` is ``None`` if the orbit leaves
        the positive cone, which proves ``x`` is not a root.
        """
        x = tuple(x)
        word = []
        while True:
            if sum(x) == 1:
                return x, tuple(word)
            for i in range(self.rank):
                k = self.coroot_pair(x, i)
                if k > 0:
                    x = x[:i] + (x[i] - k,) + x[i + 1:]
                    word.append(i)
                    if x[i] < 0:
                        return None, tuple(word)
                    break
            else:
                return x, tuple(word)

    def _support_connected(self, x: Sequence[int]) -> bool:
        supp = [i for i in range(self.rank) if x[i]]
        return self.cartan.principal(supp).is_connected()

    def root_verdict(self, x: Sequence[int]) -> Verdict:
        x = tuple(x)
        sign = _sign_of(x)
        if sign is None:
            return Verdict.NOT_ROOT
        if sign is Sign.NEGATIVE:
            x = tuple(-v for v in x)
        if self.norm(x) > self.max_simple_norm:
            return Verdict.NOT_ROOT
        y, _ = self.descend(x)
        if y is None:
            return Verdict.NOT_ROOT
        if sum(y) == 1:
            return Verdict.ROOT
        return Verdict.ROOT if self._support_connected(y) else Verdict.NOT_ROOT

    def is_root(self, x: Sequence[int]) -> bool:
        return self.root_verdict(x) is Verdict.ROOT

    def is_real_root(self, x: Sequence[int]) -> bool:
        x = tuple(x)
        sign = _sign_of(x)
        if sign is None:
            return False
        if sign is Sign.NEGATIVE:
            x = tuple(-v for v in x)
        y, _ = self.descend(x)
        return y is not None and sum(y) == 1

    def is_positive_real(self, x: Sequence[int]) -> bool:
        return _sign_of(x) is Sign.POSITIVE and self.is_real_root(x)

    def status(self, x: Sequence[int]) -> RootStatus:
        x = tuple(x)
        if not any(x):
            raise ZeroVector("the zero vector is not a root")
        if not self.is_root(x):
            return RootStatus(False, None, None)
        n = self.norm(x)
        kind = RootKind.REAL if n > 0 else RootKind.NULL if n == 0 else RootKind.TIMELIKE
        return RootStatus(True, kind, _sign_of(x))

    # -- multiplicities -------------------------------------------------------
    @cached_property
    def engine(self) -> PetersonEngine:
        return PetersonEngine(self.gram, max_height=self.max_height, weyl_reduce=True)

    def mult(self, x: Sequence[int]) -> int:
        return self.engine.mult(x)

    def to_json(self) -> dict:
        return {"name": self.name, "cartan": self.cartan.to_json(), "labels": list(self.labels)}


class OverextendedAmbient(KMAmbient):
    """Lorentzian algebra from :func:`cartan.overextend`; coordinates ``[-1, 0, 1..r]``."""

    def __init__(self, finite, max_height: int = 24):
        self.data = _cartan.overextend(finite)
        r = self.data.r
        label = self.data.label or "custom"
        super().__init__(self.data.lorentzian, ["-1", "0"] + [str(i) for i in range(1, r + 1)],
                         name=f"over:{label}", max_height=max_height)

    @property
    def delta(self) -> Vector:
        return self.data.delta

    @property
    def r(self) -> int:
        return self.data.r


class FAmbient(OverextendedAmbient):
    """The rank 3 hyperbolic algebra F with exact ``det`` membership."""

    name = "F"

    def __init__(self, max_height: int = 24):
        super().__init__("A1", max_height=max_height)
        self.name = "F"

    def root_verdict(self, x: Sequence[int]) -> Verdict:
        if not any(x):
            return Verdict.NOT_ROOT
        return Verdict.ROOT if L.to_matrix(x).det() >= -1 else Verdict.NOT_ROOT

    def is_real_root(self, x: Sequence[int]) -> bool:
        return any(x) and L.to_matrix(x).det() == -1


F = FAmbient()


def ambient_by_name(name: str, max_height: int = 24) -> KMAmbient:
    """``"F"`` or ``"over:<finite label>"`` (e.g. ``"over:E8"``)."""
    if name == "F":
        return F if max_height == F.max_height else FAmbient(max_height)
    if name.startswith("over:"):
        label = name.split(":", 1)[1]
        if label == "A1":
            return FAmbient(max_height)
        return OverextendedAmbient(label, max_height)
    raise ValueError(f"unknown ambient {name!r}")


# ---------------------------------------------------------------------------
# F in the matrix model

def root_status_F(n: SymMat2) -> RootStatus:
    if n.is_zero():
        raise ZeroVector("the zero matrix is not a root")
    d = n.det()
    if d < -1:
        return RootStatus(False, None, None)
    kind = RootKind.REAL if d == -1 else RootKind.NULL if d == 0 else RootKind.TIMELIKE
    return RootStatus(True, kind, _sign_of(L.to_coords(n)))


def enumerate_roots_F(levels: Iterable[int], height_bound: int) -> list[tuple[SymMat2, RootStatus]]:
    """All roots with level in ``levels`` and ``|n_-1| + |n_0| + |n_1| <= height_bound``.

    Sorted by level, then height, then coordinates.
    """
    found = []
    for c in sorted(set(levels)):
        m1 = -c
        rest = height_bound - abs(m1)
        if rest < 0:
            continue
        for z in range(-rest, rest + 1):
            for o in range(-(rest - abs(z)), rest - abs(z) + 1):
                coords = (m1, z, o)
                if not any(coords):
                    continue
                n = L.to_matrix(coords)
                if n.det() >= -1:
                    found.append((sum(abs(v) for v in coords), coords, n))
    found.sort(key=lambda t: (t[2].c, t[0], t[1]))
    return [(n, root_status_F(n)) for _, _, n in found]


def _ext_gcd(x: int, y: int) -> tuple[int, int, int]:
    if y == 0:
        return (x, 1, 0) if x >= 0 else (-x, -1, 0)
    g, u, w = _ext_gcd(y, x % y)
    return g, w, u - (x // y) * w


def _isqrt_exact(n: int) -> int:
    from math import isqrt
    r = isqrt(n)
    if r * r != n:
        raise NotLightcone("entries are not of the form s x^2, s y^2")
    return r


def lightcone_normal_form(n: SymMat2) -> tuple[int, Pgl2Element]:
    """Return ``(a, g)`` with ``g`` applied to ``n`` equal to ``[[a, 0], [0, 0]]``."""
    if n.is_zero() or not n.is_integral or n.det() != 0:
        raise NotLightcone(f"{n} is not a nonzero light-cone vector")
    a, b, c = int(n.a), int(n.b), int(n.c)
    s = gcd(a, c)
    if (a if a else c) < 0:
        s = -s
    x = _isqrt_exact(a // s)
    y = _isqrt_exact(c // s)
    if b * s < 0:
        y = -y
    _, u, w = _ext_gcd(x, y)
    g = L.decompose(Pgl2Element(((u, w), (-y, x))))
    return s, g


def level1_normal_form(n: SymMat2) -> tuple[int, Pgl2Element]:
    """Move a level-1 root to ``[[a, 0], [0, 1]]`` with ``r_0`` and ``r_1``."""
    if L.level(n) != 1:
        raise WrongLevel(f"{n} has level {L.level(n)}, not 1")
    if n.det() < -1:
        raise NotRoot(f"{n} is not a root")
    g = L.IDENTITY
    while n.b != 0:
        h = L.R_1 if n.b < 0 else L.R_0
        n = L.weyl_apply(h, n)
        g = h @ g
    return int(n.a), g


def root_string(beta_j: Sequence[int], beta_i: Sequence[int], ambient: KMAmbient | None = None,
                limit: int = 10_000) -> tuple[int, int]:
    """``(p, q)`` such that ``beta_j + k beta_i`` is a root exactly for ``-p <= k <= q``."""
    amb = ambient or F
    beta_j, beta_i = tuple(beta_j), tuple(beta_i)
    if not amb.is_real_root(beta_i):
        raise NotRealRoot(f"{beta_i} is not a real root")
    if not amb.is_root(beta_j):
        raise NotRoot(f"{beta_j} is not a root")

    def run(sign: int) -> int:
        k = 0
        while k < limit:
            v = tuple(x + sign * (k + 1) * y for x, y in zip(beta_j, beta_i))
            if not any(v) or not amb.is_root(v):
                return k
            k += 1
        raise RuntimeError("root string exceeded the search limit")

    return run(-1), run(1)

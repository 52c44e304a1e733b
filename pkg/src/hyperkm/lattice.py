"""The root lattice of F as symmetric 2x2 integer matrices.

A root ``[[a, b], [b, c]]`` is stored as :class:`SymMat2`.  The bilinear form
is ``2 b b' - a c' - a' c`` and the norm is ``-2 det``.  The simple roots are

    a_{-1} = [[1, 0], [0, -1]],  a_0 = [[-1, -1], [-1, 0]],  a_1 = [[0, 1], [1, 0]]

and ``A`` in PGL2(Z) acts by ``N -> A N A^T``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import HalfIntegerCoordinates, NotRealRoot


@dataclass(frozen=True)
class SymMat2:
    a: int | Fraction
    b: int | Fraction
    c: int | Fraction

    def __post_init__(self):
        for name in ("a", "c"):
            v = getattr(self, name)
            if Fraction(v).denominator != 1:
                raise ValueError(f"entry {name} must be an integer")
        if (2 * Fraction(self.b)).denominator != 1:
            raise ValueError("entry b must be an integer or half-integer")

    @property
    def is_integral(self) -> bool:
        return Fraction(self.b).denominator == 1

    def det(self):
        return self.a * self.c - self.b * self.b

    def trace(self):
        return self.a + self.c

    def __add__(self, other: "SymMat2") -> "SymMat2":
        return SymMat2(self.a + other.a, self.b + other.b, self.c + other.c)

    def __sub__(self, other: "SymMat2") -> "SymMat2":
        return SymMat2(self.a - other.a, self.b - other.b, self.c - other.c)

    def __neg__(self) -> "SymMat2":
        return SymMat2(-self.a, -self.b, -self.c)

    def __mul__(self, k: int) -> "SymMat2":
        return SymMat2(k * self.a, k * self.b, k * self.c)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0

    def as_tuple(self) -> tuple:
        return (self.a, self.b, self.c)

    def rows(self) -> list[list]:
        return [[self.a, self.b], [self.b, self.c]]

    def __str__(self) -> str:
        return f"[{self.a},{self.b};{self.b},{self.c}]"


Coords = tuple[int, int, int]

ALPHA_M1 = SymMat2(1, 0, -1)
ALPHA_0 = SymMat2(-1, -1, 0)
ALPHA_1 = SymMat2(0, 1, 0)
SIMPLE_ROOTS = (ALPHA_M1, ALPHA_0, ALPHA_1)
SIMPLE_LABELS = ("-1", "0", "1")
CARTAN_F = ((2, -1, 0), (-1, 2, -2), (0, -2, 2))
DELTA: Coords = (0, 1, 1)


def bilinear(x: SymMat2, y: SymMat2):
    return 2 * x.b * y.b - x.a * y.c - y.a * x.c


def norm(x: SymMat2):
    return bilinear(x, x)


def to_coords(n: SymMat2) -> Coords:
    """Coefficients ``(n_{-1}, n_0, n_1)`` of ``n`` over the simple roots."""
    if not n.is_integral:
        raise HalfIntegerCoordinates(f"{n} is not in the root lattice")
    a, b, c = int(n.a), int(n.b), int(n.c)
    return (-c, -a - c, b - a - c)


def to_matrix(coords: Sequence[int]) -> SymMat2:
    m1, z, o = coords
    return SymMat2(m1 - z, o - z, -m1)


def coords_bilinear(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(x[i] * CARTAN_F[i][j] * y[j] for i in range(3) for j in range(3))


def level(n: SymMat2):
    """Level of ``n``: its lower-right entry ``c``."""
    return n.c


def reflect(beta: SymMat2, n: SymMat2) -> SymMat2:
    """Reflection of ``n`` in the hyperplane orthogonal to the real root ``beta``."""
    if norm(beta) != 2:
        raise NotRealRoot(f"{beta} has norm {norm(beta)}, not 2")
    return n - beta * bilinear(n, beta)


# ---------------------------------------------------------------------------
# PGL2(Z)

def _canon(m: Sequence[Sequence[int]]) -> tuple[tuple[int, int], tuple[int, int]]:
    (p, q), (r, s) = m
    first = next(x for x in (p, q, r, s) if x != 0)
    if first < 0:
        p, q, r, s = -p, -q, -r, -s
    return ((p, q), (r, s))


@dataclass(frozen=True)
class Pgl2Element:
    """An element of PGL2(Z), stored with its first nonzero entry positive.

    ``word`` optionally records a product of simple reflections, written
    left to right as matrices are multiplied (so the rightmost letter acts
    first).  Equality ignores the word.
    """

    entries: tuple[tuple[int, int], tuple[int, int]]
    word: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        ent = _canon(self.entries)
        object.__setattr__(self, "entries", ent)
        (p, q), (r, s) = ent
        if p * s - q * r not in (1, -1):
            raise ValueError("matrix is not invertible over Z")

    @property
    def det(self) -> int:
        (p, q), (r, s) = self.entries
        return p * s - q * r

    def __matmul__(self, other: "Pgl2Element") -> "Pgl2Element":
        (p, q), (r, s) = self.entries
        (p2, q2), (r2, s2) = other.entries
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return Pgl2Element(((p * p2 + q * r2, p * q2 + q * s2),
                            (r * p2 + s * r2, r * q2 + s * s2)), word)

    def inverse(self) -> "Pgl2Element":
        (p, q), (r, s) = self.entries
        d = self.det
        word = tuple(reversed(self.word)) if self.word is not None else None
        return Pgl2Element(((s * d, -q * d), (-r * d, p * d)), word)

    def is_identity(self) -> bool:
        return self.entries == ((1, 0), (0, 1))

    def word_label(self) -> str:
        if self.word is None:
            return "?"
        if not self.word:
            return "1"
        return " ".join(f"r{SIMPLE_LABELS[i]}" for i in self.word)


IDENTITY = Pgl2Element(((1, 0), (0, 1)), ())
R_M1 = Pgl2Element(((0, 1), (1, 0)), (0,))
R_0 = Pgl2Element(((-1, 1), (0, 1)), (1,))
R_1 = Pgl2Element(((1, 0), (0, -1)), (2,))
GENERATORS = (R_M1, R_0, R_1)


def from_word(word: Iterable[int]) -> Pgl2Element:
    """Product of simple reflections; letters are 0, 1, 2 for r_{-1}, r_0, r_1."""
    g = IDENTITY
    for i in word:
        g = g @ GENERATORS[i]
    return g


def weyl_apply(g: Pgl2Element, n: SymMat2) -> SymMat2:
    (p, q), (r, s) = g.entries
    a, b, c = n.a, n.b, n.c
    return SymMat2(p * p * a + 2 * p * q * b + q * q * c,
                   p * r * a + (p * s + q * r) * b + q * s * c,
                   r * r * a + 2 * r * s * b + s * s * c)


def apply_word(word: Iterable[int], n: SymMat2) -> SymMat2:
    """Apply ``r_{w_1} r_{w_2} ... r_{w_k}`` to ``n`` (rightmost first)."""
    for i in reversed(tuple(word)):
        n = reflect(SIMPLE_ROOTS[i], n)
    return n


def reflection_pgl2(beta: SymMat2) -> Pgl2Element:
    """The PGL2(Z) matrix acting as the reflection in the real root ``beta``.

    It is ``beta J`` with ``J = [[0, 1], [-1, 0]]``.
    """
    if not beta.is_integral or norm(beta) != 2:
        raise NotRealRoot(f"{beta} is not a real root")
    a, b, c = int(beta.a), int(beta.b), int(beta.c)
    return Pgl2Element(((-b, a), (-c, b)))


# Interior point of the dominant chamber: pairs to -2 with every simple root.
_CHAMBER_POINT = (4, 10, 9)


def decompose(g: Pgl2Element) -> Pgl2Element:
    """Return ``g`` with a reduced word in the simple reflections attached.

    Moves the image of an interior chamber point back to the chamber by
    simple reflections; the stabiliser of that point is trivial.
    """
    x = weyl_apply(g, to_matrix(_CHAMBER_POINT))
    letters: list[int] = []
    while True:
        for i, alpha in enumerate(SIMPLE_ROOTS):
            if bilinear(x, alpha) > 0:
                x = reflect(alpha, x)
                letters.append(i)
                break
        else:
            break
    # r_{ik} ... r_{i1} g = 1, so g = r_{i1} ... r_{ik}
    return Pgl2Element(g.entries, tuple(letters))

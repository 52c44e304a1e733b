"""Generalized Cartan matrices.

Convention: entry ``(i, j)`` equals ``2 (a_i, a_j) / (a_j, a_j)`` for simple
roots ``a_i``; the column index carries the coroot.  For simply-laced matrices
this is the usual symmetric matrix.

Finite types are available by label (``"A3"``, ``"E8"``, ...) in Bourbaki node
numbering.  :func:`overextend` builds the Lorentzian matrix of rank ``r + 2``
with nodes ordered ``[-1, 0, 1, ..., r]``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

from . import linalg
from .errors import (Decomposable, NonCartan, NotAffine, NotFinite,
                     NotSymmetrizable, UnknownType)


class Kind(str, Enum):
    FINITE = "Finite"
    AFFINE = "Affine"
    INDEFINITE = "Indefinite"


@dataclass(frozen=True)
class CartanClass:
    kind: Kind
    hyperbolic: bool = False

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "hyperbolic": self.hyperbolic}


@dataclass(frozen=True)
class GeneralizedCartanMatrix:
    entries: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def det(self) -> int:
        return linalg.det(self.entries)

    def principal(self, keep: Sequence[int]) -> "GeneralizedCartanMatrix":
        return GeneralizedCartanMatrix(tuple(tuple(r) for r in linalg.submatrix(self.entries, keep)))

    def is_symmetric(self) -> bool:
        n = self.rank
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(n))

    def components(self) -> list[list[int]]:
        """Connected components of the Dynkin diagram as sorted index lists."""
        n = self.rank
        seen = [False] * n
        comps = []
        for s in range(n):
            if seen[s]:
                continue
            stack, comp = [s], []
            seen[s] = True
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in range(n):
                    if not seen[j] and self.entries[i][j] != 0:
                        seen[j] = True
                        stack.append(j)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def to_json(self) -> list[list[int]]:
        return self.rows()


def validate_gcm(entries: Sequence[Sequence[int]]) -> GeneralizedCartanMatrix:
    """Check the generalized Cartan matrix axioms and wrap the matrix."""
    n = len(entries)
    if any(len(row) != n for row in entries):
        raise NonCartan("matrix is not square")
    rows = []
    for i, row in enumerate(entries):
        out = []
        for j, x in enumerate(row):
            if Fraction(x).denominator != 1:
                raise NonCartan(f"entry ({i},{j}) = {x} is not an integer")
            out.append(int(x))
        rows.append(tuple(out))
    for i in range(n):
        if rows[i][i] != 2:
            raise NonCartan(f"diagonal entry ({i},{i}) is {rows[i][i]}, expected 2")
        for j in range(n):
            if i == j:
                continue
            if rows[i][j] > 0:
                raise NonCartan(f"off-diagonal entry ({i},{j}) = {rows[i][j]} is positive")
            if (rows[i][j] == 0) != (rows[j][i] == 0):
                raise NonCartan(f"zero pattern not symmetric at ({i},{j})")
    return GeneralizedCartanMatrix(tuple(rows))


def _as_gcm(m) -> GeneralizedCartanMatrix:
    return m if isinstance(m, GeneralizedCartanMatrix) else validate_gcm(m)


def _kind_by_minors(m: GeneralizedCartanMatrix) -> Kind:
    n = m.rank
    for size in range(1, n):
        for keep in combinations(range(n), size):
            if linalg.det(linalg.submatrix(m.entries, keep)) <= 0:
                return Kind.INDEFINITE
    d = m.det()
    if d > 0:
        return Kind.FINITE
    if d == 0:
        return Kind.AFFINE
    return Kind.INDEFINITE


def classify(m) -> CartanClass:
    """Finite / affine / indefinite type of an indecomposable matrix.

    Finite iff every principal minor is positive; affine iff the determinant
    vanishes and every proper principal minor is positive; indefinite
    otherwise.  Hyperbolic means indefinite with every proper connected
    principal submatrix of finite or affine type.
    """
    m = _as_gcm(m)
    if not m.is_connected():
        raise Decomposable("Dynkin diagram is not connected")
    kind = _kind_by_minors(m)
    if kind is not Kind.INDEFINITE:
        return CartanClass(kind, False)
    n = m.rank
    hyperbolic = True
    for size in range(1, n):
        for keep in combinations(range(n), size):
            sub = m.principal(keep)
            if sub.is_connected() and _kind_by_minors(sub) is Kind.INDEFINITE:
                hyperbolic = False
                break
        if not hyperbolic:
            break
    return CartanClass(Kind.INDEFINITE, hyperbolic)


def symmetrize(m) -> tuple[tuple[Fraction, ...], tuple[tuple[Fraction, ...], ...]]:
    """Return ``(d, D M)`` with ``D = diag(d)`` positive and ``D M`` symmetric.

    ``d`` is scaled to coprime positive integers on each connected component.
    """
    m = _as_gcm(m)
    n = m.rank
    d: list[Fraction | None] = [None] * n
    for comp in m.components():
        d[comp[0]] = Fraction(1)
        stack = [comp[0]]
        while stack:
            i = stack.pop()
            for j in comp:
                if j == i or m[i, j] == 0:
                    continue
                want = d[i] * m[i, j] / m[j, i]
                if d[j] is None:
                    d[j] = want
                    stack.append(j)
                elif d[j] != want:
                    raise NotSymmetrizable(f"cycle condition fails at nodes {i}, {j}")
        ints = linalg.primitive([d[i] for i in comp])
        for i, v in zip(comp, ints):
            d[i] = Fraction(v)
    dm = tuple(tuple(d[i] * m[i, j] for j in range(n)) for i in range(n))
    return tuple(d), dm


def gram_matrix(m) -> tuple[tuple[Fraction, ...], ...]:
    """Invariant form ``(a_i, a_j)`` realising ``m`` in this module's convention.

    Each component is normalised so that its longest simple roots have
    squared length 2.
    """
    m = _as_gcm(m)
    n = m.rank
    d, _ = symmetrize(m)
    norms = [Fraction(0)] * n
    for comp in m.components():
        # (a_i, a_j) = m_ij (a_j, a_j) / 2 is symmetric iff squared lengths
        # are proportional to 1 / d_j.
        inv = [1 / d[j] for j in comp]
        top = max(inv)
        for j, v in zip(comp, inv):
            norms[j] = 2 * v / top
    return tuple(tuple(m[i, j] * norms[j] / 2 for j in range(n)) for i in range(n))


def cartan_from_gram(gram: Sequence[Sequence[Fraction | int]]) -> GeneralizedCartanMatrix:
    n = len(gram)
    return validate_gcm([[Fraction(2 * gram[i][j]) / gram[j][j] for j in range(n)] for i in range(n)])


# ---------------------------------------------------------------------------
# Named finite types (Bourbaki numbering), described by their Gram matrices.

def _chain_gram(norms: Sequence[Fraction], edges: dict[tuple[int, int], Fraction]):
    n = len(norms)
    g = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = Fraction(norms[i])
    for (i, j), v in edges.items():
        g[i][j] = g[j][i] = Fraction(v)
    return g


def finite_gram(label: str) -> list[list[Fraction]]:
    mt = re.fullmatch(r"([A-G])_?(\d+)", label.strip())
    if not mt:
        raise UnknownType(f"cannot parse finite type label {label!r}")
    t, r = mt.group(1), int(mt.group(2))
    one, half = Fraction(1), Fraction(1, 2)
    chain = {(i, i + 1): -one for i in range(r - 1)}
    if t == "A" and r >= 1:
        return _chain_gram([2] * r, chain)
    if t == "B" and r >= 2:
        return _chain_gram([2] * (r - 1) + [1], chain)
    if t == "C" and r >= 2:
        edges = {(i, i + 1): -half for i in range(r - 2)}
        edges[(r - 2, r - 1)] = -one
        return _chain_gram([1] * (r - 1) + [2], edges)
    if t == "D" and r >= 4:
        edges = {(i, i + 1): -one for i in range(r - 2)}
        edges[(r - 3, r - 1)] = -one
        return _chain_gram([2] * r, edges)
    if t == "E" and r in (6, 7, 8):
        edges = {(0, 2): -one, (1, 3): -one}
        for i in range(2, r - 1):
            edges[(i, i + 1)] = -one
        return _chain_gram([2] * r, edges)
    if t == "F" and r == 4:
        return _chain_gram([2, 2, 1, 1], {(0, 1): -one, (1, 2): -one, (2, 3): -half})
    if t == "G" and r == 2:
        return _chain_gram([Fraction(2, 3), 2], {(0, 1): -one})
    raise UnknownType(f"no finite type {label!r}")


def finite_type(label: str) -> GeneralizedCartanMatrix:
    """Cartan matrix of a named finite type, e.g. ``finite_type("D4")``."""
    return cartan_from_gram(finite_gram(label))


FINITE_LABELS = tuple(
    [f"A{r}" for r in range(1, 9)] + [f"B{r}" for r in range(2, 9)]
    + [f"C{r}" for r in range(2, 9)] + [f"D{r}" for r in range(4, 9)]
    + ["E6", "E7", "E8", "F4", "G2"]
)


# ---------------------------------------------------------------------------
# Affine data and over-extension

@dataclass(frozen=True)
class AffineData:
    marks: tuple[int, ...]
    affine_node: int

    @property
    def null_root(self) -> tuple[int, ...]:
        """Coefficients of the null root over the affine simple roots."""
        return self.marks


def marks(m, affine_node: int = 0) -> AffineData:
    """Marks of an affine matrix: the null root over the simple roots.

    With ``C_ij = 2(a_i, a_j)/(a_j, a_j)`` the null root spans the kernel of
    the transpose (``(delta, a_i) = 0`` for every ``i``).

    Raises :class:`NotAffine` if the matrix is not affine or if the mark of
    ``affine_node`` is not 1.
    """
    m = _as_gcm(m)
    if classify(m).kind is not Kind.AFFINE:
        raise NotAffine("matrix is not of affine type")
    kernel = linalg.nullspace(linalg.transpose(m.entries))
    if len(kernel) != 1:
        raise NotAffine("kernel is not one-dimensional")
    vec = kernel[0]
    if vec[0] < 0:
        vec = tuple(-x for x in vec)
    if any(x <= 0 for x in vec):
        raise NotAffine("kernel vector is not positive")
    if vec[affine_node] != 1:
        raise NotAffine(f"node {affine_node} has mark {vec[affine_node]}, not 1")
    return AffineData(tuple(vec), affine_node)


def finite_roots(gram: Sequence[Sequence[Fraction]]) -> set[tuple[int, ...]]:
    """All roots of a finite root system, in simple-root coordinates."""
    n = len(gram)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                pair = sum(beta[k] * gram[k][i] for k in range(n))
                c = 2 * pair / gram[i][i]
                if c == 0:
                    continue
                img = list(beta)
                img[i] -= int(c)
                img = tuple(img)
                if img not in roots:
                    roots.add(img)
                    nxt.append(img)
        frontier = nxt
        if len(roots) > 10_000:
            raise NotFinite("root system is not finite")
    return roots


def highest_root(gram: Sequence[Sequence[Fraction]]) -> tuple[int, ...]:
    pos = [r for r in finite_roots(gram) if all(x >= 0 for x in r)]
    return max(pos, key=lambda r: (sum(r), r))


@dataclass(frozen=True)
class Overextension:
    """Lorentzian matrix obtained by extending a finite type twice.

    Index ``k`` of ``lorentzian``/``gram`` is the simple root ``a_{k-1}``.
    ``finite_order`` lists the original finite node numbers in their new
    order ``a_1, ..., a_r``.
    """

    lorentzian: GeneralizedCartanMatrix
    gram: tuple[tuple[Fraction, ...], ...]
    affine: AffineData
    finite: GeneralizedCartanMatrix
    finite_order: tuple[int, ...]
    label: str = ""
    affine_matrix: GeneralizedCartanMatrix = field(default=None)

    def __iter__(self):
        return iter((self.lorentzian, self.gram, self.affine))

    @property
    def r(self) -> int:
        return self.finite.rank

    @property
    def delta(self) -> tuple[int, ...]:
        """Null root in Lorentzian simple-root coordinates."""
        return (0,) + self.affine.marks


def overextend(finite) -> Overextension:
    """Attach the affine node and then one more node to a finite type.

    The finite nodes are reordered so that ``a_1`` is the (first) node
    joined to the affine node; the remaining nodes keep their order.
    """
    label = ""
    if isinstance(finite, str):
        label = finite
        gram_fin = finite_gram(finite)
        cm = cartan_from_gram(gram_fin)
    else:
        cm = _as_gcm(finite)
        if not cm.is_connected():
            raise NotFinite("finite part must be connected")
        if classify(cm).kind is not Kind.FINITE:
            raise NotFinite("matrix is not of finite type")
        gram_fin = [list(r) for r in gram_matrix(cm)]
    if classify(cm).kind is not Kind.FINITE:
        raise NotFinite("matrix is not of finite type")
    r = cm.rank
    theta = highest_root(gram_fin)
    theta_pair = [sum(theta[k] * gram_fin[k][j] for k in range(r)) for j in range(r)]
    attached = [j for j in range(r) if theta_pair[j] != 0]
    order = [attached[0]] + [j for j in range(r) if j != attached[0]]
    g_fin = [[gram_fin[i][j] for j in order] for i in order]
    th = [theta[j] for j in order]
    th_pair = [theta_pair[j] for j in order]
    theta_norm = sum(th[i] * th_pair[i] for i in range(r))
    size = r + 2
    g = [[Fraction(0)] * size for _ in range(size)]
    g[0][0] = Fraction(2)
    g[0][1] = g[1][0] = Fraction(-1)
    g[1][1] = theta_norm
    for j in range(r):
        g[1][j + 2] = g[j + 2][1] = -th_pair[j]
        for k in range(r):
            g[j + 2][k + 2] = g_fin[j][k]
    lor = cartan_from_gram(g)
    aff = lor.principal(range(1, size))
    affine = AffineData((1,) + tuple(th), 0)
    fin = lor.principal(range(2, size))
    return Overextension(lor, tuple(tuple(row) for row in g), affine, fin, tuple(order),
                         label, aff)


def det_identity_check(c, m: int, fin_det: int, sub_det: int) -> bool:
    """``det(C) == 2 fin_det - m**2 sub_det`` in exact integers."""
    c = _as_gcm(c)
    return c.det() == 2 * fin_det - m * m * sub_det


def integer_gram(gram: Sequence[Sequence[Fraction | int]]) -> tuple[tuple[int, ...], ...]:
    """Scale a rational Gram matrix by the least positive integer clearing denominators."""
    den = 1
    for row in gram:
        for x in row:
            q = Fraction(x).denominator
            den = den * q // gcd(den, q)
    return tuple(tuple(int(Fraction(x) * den) for x in row) for row in gram)

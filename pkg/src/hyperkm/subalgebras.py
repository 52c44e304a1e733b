"""Subalgebras generated by root vectors of chosen positive real roots.

A set of positive real roots whose pairwise differences are not roots is a
simple root system of a Kac-Moody subalgebra with Cartan matrix
``2 (b_i, b_j) / (b_j, b_j)``.  This module checks candidate sets, builds the
three infinite series and the worked examples inside F, and expresses root
vectors as nested commutators of Chevalley generators.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from . import lattice as L
from . import linalg
from .cartan import CartanClass, GeneralizedCartanMatrix, classify
from .errors import DomainError, NoDescent, NotPositiveReal
from .roots import F, KMAmbient, OverextendedAmbient, Verdict

Vector = tuple[int, ...]


@dataclass(frozen=True)
class SimpleRootSet:
    ambient: KMAmbient
    roots: tuple[Vector, ...]
    name: str = ""
    # optional Weyl words: (word, simple index) meaning r_{w1} ... r_{wk} a_index
    words: tuple[tuple[tuple[int, ...], int], ...] | None = None

    def __len__(self) -> int:
        return len(self.roots)

    def to_json(self) -> dict:
        return {"ambient": self.ambient.name, "name": self.name,
                "roots": [list(r) for r in self.roots]}


class Validity(str, Enum):
    VALID = "Valid"
    CONDITIONAL = "ConditionallyValid"
    INVALID = "Invalid"


@dataclass(frozen=True)
class SubalgebraReport:
    roots: tuple[Vector, ...]
    cartan_entries: tuple[tuple[int, ...], ...]
    difference_verdicts: tuple[tuple[Verdict | None, ...], ...]
    dependencies: tuple[Vector, ...]
    classification: CartanClass | None
    validity: Validity
    offending: tuple[tuple[int, int], ...] = field(default=())

    @property
    def is_valid(self) -> bool:
        return self.validity is Validity.VALID

    @property
    def cartan(self) -> GeneralizedCartanMatrix:
        return GeneralizedCartanMatrix(self.cartan_entries)

    def to_json(self) -> dict:
        return {
            "roots": [list(r) for r in self.roots],
            "validity": self.validity.value,
            "cartan": [list(r) for r in self.cartan_entries],
            "difference_verdicts": [[v.value if v else None for v in row]
                                    for row in self.difference_verdicts],
            "offending_pairs": [list(p) for p in self.offending],
            "dependencies": [list(d) for d in self.dependencies],
            "classification": self.classification.to_json() if self.classification else None,
        }


def check_simple_set(s: SimpleRootSet) -> SubalgebraReport:
    amb = s.ambient
    roots = tuple(tuple(r) for r in s.roots)
    if len(set(roots)) != len(roots):
        raise DomainError("candidate roots are not distinct")
    for r in roots:
        if not amb.is_positive_real(r):
            raise NotPositiveReal(f"{r} is not a positive real root of {amb.name}")
    n = len(roots)
    entries = tuple(tuple(amb.cartan_entry(roots[i], roots[j]) for j in range(n)) for i in range(n))
    verdicts = []
    offending = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(None)
                continue
            v = amb.root_verdict(tuple(x - y for x, y in zip(roots[i], roots[j])))
            row.append(v)
            if v is Verdict.ROOT and i < j:
                offending.append((i, j))
        verdicts.append(tuple(row))
    flat = [v for row in verdicts for v in row if v is not None]
    if any(v is Verdict.ROOT for v in flat):
        validity = Validity.INVALID
    elif any(v is Verdict.UNKNOWN for v in flat):
        validity = Validity.CONDITIONAL
    else:
        validity = Validity.VALID
    classification = None
    cm = GeneralizedCartanMatrix(entries)
    if validity is not Validity.INVALID and cm.is_connected():
        classification = classify(cm)
    return SubalgebraReport(roots, entries, tuple(verdicts), tuple(linear_dependencies(s)),
                            classification, validity, tuple(offending))


def serre_bound_holds(s: SimpleRootSet, report: SubalgebraReport) -> bool:
    """``(1 - C_ji) b_i + b_j`` is not a root for every ordered pair ``i != j``."""
    amb = s.ambient
    c = report.cartan_entries
    for i, bi in enumerate(report.roots):
        for j, bj in enumerate(report.roots):
            if i != j:
                v = tuple((1 - c[j][i]) * x + y for x, y in zip(bi, bj))
                if amb.root_verdict(v) is not Verdict.NOT_ROOT:
                    return False
    return True


def linear_dependencies(s: SimpleRootSet) -> list[Vector]:
    """Basis of integer relations ``sum x_i b_i = 0`` among the roots."""
    rows = [[r[k] for r in s.roots] for k in range(s.ambient.rank)]
    return linalg.nullspace(rows, ncols=len(s.roots))


# ---------------------------------------------------------------------------
# Series

def _sign(sign) -> int:
    if sign in ("+", 1, "plus"):
        return 1
    if sign in ("-", -1, "minus"):
        return -1
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


def beta1(m: int, sign="-") -> Vector:
    """``m (a_0 + a_1) +/- a_1`` in F coordinates."""
    return (0, m, m + _sign(sign))


def series_h(m: int, sign="-") -> SimpleRootSet:
    """Two roots of F spanning the rank 2 algebra with Cartan matrix ``[[2, -m], [-m, 2]]``."""
    if m < 1:
        raise DomainError("m must be >= 1")
    s = "+" if _sign(sign) > 0 else "-"
    return SimpleRootSet(F, ((1, 0, 0), beta1(m, sign)), name=f"H({m}){s}")


def _unit(amb: KMAmbient, i: int) -> Vector:
    return amb.unit(i)


def series_rank_r1(amb: OverextendedAmbient, m: int) -> SimpleRootSet:
    """``{a_-1, m delta + a_1, a_2, ..., a_r}`` (rank ``r + 1``)."""
    if m < 0:
        raise DomainError("m must be >= 0")
    b1 = tuple(m * d + u for d, u in zip(amb.delta, _unit(amb, 2)))
    roots = (_unit(amb, 0), b1) + tuple(_unit(amb, j) for j in range(3, amb.rank))
    return SimpleRootSet(amb, roots, name=f"{amb.name}/r+1/m={m}")


def series_rank_r2(amb: OverextendedAmbient, m: int) -> SimpleRootSet:
    """``{a_-1, (m - 1) delta + a_0, a_1, ..., a_r}`` (rank ``r + 2``)."""
    if m < 1:
        raise DomainError("m must be >= 1")
    g0 = tuple((m - 1) * d + u for d, u in zip(amb.delta, _unit(amb, 1)))
    roots = (_unit(amb, 0), g0) + tuple(_unit(amb, j) for j in range(2, amb.rank))
    return SimpleRootSet(amb, roots, name=f"{amb.name}/r+2/m={m}")


def minimal_null_root(amb: OverextendedAmbient, s: SimpleRootSet) -> Vector:
    """``sum_j n_j g_j`` over the affine part (all roots but the first)."""
    out = [0] * amb.rank
    for n_j, g in zip(amb.data.affine.marks, s.roots[1:]):
        for k in range(amb.rank):
            out[k] += n_j * g[k]
    return tuple(out)


# Worked examples in F.  Each entry: list of (word, simple index) with
# letters 0, 1, 2 standing for r_-1, r_0, r_1.
_EXAMPLE_WORDS: dict[str, list[tuple[tuple[int, ...], int]]] = {
    "example-4.1": [((), 2), ((1,), 2), ((0, 1), 2)],
    "example-4.1b": [((), 2), ((), 1), ((0, 1, 2, 1), 2)],
    "example-4.2": [((2, 1), 2), ((1, 0, 2, 1), 2), ((0, 1, 2, 1), 2)],
    "example-4.3": [((), 2), ((1, 2, 0, 1), 2), ((1, 0, 1, 2, 1), 2)],
    "example-4.4": [((1,), 0), ((2,), 1), ((1, 2, 1), 2)],
    "example-4.5": [((1,), 0), ((0, 2, 1), 2), ((2, 1), 2), ((1, 2, 1), 2)],
}


def _word_root(word: Sequence[int], simple: int) -> Vector:
    return L.to_coords(L.apply_word(word, L.SIMPLE_ROOTS[simple]))


def example_fixtures() -> dict[str, SimpleRootSet]:
    out = {}
    for name, entries in _EXAMPLE_WORDS.items():
        roots = tuple(_word_root(w, i) for w, i in entries)
        out[name] = SimpleRootSet(F, roots, name=name, words=tuple(entries))
    return out


def gamma0(m: int) -> Vector:
    """``(m - 1) delta + a_0`` in F."""
    return (0, m, m - 1)


# ---------------------------------------------------------------------------
# Commutator words

@dataclass(frozen=True)
class CommutatorWord:
    """Right-nested bracket ``[e_{l1}, [e_{l2}, [..., e_{lk}]]]``."""

    letters: tuple[int, ...]
    target: Vector

    def root_sum(self) -> Vector:
        out = [0] * len(self.target)
        for i in self.letters:
            out[i] += 1
        return tuple(out)

    def render(self, labels: Sequence[str] = L.SIMPLE_LABELS) -> str:
        names = [f"e{labels[i]}" for i in self.letters]
        text = names[-1]
        for nm in reversed(names[:-1]):
            text = f"[{nm},{text}]"
        return text

    def __str__(self) -> str:
        return self.render()


def commutator_word(beta: Sequence[int], ambient: KMAmbient = F) -> CommutatorWord:
    """Build a root vector for ``beta`` by peeling off simple roots.

    At each step the simple root with the largest pairing against the
    remainder is removed, among those leaving a root (ties go to the lower
    index).
    """
    beta = tuple(beta)
    if not ambient.is_positive_real(beta):
        raise NotPositiveReal(f"{beta} is not a positive real root")
    letters = []
    cur = beta
    while sum(cur) > 1:
        best = None
        for i in range(ambient.rank):
            if cur[i] == 0:
                continue
            rest = cur[:i] + (cur[i] - 1,) + cur[i + 1:]
            if not ambient.is_root(rest):
                continue
            p = sum(cur[k] * ambient.gram[k][i] for k in range(ambient.rank))
            if best is None or p > best[0]:
                best = (p, i, rest)
        if best is None:
            raise NoDescent(f"no simple root can be removed from {cur}")
        letters.append(best[1])
        cur = best[2]
    letters.append(cur.index(1))
    return CommutatorWord(tuple(letters), beta)

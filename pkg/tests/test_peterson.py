import itertools
import json
from functools import lru_cache

import pytest

from hyperkm import lattice as L
from hyperkm.cartan import finite_type, gram_matrix, integer_gram
from hyperkm.errors import HeightOverflow
from hyperkm.peterson import PetersonEngine, multiplicity_table_from_json


def _gram(label):
    return integer_gram(gram_matrix(finite_type(label)))


def _mobius(n):
    res, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            res = -res
        k += 1
    return -res if n > 1 else res


def necklaces(k, n):
    """Oracle: dimension of degree n in the free Lie algebra on k generators."""
    return sum(_mobius(d) * k ** (n // d) for d in range(1, n + 1) if n % d == 0) // n


@lru_cache(maxsize=None)
def partitions_brute(n, largest=None):
    if largest is None:
        largest = n
    if n == 0:
        return 1
    return sum(partitions_brute(n - k, k) for k in range(1, min(n, largest) + 1))


def test_type_a_roots_are_intervals():
    n = 5
    eng = PetersonEngine(_gram(f"A{n}"), max_height=n)
    intervals = {tuple(int(i <= k < j) for k in range(n)) for i in range(n) for j in range(i + 1, n + 1)}
    for v, mult in eng.table().items():
        assert mult == (1 if v in intervals else 0), v


@pytest.mark.parametrize("label,count,height", [("D4", 12, 5), ("E6", 36, 11), ("G2", 6, 5)])
def test_finite_root_counts(label, count, height):
    eng = PetersonEngine(_gram(label), max_height=height)
    table = eng.table()
    assert set(table.values()) <= {0, 1}
    assert sum(table.values()) == count


@pytest.mark.parametrize("gram,delta,expected", [
    ([[2, -2], [-2, 2]], (1, 1), 1),
    ([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]], (1, 1, 1), 2),
])
def test_affine_imaginary_multiplicity(gram, delta, expected):
    eng = PetersonEngine(gram, max_height=12)
    for k in range(1, 12 // sum(delta) + 1):
        assert eng.mult(tuple(k * d for d in delta)) == expected


def test_affine_a1_real_roots():
    eng = PetersonEngine([[2, -2], [-2, 2]], max_height=14)
    for k in range(0, 6):
        assert eng.mult((k + 1, k)) == 1
        assert eng.mult((k, k + 1)) == 1
        assert eng.mult((k + 2, k)) == 0


@pytest.mark.parametrize("k", [1, 2, 3])
def test_imaginary_simple_root_gives_free_lie_algebra(k):
    eng = PetersonEngine([[-2]], simple_mults=[k], max_height=9)
    for n in range(1, 10):
        assert eng.mult((n,)) == necklaces(k, n)


def test_f_level_one_partitions(f_ambient):
    for a in range(-1, 12):
        co = L.to_coords(L.SymMat2(a, 0, 1))
        assert f_ambient.mult(co) == partitions_brute(a + 1)


def test_f_known_value(f_ambient):
    assert f_ambient.mult((2, 4, 4)) == 7


def test_weyl_invariance_without_reduction():
    raw = PetersonEngine(L.CARTAN_F, max_height=16)
    for co in [(1, 2, 2), (2, 3, 3), (1, 3, 2), (2, 4, 4)]:
        n = L.to_matrix(co)
        for i, a in enumerate(L.SIMPLE_ROOTS):
            img = L.to_coords(L.reflect(a, n))
            if min(img) >= 0 and sum(img) <= 16:
                assert raw.mult(img) == raw.mult(co)


def test_reduced_and_raw_engines_agree():
    raw = PetersonEngine(L.CARTAN_F, max_height=12)
    red = PetersonEngine(L.CARTAN_F, max_height=12, weyl_reduce=True)
    for v in itertools.product(range(5), repeat=3):
        if 0 < sum(v) <= 12:
            assert raw.mult(v) == red.mult(v), v


def test_sign_handling():
    eng = PetersonEngine(L.CARTAN_F, max_height=8)
    assert eng.mult((0, 0, 0)) == 0
    assert eng.mult((-1, -1, -1)) == eng.mult((1, 1, 1))
    assert eng.mult((1, -1, 0)) == 0


def test_height_overflow():
    eng = PetersonEngine(L.CARTAN_F, max_height=4)
    with pytest.raises(HeightOverflow):
        eng.mult((3, 3, 3))
    with pytest.raises(HeightOverflow):
        eng.table(5)


def test_rejects_asymmetric_gram():
    with pytest.raises(ValueError):
        PetersonEngine([[2, -1], [-2, 2]])


def test_json_round_trip():
    eng = PetersonEngine(L.CARTAN_F, max_height=6)
    table = eng.table()
    text = eng.to_json()
    json.loads(text)
    assert multiplicity_table_from_json(text) == table

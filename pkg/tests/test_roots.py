import itertools

import pytest

from hyperkm import lattice as L
from hyperkm.errors import NotLightcone, NotRealRoot, NotRoot, WrongLevel, ZeroVector
from hyperkm.roots import (F, KMAmbient, OverextendedAmbient, RootKind, Sign, Verdict,
                           ambient_by_name, enumerate_roots_F, level1_normal_form,
                           lightcone_normal_form, root_status_F, root_string)
from hyperkm.series import partition_p


def real_orbit(amb, depth):
    """Oracle: real roots as Weyl images of simple roots, by breadth-first search."""
    seen = {amb.unit(i) for i in range(amb.rank)}
    frontier = list(seen)
    for _ in range(depth):
        nxt = []
        for v in frontier:
            for i in range(amb.rank):
                k = amb.coroot_pair(v, i)
                w = v[:i] + (v[i] - k,) + v[i + 1:]
                if min(w) < 0:
                    w = tuple(-x for x in w)
                if min(w) >= 0 and w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def test_f_status_examples():
    assert root_status_F(L.ALPHA_1).kind is RootKind.REAL
    s = root_status_F(L.to_matrix((0, 1, 1)))
    assert s.is_root and s.kind is RootKind.NULL and s.sign is Sign.POSITIVE
    assert root_status_F(L.to_matrix((2, 4, 4))).kind is RootKind.TIMELIKE
    assert not root_status_F(L.to_matrix((1, 0, 1))).is_root
    with pytest.raises(ZeroVector):
        root_status_F(L.SymMat2(0, 0, 0))


def test_det_membership_matches_descent():
    generic = KMAmbient(L.CARTAN_F)
    for v in itertools.product(range(-4, 5), repeat=3):
        if any(v):
            assert generic.is_root(v) == F.is_root(v), v
            assert generic.is_real_root(v) == F.is_real_root(v), v


def test_real_roots_equal_orbit():
    orbit = real_orbit(F, 6)
    small = {v for v in orbit if sum(v) <= 12}
    found = {v for v in itertools.product(range(13), repeat=3) if 0 < sum(v) <= 12 and F.is_real_root(v)}
    assert found == small


def test_overextended_real_roots_equal_orbit():
    amb = OverextendedAmbient("A2")
    orbit = {v for v in real_orbit(amb, 8) if sum(v) <= 6}
    found = {v for v in itertools.product(range(7), repeat=4) if 0 < sum(v) <= 6 and amb.is_real_root(v)}
    assert found == orbit


def test_mixed_sign_is_not_root():
    assert F.root_verdict((1, -1, 0)) is Verdict.NOT_ROOT
    assert F.status((-1, -1, -1)).sign is Sign.NEGATIVE


def test_status_zero_vector():
    with pytest.raises(ZeroVector):
        F.status((0, 0, 0))


def test_enumerate_sorted_and_valid():
    out = enumerate_roots_F([0, 1], 4)
    assert all(st.is_root for _, st in out)
    assert all(n.det() >= -1 for n, _ in out)
    levels = [n.c for n, _ in out]
    assert levels == sorted(levels)
    assert set(levels) <= {0, 1}


def test_lightcone_normal_form():
    a, g = lightcone_normal_form(L.SymMat2(4, 6, 9))
    assert a == 1
    assert L.weyl_apply(g, L.SymMat2(4, 6, 9)) == L.SymMat2(1, 0, 0)
    n = L.to_matrix((0, 2, 2))
    a, g = lightcone_normal_form(n)
    assert L.weyl_apply(g, n) == L.SymMat2(a, 0, 0)
    assert L.apply_word(g.word, n) == L.SymMat2(a, 0, 0)
    with pytest.raises(NotLightcone):
        lightcone_normal_form(L.SymMat2(1, 0, 1))


def test_level1_normal_form():
    for a in range(-1, 6):
        for word in [(1,), (2, 1), (1, 2, 1)]:
            n = L.apply_word(word, L.SymMat2(a, 0, 1))
            if n.c != 1:
                continue
            got, g = level1_normal_form(n)
            assert got == a
            assert L.weyl_apply(g, n) == L.SymMat2(a, 0, 1)
    with pytest.raises(WrongLevel):
        level1_normal_form(L.SymMat2(1, 0, 2))
    with pytest.raises(NotRoot):
        level1_normal_form(L.SymMat2(-3, 0, 1))


def test_level1_law_against_partitions(f_ambient):
    for a in range(-1, 12):
        assert f_ambient.mult(L.to_coords(L.SymMat2(a, 0, 1))) == partition_p(a + 1)


def test_root_string_identity_on_simple_pairs():
    for amb in [F, OverextendedAmbient("A2"), OverextendedAmbient("D4")]:
        for i in range(amb.rank):
            for j in range(amb.rank):
                if i == j:
                    continue
                p, q = root_string(amb.unit(j), amb.unit(i), amb)
                assert p == 0
                assert p - q == amb.cartan.entries[j][i]


def test_root_string_errors():
    with pytest.raises(NotRealRoot):
        root_string((1, 0, 0), (0, 1, 1))
    with pytest.raises(NotRoot):
        root_string((1, 0, 1), (0, 0, 1))


def test_ambient_by_name():
    assert ambient_by_name("F") is F
    assert ambient_by_name("over:E8").rank == 10
    assert ambient_by_name("over:A1", 10).name == "F"
    with pytest.raises(ValueError):
        ambient_by_name("nope")


def test_overextended_delta_is_null():
    for label in ["A3", "D4", "E6", "B3", "G2"]:
        amb = OverextendedAmbient(label)
        assert amb.norm(amb.delta) == 0
        assert all(amb.pair(amb.delta, amb.unit(i)) == 0 for i in range(1, amb.rank))
        assert amb.status(amb.delta).kind is RootKind.NULL


def test_lightcone_examples():
    assert lightcone_normal_form(L.SymMat2(3, 0, 0))[0] == 3
    # r_0 fixes [1,0;0,0]; r_-1 moves it to [0,0;0,1]
    assert L.weyl_apply(L.R_0, L.SymMat2(1, 0, 0)) == L.SymMat2(1, 0, 0)
    a, g = lightcone_normal_form(L.SymMat2(0, 0, 1))
    assert a == 1 and L.weyl_apply(g, L.SymMat2(0, 0, 1)) == L.SymMat2(1, 0, 0)
    assert L.weyl_apply(L.R_M1, L.SymMat2(0, 0, 1)) == L.SymMat2(1, 0, 0)
    a, g = lightcone_normal_form(L.to_matrix((0, 1, 1)))
    assert a == -1 and g.is_identity()


def test_level1_shift_invariant():
    for a in range(0, 5):
        for b in range(-3, 4):
            if a - b * b >= -1:
                assert level1_normal_form(L.SymMat2(a, b, 1))[0] == a - b * b

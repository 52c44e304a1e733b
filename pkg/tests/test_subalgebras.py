import pytest

from hyperkm import lattice as L
from hyperkm.cartan import Kind
from hyperkm.errors import DomainError, NotPositiveReal
from hyperkm.roots import F, OverextendedAmbient, Verdict
from hyperkm.subalgebras import (SimpleRootSet, Validity, beta1, check_simple_set,
                                 commutator_word, example_fixtures, gamma0,
                                 linear_dependencies, minimal_null_root, serre_bound_holds,
                                 series_h, series_rank_r1, series_rank_r2)

EXPECTED_CARTANS = {
    "example-4.1": [[2, -2, -2], [-2, 2, -2], [-2, -2, 2]],
    "example-4.2": [[2, -10, -10], [-10, 2, -10], [-10, -10, 2]],
    "example-4.3": [[2, -6, -6], [-6, 2, -2], [-6, -2, 2]],
    "example-4.4": [[2, -3, -2], [-3, 2, -2], [-2, -2, 2]],
    "example-4.5": [[2, -2, -4, -2], [-2, 2, -2, -10], [-4, -2, 2, -2], [-2, -10, -2, 2]],
}


def model_cartan(roots):
    """Oracle: Cartan entries computed in the 2x2 matrix model."""
    ms = [L.to_matrix(r) for r in roots]
    return [[2 * L.bilinear(x, y) // L.norm(y) for y in ms] for x in ms]


def model_is_root(v):
    return any(v) and L.to_matrix(v).det() >= -1


@pytest.mark.parametrize("name", sorted(EXPECTED_CARTANS))
def test_fixture_cartans(name):
    s = example_fixtures()[name]
    rep = check_simple_set(s)
    assert rep.is_valid
    assert rep.cartan.rows() == EXPECTED_CARTANS[name]
    assert rep.cartan.rows() == model_cartan(s.roots)


def test_fixture_difference_verdicts_match_model():
    for s in example_fixtures().values():
        rep = check_simple_set(s)
        for i, ri in enumerate(s.roots):
            for j, rj in enumerate(s.roots):
                if i != j:
                    diff = tuple(a - b for a, b in zip(ri, rj))
                    assert (rep.difference_verdicts[i][j] is Verdict.ROOT) == model_is_root(diff)


def test_alternative_first_example_has_same_matrix():
    rep = check_simple_set(example_fixtures()["example-4.1b"])
    assert rep.cartan.rows() == EXPECTED_CARTANS["example-4.1"]


def test_example_45_dependency():
    deps = check_simple_set(example_fixtures()["example-4.5"]).dependencies
    assert len(deps) == 1
    d = deps[0]
    assert d in [(2, -1, 2, -1), (-2, 1, -2, 1)]


def test_difference_root_is_invalid():
    rep = check_simple_set(SimpleRootSet(F, ((0, 0, 1), (0, 1, 2))))
    assert rep.validity is Validity.INVALID
    assert rep.offending == ((0, 1),)
    assert rep.classification is None


def test_null_candidate_rejected():
    with pytest.raises(NotPositiveReal):
        check_simple_set(SimpleRootSet(F, ((0, 1, 0), (0, 1, 1))))


def test_duplicates_rejected():
    with pytest.raises(DomainError):
        check_simple_set(SimpleRootSet(F, ((0, 1, 0), (0, 1, 0))))


@pytest.mark.parametrize("m", range(1, 51))
@pytest.mark.parametrize("sign", "+-")
def test_series_h(m, sign):
    s = series_h(m, sign)
    rep = check_simple_set(s)
    assert rep.is_valid
    assert rep.cartan.rows() == [[2, -m], [-m, 2]]
    assert rep.cartan.rows() == model_cartan(s.roots)
    c = rep.classification
    assert c.kind is (Kind.FINITE if m == 1 else Kind.AFFINE if m == 2 else Kind.INDEFINITE)
    assert c.hyperbolic is (m >= 3)
    assert serre_bound_holds(s, rep)


def test_beta1_matrix_form():
    for m in range(1, 6):
        assert L.to_matrix(beta1(m, "+")) == L.SymMat2(-m, 1, 0)
        assert L.to_matrix(beta1(m, "-")) == L.SymMat2(-m, -1, 0)
    with pytest.raises(ValueError):
        beta1(2, "x")
    with pytest.raises(DomainError):
        series_h(0)


@pytest.mark.parametrize("label", ["A1", "A2", "A4", "D4", "E6", "E8"])
def test_rank_r1_series(label):
    amb = OverextendedAmbient(label)
    fin = amb.data.finite
    sub = fin.principal(range(1, fin.rank))
    for m in range(0, 11):
        rep = check_simple_set(series_rank_r1(amb, m))
        assert rep.is_valid
        c = rep.cartan
        assert c.rows()[0][:2] == [2, -m]
        assert [row[1:] for row in c.rows()[1:]] == fin.rows()
        assert c.det() == 2 * fin.det() - m * m * sub.det()


def test_rank_r1_a_closed_form():
    for r in range(1, 9):
        amb = OverextendedAmbient(f"A{r}")
        for m in range(0, 11):
            assert check_simple_set(series_rank_r1(amb, m)).cartan.det() == 2 * (r + 1) - m * m * r


def test_rank_r2_series_in_f():
    for m in range(1, 11):
        s = series_rank_r2(F, m)
        assert s.roots[1] == gamma0(m)
        rep = check_simple_set(s)
        assert rep.cartan.rows() == [[2, -m, 0], [-m, 2, -2], [0, -2, 2]]
        assert rep.cartan.det() == -m * m * 2


def test_rank_r2_minimal_null_root():
    amb = OverextendedAmbient("A2")
    s = series_rank_r2(amb, 3)
    d = minimal_null_root(amb, s)
    assert amb.norm(d) == 0
    assert amb.pair(d, s.roots[0]) == -3


def test_gamma0_words():
    words = {1: ((), 1), 2: ((1,), 2), 3: ((1, 2), 1), 4: ((1, 2, 1), 2)}
    for m, (w, i) in words.items():
        assert L.to_coords(L.apply_word(w, L.SIMPLE_ROOTS[i])) == gamma0(m)


def test_linear_dependencies_independent_set():
    assert linear_dependencies(series_h(3)) == []


def test_commutator_words():
    w = commutator_word((0, 2, 3))
    assert w.root_sum() == (0, 2, 3)
    assert w.render() == "[e1,[e0,[e1,[e0,e1]]]]"
    assert str(commutator_word((0, 0, 1))) == "e1"
    for s in example_fixtures().values():
        for r in s.roots:
            assert commutator_word(r).root_sum() == r


def test_commutator_word_plus_series_alternates():
    for m in range(1, 6):
        letters = commutator_word(beta1(m, "+")).letters
        assert all(letters[k] != letters[k + 1] for k in range(len(letters) - 1))


def test_commutator_word_rejects_imaginary():
    with pytest.raises(NotPositiveReal):
        commutator_word((0, 1, 1))


def test_report_json():
    data = check_simple_set(series_h(3)).to_json()
    assert data["validity"] == "Valid"
    assert data["classification"] == {"kind": "Indefinite", "hyperbolic": True}

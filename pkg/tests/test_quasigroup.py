"""Tests for n-ary quasigroups Q_{f,a}, retracts, inverses and decompositions."""

from itertools import permutations

import numpy as np
import pytest

from zq_switching.errors import DomainError
from zq_switching.partial_function import PartialExtension, swap_with_x0
from zq_switching.polynomial import FunctionTable, PolynomialZq, table_from_poly
from zq_switching.quasigroup import (
    QuasigroupTable,
    build_Qfa,
    check_retract_implication,
    invert,
    is_W_separable_qg,
    is_quasigroup,
    is_separable_qg,
    recompose,
    retract,
    retract_as_Qfa,
    retract_implication_census,
    verify_correspondence,
)
from zq_switching.sampling import Lcg64

X1X2 = table_from_poly(PolynomialZq(3, 2, (((1, 1), 1),)))
X1X2_OF_3 = table_from_poly(PolynomialZq(3, 3, (((1, 1, 0), 1),)))


def latin_squares(m: int):
    rows = list(permutations(range(m)))
    found = []

    def extend(chosen):
        if len(chosen) == m:
            found.append(np.array(chosen))
            return
        for r in rows:
            if all(r[j] != c[j] for c in chosen for j in range(m)):
                extend(chosen + [r])

    extend([])
    return found


def random_table(q: int, n: int, seed: int) -> FunctionTable:
    return FunctionTable(q, n, Lcg64(seed).residues(q, q ** n))


def test_entry_of_a_binary_Qfa():
    t = build_Qfa(X1X2, 1)
    assert t.m == 9
    # [1, 0] and [2, 2] give [1 - 3, 2 - 2] = [1, 0]
    assert t(3, 8) == 3


@pytest.mark.parametrize("q,n,a,seed", [(2, 2, 1, 1), (3, 2, 0, 2), (3, 3, 2, 3), (5, 2, 4, 4)])
def test_Qfa_is_a_quasigroup(q, n, a, seed):
    assert is_quasigroup(build_Qfa(random_table(q, n, seed), a))


def test_table_validation():
    with pytest.raises(DomainError):
        QuasigroupTable(3, 2, [0] * 8)
    with pytest.raises(DomainError):
        QuasigroupTable(3, 1, [0, 1, 3])
    with pytest.raises(DomainError):
        QuasigroupTable(0, 1, [])
    with pytest.raises(DomainError):
        build_Qfa(FunctionTable.constant(3, 0, 0), 0)


def test_non_latin_table():
    t = QuasigroupTable(2, 2, [0, 0, 1, 1])
    assert not is_quasigroup(t)
    with pytest.raises(DomainError):
        invert(t, 2)
    assert is_quasigroup(invert(QuasigroupTable(2, 2, [0, 1, 1, 0]), 1))


def test_retract_domain():
    t = build_Qfa(X1X2, 0)
    with pytest.raises(DomainError):
        retract(t, 3, 0)
    with pytest.raises(DomainError):
        retract(t, 1, 9)
    with pytest.raises(DomainError):
        retract(retract(t, 1, 0), 1, 0)


@pytest.mark.parametrize("a", [0, 2])
def test_retract_is_again_a_Qfa(a):
    f = random_table(3, 3, 11)
    t = build_Qfa(f, a)
    for i in range(1, 4):
        for b in range(3):
            for c in range(3):
                g, a2 = retract_as_Qfa(f, a, i, b, c)
                assert a2 == (a - b) % 3
                assert retract(t, i, b * 3 + c) == build_Qfa(g, a2)


@pytest.mark.parametrize("a", [0, 1])
def test_inverse_matches_the_hidden_swap(a):
    f = random_table(3, 3, 12)
    t = build_Qfa(f, a)
    for i in range(1, 4):
        inv = invert(t, i)
        assert inv == build_Qfa(swap_with_x0(PartialExtension(f, a), i).f, a)
        assert invert(inv, i) == t


def test_inverse_definition():
    t = build_Qfa(random_table(3, 2, 5), 2)
    inv = invert(t, 1)
    for x in range(9):
        for y in range(9):
            assert inv(t(x, y), y) == x


def test_zero_function_decomposes():
    t = build_Qfa(FunctionTable.constant(3, 3, 0), 1)
    d = is_W_separable_qg(t, [1, 2])
    assert d is not None
    assert d.inverted_at is None
    assert is_quasigroup(d.H) and is_quasigroup(d.G)
    assert recompose(d, 3) == t

    d0 = is_W_separable_qg(t, [0, 1])
    assert d0 is not None
    assert d0.inverted_at == 2
    assert d0.positions == (1, 2)
    assert recompose(d0, 3) == invert(t, 2)


def test_binary_quasigroups_are_never_separable():
    assert is_separable_qg(build_Qfa(FunctionTable.constant(3, 2, 0), 0)) is None


def test_cross_term_blocks_the_split():
    t = build_Qfa(X1X2_OF_3, 0)
    assert is_W_separable_qg(t, [1, 3]) is None
    assert is_W_separable_qg(t, [1, 2]) is not None
    assert is_separable_qg(t).W == (1, 2)


def test_label_set_validation():
    t = build_Qfa(X1X2_OF_3, 0)
    with pytest.raises(DomainError):
        is_W_separable_qg(t, [1, 2, 3])
    with pytest.raises(DomainError):
        is_W_separable_qg(t, [1, 4])
    with pytest.raises(DomainError):
        is_W_separable_qg(t, [2])
    full = is_W_separable_qg(t, [1, 2, 3], allow_full=True)
    assert full is not None and full.G.n == 1


def test_separability_rejects_a_non_quasigroup():
    t = QuasigroupTable(2, 3, [0] * 8)
    assert not is_quasigroup(t)
    with pytest.raises(DomainError):
        is_W_separable_qg(t, [2, 3])
    with pytest.raises(DomainError):
        is_separable_qg(t)


def test_decomposition_found_for_composed_latin_squares():
    squares = latin_squares(4)
    assert len(squares) == 576
    rng = Lcg64(3)
    for _ in range(40):
        G = squares[rng.below(len(squares))]
        H = squares[rng.below(len(squares))]
        values = G[:, H].reshape(-1)
        t = QuasigroupTable(4, 3, values)
        assert is_quasigroup(t)
        d = is_W_separable_qg(t, [2, 3])
        assert d is not None
        assert recompose(d, 3) == t


def test_decomposition_to_dict():
    d = is_W_separable_qg(build_Qfa(FunctionTable.constant(2, 3, 0), 0), [2, 3])
    out = d.to_dict()
    assert out["W"] == [2, 3]
    assert out["inverted_at"] is None
    assert len(out["H"]) == 16 and len(out["G"]) == 16


def test_correspondence_holds_on_random_quadratics():
    report = verify_correspondence(3, 3, count=100, seed=5)
    assert report.ok, report.violations[:3]
    assert report.functions == 100
    assert report.sets_compared == 100 * 3 * 6
    assert report.retracts_checked == 100 * 3 * 3 * 9
    assert report.inverses_checked == 100 * 3 * 3
    assert report.extension_a_agreements <= report.sets_compared


def test_correspondence_is_seeded():
    assert verify_correspondence(5, 2, count=4, seed=9).to_dict() == verify_correspondence(5, 2, count=4, seed=9).to_dict()


def test_retract_implication_premise_fails_for_ternary():
    report = check_retract_implication(X1X2_OF_3, 0)
    assert report["premise"] is False
    assert report["holds"] is True
    assert report["retracts"] == 4 * 3 * 9


def test_retract_implication_for_the_zero_function():
    report = check_retract_implication(FunctionTable.constant(3, 4, 0), 2)
    assert report["premise"] and report["separable"] and report["holds"]


def test_retract_implication_domain():
    with pytest.raises(DomainError):
        check_retract_implication(FunctionTable.constant(2, 3, 0), 0)
    cubic = table_from_poly(PolynomialZq(3, 3, (((1, 1, 1), 1),)))
    with pytest.raises(DomainError):
        check_retract_implication(cubic, 0)


def test_retract_implication_on_random_quadratics():
    report = retract_implication_census(3, 4, count=30, seed=2)
    assert report.functions == 30
    assert report.premise_hits > 0
    assert report.ok, report.violations[:3]
    assert report.to_dict()["premise_hits"] == report.premise_hits


def test_retract_implication_census_is_seeded():
    first = retract_implication_census(3, 3, count=4, seed=7).to_dict()
    assert first == retract_implication_census(3, 3, count=4, seed=7).to_dict()
    assert first["premise_hits"] == 0
    with pytest.raises(DomainError):
        retract_implication_census(3, 3, count=0)

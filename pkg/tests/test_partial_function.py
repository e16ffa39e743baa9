"""Tests for partial extensions: evaluation, the separability oracle, the
quadratic graph test and subfunctions."""

from itertools import product

import pytest

from zq_switching.errors import DomainError
from zq_switching.graph import switching_equivalent
from zq_switching.partial_function import (
    PartialExtension,
    all_label_sets,
    argument_vertex,
    candidate_sets,
    compare_deciders,
    cross_patterns,
    extension_eval,
    fix_argument,
    graph_of_quadratic,
    is_W_separable_quadratic,
    is_separable_extension,
    oracle_is_W_separable,
    random_quadratics,
    subfunction_report,
    swap_with_x0,
    vertex_argument,
)
from zq_switching.polynomial import (
    FunctionTable,
    PolynomialZq,
    poly_from_table,
    reduce_mod_constraint,
    table_from_poly,
    with_hidden,
)
from zq_switching.sampling import Lcg64


def random_extension(q: int, n: int, a: int, seed: int) -> PartialExtension:
    return PartialExtension(FunctionTable(q, n, Lcg64(seed).residues(q, q ** n)), a)


def omega(q: int, n: int, a: int):
    for xs in product(range(q), repeat=n):
        yield list(xs) + [(a - sum(xs)) % q]


def poly(q: int, nvars: int, *terms) -> PolynomialZq:
    return PolynomialZq(q, nvars, tuple(terms))


def test_constant_must_be_a_residue():
    with pytest.raises(DomainError):
        PartialExtension(FunctionTable.constant(3, 2, 0), 3)


def test_evaluation_on_and_off_the_constraint_set():
    e = PartialExtension(FunctionTable.from_function(3, 2, lambda x, y: x + 2 * y), 1)
    assert e([2, 1, 1]) == 1
    assert extension_eval(e, [0, 0, 1]) == 0
    with pytest.raises(DomainError):
        e([0, 0, 0])
    with pytest.raises(DomainError):
        e([0, 1])


def test_argument_vertices():
    assert [argument_vertex(i, 3) for i in range(4)] == [3, 0, 1, 2]
    assert [vertex_argument(v, 3) for v in range(4)] == [1, 2, 3, 0]
    with pytest.raises(DomainError):
        argument_vertex(4, 3)


def test_graph_of_quadratic():
    p = poly(3, 3, ((1, 1, 0), 1), ((1, 0, 1), 2), ((2, 0, 0), 1), ((0, 1, 0), 2))
    assert graph_of_quadratic(p).edges() == [(0, 1, 1), (0, 2, 2)]
    with pytest.raises(DomainError):
        graph_of_quadratic(poly(3, 3, ((1, 1, 1), 1)))


def test_label_set_validation():
    e = random_extension(3, 3, 0, 1)
    with pytest.raises(DomainError):
        oracle_is_W_separable(e, [0])
    with pytest.raises(DomainError):
        oracle_is_W_separable(e, [0, 1, 2, 3])
    with pytest.raises(DomainError):
        oracle_is_W_separable(e, [1, 4])


def test_graph_test_needs_an_odd_prime():
    with pytest.raises(DomainError):
        is_W_separable_quadratic(poly(2, 4, ((1, 1, 0, 0), 1)), 0, [1, 2])


def test_oracle_split_rebuilds_the_extension():
    # x1^2 x2^2 + x3 separates {1, 2} from {0, 3} whatever a is
    f = FunctionTable.from_function(3, 3, lambda x1, x2, x3: x1 * x1 * x2 * x2 + x3)
    for a in range(3):
        e = PartialExtension(f, a)
        split = oracle_is_W_separable(e, [1, 2])
        assert split is not None
        f1, f2 = split
        assert (f1.n, f2.n) == (2, 2)
        assert f2(0, 0) == 0
        for x1, x2, x3, x0 in omega(3, 3, a):
            assert e([x1, x2, x3, x0]) == (f1(x1, x2) + f2(x0, x3)) % 3


def test_oracle_rejects_a_cross_term():
    e = PartialExtension(table_from_poly(poly(3, 3, ((1, 1, 0), 1))), 0)
    assert oracle_is_W_separable(e, [0, 1]) is None
    assert oracle_is_W_separable(e, [0, 3]) is not None


def test_candidate_sets():
    assert candidate_sets(3) == [(0, 1), (0, 2), (0, 3)]
    assert candidate_sets(4)[4] == (0, 1, 2)
    assert len(candidate_sets(4)) == 4 + 6
    assert candidate_sets(2) == []
    assert len(all_label_sets(4)) == 20


def test_first_separable_set_of_a_product():
    e = PartialExtension(table_from_poly(poly(3, 3, ((1, 1, 0), 1))), 0)
    W, (f1, f2) = is_separable_extension(e)
    assert W == (0, 3)
    for x1, x2, x3, x0 in omega(3, 3, 0):
        assert (f1(x0, x3) + f2(x1, x2)) % 3 == e([x1, x2, x3, x0])
    assert is_separable_extension(e, use_graph=True, verify=True)[0] == (0, 3)


def test_binary_functions_have_no_nontrivial_split():
    assert is_separable_extension(random_extension(3, 2, 0, 4)) is None


def test_graph_screening_falls_back_for_high_degree():
    f = FunctionTable.from_function(3, 3, lambda x1, x2, x3: x1 * x1 * x2 * x2 + x3)
    e = PartialExtension(f, 1)
    assert is_separable_extension(e, use_graph=True) == is_separable_extension(e)


def test_path_extension_is_nonseparable():
    p = poly(3, 4, ((1, 1, 0, 0), 1), ((0, 1, 1, 0), 1), ((0, 0, 1, 1), 1))
    e = PartialExtension(table_from_poly(p), 0)
    assert is_separable_extension(e) is None
    assert is_separable_extension(e, use_graph=True, verify=True) is None


def test_subfunctions_of_a_nonseparable_quadratic():
    p = poly(3, 4, ((1, 1, 0, 0), 1), ((0, 1, 1, 0), 1), ((0, 0, 1, 1), 1))
    report = subfunction_report(PartialExtension(table_from_poly(p), 0))
    assert report["separable"] is False
    assert len(report["subfunctions"]) == 5 * 3
    assert any(not s["separable"] for s in report["subfunctions"])
    assert report["holds"]


def test_separable_extension_report_holds():
    e = PartialExtension(table_from_poly(poly(3, 3, ((1, 1, 0), 1))), 2)
    report = subfunction_report(e)
    assert report["separable"] and report["holds"]


@pytest.mark.parametrize("i", [1, 2, 3])
def test_fix_visible_argument_pointwise(i):
    q, n, a = 3, 3, 2
    e = random_extension(q, n, a, 17)
    for b in range(q):
        sub = fix_argument(e, i, b)
        assert (sub.n, sub.a) == (n - 1, (a - b) % q)
        for point in omega(q, n - 1, sub.a):
            full = point[:-1]
            full.insert(i - 1, b)
            assert sub(point) == e(full + [point[-1]])


def test_fix_hidden_argument_pointwise():
    q, n, a = 5, 3, 1
    e = random_extension(q, n, a, 23)
    for b in range(q):
        sub = fix_argument(e, 0, b)
        assert sub.a == (a - b) % q
        # the last visible argument takes over the hidden role
        for point in omega(q, n - 1, sub.a):
            assert sub(point) == e(point + [b])


def test_fix_argument_domain():
    e = random_extension(3, 2, 0, 1)
    with pytest.raises(DomainError):
        fix_argument(e, 3, 0)
    with pytest.raises(DomainError):
        fix_argument(e, 1, 3)


@pytest.mark.parametrize("i", [1, 2, 3])
def test_swap_with_x0_exchanges_roles(i):
    q, n, a = 3, 3, 1
    e = random_extension(q, n, a, 31)
    s = swap_with_x0(e, i)
    assert swap_with_x0(s, i) == e
    for point in omega(q, n, a):
        swapped = list(point)
        swapped[i - 1], swapped[-1] = point[-1], point[i - 1]
        assert s(swapped) == e(point)


def test_separable_split_survives_fixing_an_argument():
    # x1 x2 + x3 x4 splits {1, 2} from {3, 4, 0}; fixing x4 keeps {1, 2} apart
    p = poly(3, 4, ((1, 1, 0, 0), 1), ((0, 0, 1, 1), 1))
    e = PartialExtension(table_from_poly(p), 0)
    assert oracle_is_W_separable(e, [1, 2]) is not None
    for b in range(3):
        assert oracle_is_W_separable(fix_argument(e, 4, b), [1, 2]) is not None


@pytest.mark.parametrize("a", [0, 2])
def test_reduction_keeps_the_switching_class(a):
    for p in random_quadratics(5, 3, 20, seed=8):
        tau = reduce_mod_constraint(p, a)
        g = graph_of_quadratic(p)
        h = graph_of_quadratic(with_hidden(poly_from_table(table_from_poly(tau))))
        assert switching_equivalent(g, h) is not None


def test_graph_test_is_independent_of_a():
    for p in random_quadratics(3, 4, 10, seed=2):
        for W in all_label_sets(4):
            verdicts = {is_W_separable_quadratic(p, a, W) for a in range(3)}
            assert len(verdicts) == 1


def test_deciders_agree_on_every_cross_pattern():
    report = compare_deciders(3, 3, cross_patterns(3, 3), a=1)
    assert report.polynomials == 3 ** 6
    assert report.sets_compared == 3 ** 6 * 6
    assert report.ok, report.disagreements[:3]


@pytest.mark.parametrize("q,n,a,seed", [(3, 4, 0, 1), (5, 3, 2, 2), (5, 4, 4, 3), (7, 3, 1, 4)])
def test_deciders_agree_on_random_quadratics(q, n, a, seed):
    report = compare_deciders(q, n, random_quadratics(q, n, 25, seed), a)
    assert report.ok, report.disagreements[:3]
    assert report.to_dict()["polynomials"] == 25


@pytest.mark.slow
def test_deciders_agree_on_every_cross_pattern_mod_5():
    assert compare_deciders(5, 3, cross_patterns(5, 3)).ok


def test_random_quadratics_are_seeded():
    assert random_quadratics(3, 2, 5, seed=4) == random_quadratics(3, 2, 5, seed=4)
    assert all(p.nvars == 3 for p in random_quadratics(3, 2, 5, seed=4))

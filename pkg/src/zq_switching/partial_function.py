"""Partial extensions and their separability.

The a-extension of f: Z_q^n -> Z_q is the partial function on
Omega_a = {(x_1, ..., x_n, x_0) : x_1 + ... + x_n + x_0 = a} that ignores
x_0. Arguments carry labels 1..n for the visible variables and 0 for the
hidden one. A label set W (with complement U in {1..n, 0}) is separable when
the extension equals f'(x_W) + f''(x_U) on Omega_a.

Polynomials over the extended variables put x_0 last, so the graph of a
quadratic uses vertex i-1 for x_i and vertex n for x_0.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from zq_switching.errors import DomainError, ZqSwitchingError
from zq_switching.graph import WeightedGraph, make_graph
from zq_switching.polynomial import (
    FunctionTable,
    PolynomialZq,
    check_table_size,
    grid,
    index_rows,
    poly_from_table,
    random_quadratic,
    reduce_mod_constraint,
    table_from_poly,
    with_hidden,
)
from zq_switching.sampling import Lcg64
from zq_switching.separability import is_separable_set

Split = Tuple[FunctionTable, FunctionTable]


@dataclass(frozen=True)
class PartialExtension:
    f: FunctionTable
    a: int

    def __post_init__(self):
        if not 0 <= self.a < self.f.q:
            raise DomainError(f"constant a={self.a} outside [0, {self.f.q})")

    @property
    def q(self) -> int:
        return self.f.q

    @property
    def n(self) -> int:
        return self.f.n

    def __call__(self, point: Sequence[int]) -> int:
        return extension_eval(self, point)


def extension_eval(e: PartialExtension, point: Sequence[int]) -> int:
    """Value at (x_1, ..., x_n, x_0); the point must lie on Omega_a."""
    if len(point) != e.n + 1:
        raise DomainError(f"expected {e.n + 1} coordinates (x_1..x_n, x_0), got {len(point)}")
    if sum(point) % e.q != e.a:
        raise DomainError(f"point {list(point)} is off the constraint set sum = {e.a}")
    return e.f(*point[:-1])


def argument_vertex(label: int, n: int) -> int:
    """Graph vertex of argument label (x_0 is vertex n)."""
    if not 0 <= label <= n:
        raise DomainError(f"argument label {label} outside [0, {n}]")
    return n if label == 0 else label - 1


def vertex_argument(v: int, n: int) -> int:
    return 0 if v == n else v + 1


def graph_of_quadratic(p: PolynomialZq) -> WeightedGraph:
    """Weight of {u, v} is the coefficient of x_u x_v."""
    if p.degree > 2:
        raise DomainError(f"polynomial has degree {p.degree} > 2")
    edges = []
    for exps, coef in p.terms:
        support = [i for i, e in enumerate(exps) if e]
        if len(support) == 2:
            edges.append((support[0], support[1], coef))
    return make_graph(p.q, p.nvars, edges)


def _check_labels(W: Iterable[int], n: int, low: int = 2, high: Optional[int] = None) -> Tuple[int, ...]:
    high = n - 1 if high is None else high
    ws = tuple(sorted(set(int(i) for i in W)))
    for i in ws:
        if not 0 <= i <= n:
            raise DomainError(f"argument label {i} outside [0, {n}]")
    if not low <= len(ws) <= high:
        raise DomainError(f"|W| = {len(ws)} outside [{low}, {high}]")
    return ws


def is_W_separable_quadratic(p: PolynomialZq, a: int, W: Iterable[int]) -> bool:
    """Decide W-separability of a quadratic over (x_1..x_n, x_0) on Omega_a.

    Requires an odd prime q. The answer is separability of W in the graph of
    p and does not depend on a.
    """
    if p.q == 2:
        raise DomainError("the quadratic graph test needs an odd prime q")
    n = p.nvars - 1
    ws = _check_labels(W, n)
    g = graph_of_quadratic(p)
    return is_separable_set(g, [argument_vertex(i, n) for i in ws]) is not None


def _points_by_label(e: PartialExtension) -> np.ndarray:
    """Omega_a as a (q^n, n+1) array; column j holds the argument labelled j."""
    q, n = e.q, e.n
    pts = grid(q, n)
    hidden = (e.a - pts.sum(axis=1)) % q
    return np.column_stack([hidden, pts])


def _values_at(e: PartialExtension, by_label: np.ndarray) -> np.ndarray:
    return e.f.values[index_rows(by_label[:, 1:], e.q)]


def oracle_is_W_separable(e: PartialExtension, W: Iterable[int], cap: Optional[int] = None) -> Optional[Split]:
    """Decide W-separability of any extension and return (f', f'').

    With absorbers w* = min W and u* = min U, every point of Omega_a can be
    moved into a W-part P_W(x_W) (free W coordinates, u* absorbing the sum,
    the rest of U zero) and a U-part P_U(x_U). If a split exists it is
    f'(x_W) = F(P_W) - F(C(sum x_W)) and f''(x_U) = F(P_U) with the cross
    point C(s) = (w* = s, u* = a - s), so the candidate is built and checked
    on all of Omega_a. f'' is normalised to vanish at zero.

    Arguments of f' and f'' are the labels of W and U in increasing order.
    """
    q, n, a = e.q, e.n, e.a
    ws = _check_labels(W, n)
    us = tuple(i for i in range(n + 1) if i not in ws)
    check_table_size(q, n, cap)
    w_star, u_star = ws[0], us[0]

    grid_w = grid(q, len(ws))
    part_w = np.zeros((grid_w.shape[0], n + 1), dtype=np.int64)
    part_w[:, list(ws)] = grid_w
    part_w[:, u_star] = (a - grid_w.sum(axis=1)) % q

    cross = np.zeros((q, n + 1), dtype=np.int64)
    cross[:, w_star] = np.arange(q)
    cross[:, u_star] = (a - np.arange(q)) % q
    cross_values = _values_at(e, cross)

    f1 = (_values_at(e, part_w) - cross_values[grid_w.sum(axis=1) % q]) % q

    grid_u = grid(q, len(us))
    part_u = np.zeros((grid_u.shape[0], n + 1), dtype=np.int64)
    part_u[:, list(us)] = grid_u
    part_u[:, w_star] = (a - grid_u.sum(axis=1)) % q
    f2 = _values_at(e, part_u)

    shift = f2[0]
    f2 = (f2 - shift) % q
    f1 = (f1 + shift) % q

    omega = _points_by_label(e)
    rebuilt = (f1[index_rows(omega[:, list(ws)], q)] + f2[index_rows(omega[:, list(us)], q)]) % q
    if not np.array_equal(rebuilt, e.f.values):
        return None
    return FunctionTable(q, len(ws), f1), FunctionTable(q, len(us), f2)


def swap_with_x0(e: PartialExtension, i: int) -> PartialExtension:
    """Exchange the roles of x_i and x_0.

    g(x_1..t..x_n) = f(x_1..(a - t - sum of the other visible x_j)..x_n) with
    t at position i; the a-extension of g is the a-extension of f with x_i and
    x_0 interchanged. Applying it twice gives back f.
    """
    q, n = e.q, e.n
    if not 1 <= i <= n:
        raise DomainError(f"position {i} outside [1, {n}]")
    pts = grid(q, n)
    others = pts.sum(axis=1) - pts[:, i - 1]
    moved = pts.copy()
    moved[:, i - 1] = (e.a - pts[:, i - 1] - others) % q
    return PartialExtension(FunctionTable(q, n, e.f.values[index_rows(moved, q)]), e.a)


def fix_argument(e: PartialExtension, i: int, b: int) -> PartialExtension:
    """Subfunction with argument i fixed to b.

    For a visible i the result is f with x_i = b and constant a - b. For
    i = 0 the hidden role first moves to x_n, which then takes over as the
    hidden argument of the subfunction.
    """
    q, n = e.q, e.n
    if n < 1:
        raise DomainError("cannot fix an argument of a nullary function")
    if not 0 <= b < q:
        raise DomainError(f"value {b} outside [0, {q})")
    if i == 0:
        return fix_argument(swap_with_x0(e, n), n, b)
    if not 1 <= i <= n:
        raise DomainError(f"argument label {i} outside [0, {n}]")
    values = np.take(e.f.tensor, b, axis=i - 1).reshape(-1)
    return PartialExtension(FunctionTable(q, n - 1, values), (e.a - b) % q)


def candidate_sets(n: int) -> List[Tuple[int, ...]]:
    """Label sets W containing 0 with 2 <= |W| <= n-1, by size then lexicographically.

    Every nontrivial split has exactly one side containing 0.
    """
    return [(0,) + rest for k in range(2, n) for rest in combinations(range(1, n + 1), k - 1)]


def _quadratic_graph(e: PartialExtension) -> Optional[WeightedGraph]:
    if e.q == 2:
        return None
    p = poly_from_table(e.f)
    if p.degree > 2:
        return None
    return graph_of_quadratic(with_hidden(p))


def is_separable_extension(e: PartialExtension, use_graph: bool = False, verify: bool = False,
                           cap: Optional[int] = None) -> Optional[Tuple[Tuple[int, ...], Split]]:
    """First separable W (containing 0) with its split, or None.

    With use_graph and a quadratic f over an odd q, sets are screened with
    the graph test and only the accepted one goes through the oracle; verify
    runs the oracle on every screened set as well and raises when the two
    decisions differ.
    """
    n = e.n
    graph = _quadratic_graph(e) if use_graph else None
    for W in candidate_sets(n):
        if graph is None:
            split = oracle_is_W_separable(e, W, cap)
            if split is not None:
                return W, split
            continue
        by_graph = is_separable_set(graph, [argument_vertex(i, n) for i in W]) is not None
        split = oracle_is_W_separable(e, W, cap) if (by_graph or verify) else None
        if by_graph != (split is not None) and (by_graph or verify):
            raise ZqSwitchingError(f"graph and oracle disagree on W={list(W)}")
        if by_graph:
            return W, split
    return None


def subfunction_report(e: PartialExtension, cap: Optional[int] = None) -> Dict[str, Any]:
    """Separability of e and of every subfunction obtained by fixing one argument.

    A nonseparable extension of a quadratic over an odd q has at least one
    nonseparable subfunction; `holds` records whether that is the case here.
    """
    separable = is_separable_extension(e, cap=cap) is not None
    subs = []
    for i in list(range(1, e.n + 1)) + [0]:
        for b in range(e.q):
            sub = fix_argument(e, i, b)
            subs.append({"label": i, "value": b, "separable": is_separable_extension(sub, cap=cap) is not None})
    return {
        "q": e.q,
        "n": e.n,
        "a": e.a,
        "separable": separable,
        "subfunctions": subs,
        "holds": separable or not all(s["separable"] for s in subs),
    }


def all_label_sets(n: int) -> List[Tuple[int, ...]]:
    """Every W in {0..n} with 2 <= |W| <= n-1."""
    return [W for k in range(2, n) for W in combinations(range(n + 1), k)]


def cross_patterns(q: int, n: int) -> Iterable[PolynomialZq]:
    """Every purely bilinear polynomial over (x_1..x_n, x_0): one per weighted graph."""
    pairs = list(combinations(range(n + 1), 2))
    total = q ** len(pairs)
    for index in range(total):
        terms = []
        for u, v in pairs:
            index, coef = divmod(index, q)
            if coef:
                exps = [0] * (n + 1)
                exps[u] = exps[v] = 1
                terms.append((tuple(exps), coef))
        yield PolynomialZq(q, n + 1, tuple(terms))


@dataclass
class DeciderComparison:
    q: int
    n: int
    polynomials: int = 0
    sets_compared: int = 0
    disagreements: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def to_dict(self) -> Dict[str, Any]:
        return {
            "q": self.q,
            "n": self.n,
            "polynomials": self.polynomials,
            "sets_compared": self.sets_compared,
            "disagreements": self.disagreements,
            "ok": self.ok,
        }


def compare_deciders(q: int, n: int, polynomials: Iterable[PolynomialZq], a: int = 0) -> DeciderComparison:
    """Run the graph test and the oracle on every admissible W and collect mismatches.

    Each polynomial is over (x_1..x_n, x_0); the extension compared is the
    a-extension of its reduction.
    """
    report = DeciderComparison(q=q, n=n)
    sets = all_label_sets(n)
    for p in polynomials:
        report.polynomials += 1
        e = PartialExtension(table_from_poly(reduce_mod_constraint(p, a)), a)
        for W in sets:
            report.sets_compared += 1
            by_graph = is_W_separable_quadratic(p, a, W)
            by_oracle = oracle_is_W_separable(e, W) is not None
            if by_graph != by_oracle:
                report.disagreements.append(
                    {"W": list(W), "graph": by_graph, "oracle": by_oracle, "terms": [[list(x), c] for x, c in p.terms]}
                )
    logger.info(f"deciders q={q} n={n}: {report.sets_compared} sets, {len(report.disagreements)} disagreements")
    return report


def random_quadratics(q: int, n: int, count: int, seed: int) -> List[PolynomialZq]:
    """Seeded random quadratics over (x_1..x_n, x_0)."""
    rng = Lcg64(seed)
    return [random_quadratic(q, n + 1, rng) for _ in range(count)]

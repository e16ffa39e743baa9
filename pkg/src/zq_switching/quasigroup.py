"""n-ary quasigroups of order m = q^2 built from partial extensions.

An n-ary quasigroup is an n-dimensional Latin hypercube: fixing all
arguments but one leaves a permutation of [0, m). Elements of order q^2 are
pairs [x, y] encoded as x*q + y. For f: Z_q^n -> Z_q and a in Z_q,

    Q_{f,a}([x_1, y_1], ..., [x_n, y_n]) = [a - sum x_i, f(x) - sum y_i].

A label set W is separable in Q when Q(x) = G(x_U, H(x_W)) for quasigroups G
and H. Label 0 stands for the inverse argument (the output), handled by
inverting at one coordinate outside W first.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Tuple

import numpy as np
from loguru import logger

from zq_switching import config
from zq_switching.errors import BudgetExceeded, DomainError
from zq_switching.partial_function import PartialExtension, all_label_sets, oracle_is_W_separable, swap_with_x0
from zq_switching.polynomial import FunctionTable, poly_from_table, random_quadratic, table_from_poly
from zq_switching.sampling import Lcg64


@dataclass(frozen=True, eq=False)
class QuasigroupTable:
    """Dense value table of an n-ary operation on [0, m)."""
    m: int
    n: int
    values: np.ndarray

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise DomainError(f"need m >= 1 and n >= 1, got m={self.m} n={self.n}")
        vals = np.array(self.values, dtype=np.int64)
        if vals.size != self.m ** self.n:
            raise DomainError(f"table needs {self.m ** self.n} values, got {vals.size}")
        vals = vals.reshape((self.m,) * self.n)
        if vals.min() < 0 or vals.max() >= self.m:
            raise DomainError(f"table values outside [0, {self.m})")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuasigroupTable):
            return NotImplemented
        return self.m == other.m and self.n == other.n and np.array_equal(self.values, other.values)

    __hash__ = None

    def __call__(self, *xs: int) -> int:
        return int(self.values[tuple(xs)])


def _check_size(m: int, n: int, cap: Optional[int]) -> None:
    cap = config.DEFAULT_QG_CAP if cap is None else cap
    if m ** n > cap:
        raise BudgetExceeded(f"quasigroup table m={m} n={n}", m ** n, cap)


def build_Qfa(f: FunctionTable, a: int, cap: Optional[int] = None) -> QuasigroupTable:
    """Q_{f,a} as a table of order q^2."""
    q, n = f.q, f.n
    if n < 1:
        raise DomainError("Q_{f,a} needs n >= 1")
    m = q * q
    _check_size(m, n, cap)
    elems = np.indices((m,) * n, dtype=np.int64)
    xs, ys = elems // q, elems % q
    top = (a - xs.sum(axis=0)) % q
    fx = f.tensor[tuple(xs)]
    bottom = (fx - ys.sum(axis=0)) % q
    return QuasigroupTable(m, n, top * q + bottom)


def is_quasigroup(t: QuasigroupTable) -> bool:
    """Every axis line is a permutation of [0, m)."""
    target = np.arange(t.m)
    for axis in range(t.n):
        lines = np.sort(t.values, axis=axis)
        shape = [1] * t.n
        shape[axis] = t.m
        if not np.array_equal(lines, np.broadcast_to(target.reshape(shape), lines.shape)):
            return False
    return True


def _check_position(t: QuasigroupTable, i: int) -> None:
    if not 1 <= i <= t.n:
        raise DomainError(f"position {i} outside [1, {t.n}]")


def retract(t: QuasigroupTable, i: int, c: int) -> QuasigroupTable:
    """The (n-1)-ary operation with argument i fixed to c."""
    _check_position(t, i)
    if t.n < 2:
        raise DomainError("cannot retract a unary operation")
    if not 0 <= c < t.m:
        raise DomainError(f"constant {c} outside [0, {t.m})")
    return QuasigroupTable(t.m, t.n - 1, np.take(t.values, c, axis=i - 1))


def invert(t: QuasigroupTable, i: int) -> QuasigroupTable:
    """Swap argument i with the output: T'(.. z at i ..) = x_i where T(.. x_i ..) = z."""
    _check_position(t, i)
    axis = i - 1
    target = np.arange(t.m)
    shape = [1] * t.n
    shape[axis] = t.m
    if not np.array_equal(np.sort(t.values, axis=axis), np.broadcast_to(target.reshape(shape), t.values.shape)):
        raise DomainError(f"not a permutation along position {i}")
    out = np.empty_like(t.values)
    np.put_along_axis(out, t.values, np.broadcast_to(target.reshape(shape), t.values.shape), axis=axis)
    return QuasigroupTable(t.m, t.n, out)


def retract_as_Qfa(f: FunctionTable, a: int, i: int, b: int, c: int) -> Tuple[FunctionTable, int]:
    """(g, a') with retract(Q_{f,a}, i, [b, c]) == Q_{g,a'}.

    g is f with x_i = b, minus c, and a' = a - b.
    """
    q, n = f.q, f.n
    if not 1 <= i <= n or n < 2:
        raise DomainError(f"position {i} outside [1, {n}] or arity below 2")
    values = (np.take(f.tensor, b, axis=i - 1).reshape(-1) - c) % q
    return FunctionTable(q, n - 1, values), (a - b) % q


@dataclass(frozen=True)
class Decomposition:
    """Q(x) = G(x_U, H(x_W)); positions are the (1-based) axes fed to H.

    When W contains 0 the decomposition is of invert(Q, inverted_at).
    """
    W: Tuple[int, ...]
    positions: Tuple[int, ...]
    inverted_at: Optional[int]
    H: QuasigroupTable
    G: QuasigroupTable

    def to_dict(self) -> Dict[str, Any]:
        return {
            "W": list(self.W),
            "positions": list(self.positions),
            "inverted_at": self.inverted_at,
            "H": self.H.values.reshape(-1).tolist(),
            "G": self.G.values.reshape(-1).tolist(),
        }


def _split(t: QuasigroupTable, positions: Tuple[int, ...]) -> Optional[Tuple[QuasigroupTable, QuasigroupTable]]:
    # Columns of the (rest, W) matrix are the functions x_U -> Q(x_U, x_W);
    # W is separable iff they fall into exactly m classes.
    m, n, k = t.m, t.n, len(positions)
    axes = [p - 1 for p in positions]
    moved = np.moveaxis(t.values, axes, list(range(n - k, n)))
    matrix = moved.reshape(m ** (n - k), m ** k)
    _, first, inverse = np.unique(matrix.T, axis=0, return_index=True, return_inverse=True)
    if len(first) != m:
        return None
    order = np.argsort(first)
    relabel = np.empty(m, dtype=np.int64)
    relabel[order] = np.arange(m)
    h = relabel[inverse.reshape(-1)]
    g = matrix[:, first[order]]
    return QuasigroupTable(m, k, h), QuasigroupTable(m, n - k + 1, g)


def recompose(d: Decomposition, n: int) -> QuasigroupTable:
    """Rebuild the decomposed table from G and H."""
    m, k = d.H.m, len(d.positions)
    axes = [p - 1 for p in d.positions]
    g = d.G.values.reshape(m ** (n - k), m)
    moved = g[:, d.H.values.reshape(-1)].reshape((m,) * n)
    return QuasigroupTable(m, n, np.moveaxis(moved, list(range(n - k, n)), axes))


def _require_quasigroup(t: QuasigroupTable) -> None:
    if not is_quasigroup(t):
        raise DomainError(f"table of order {t.m} and arity {t.n} is not a quasigroup")


def _decompose(t: QuasigroupTable, ws: Tuple[int, ...]) -> Optional[Decomposition]:
    n = t.n
    inverted_at = None
    table = t
    positions = ws
    if 0 in ws:
        inverted_at = min(i for i in range(1, n + 1) if i not in ws)
        table = invert(t, inverted_at)
        positions = tuple(sorted(set(ws[1:]) | {inverted_at}))
    parts = _split(table, positions)
    if parts is None:
        return None
    return Decomposition(ws, positions, inverted_at, parts[0], parts[1])


def is_W_separable_qg(t: QuasigroupTable, W: Iterable[int], allow_full: bool = False) -> Optional[Decomposition]:
    """Decompose along W in {0..n}, 2 <= |W| <= n-1 (or n with allow_full).

    Raises:
        DomainError: bad labels, |W| out of range, or t not a quasigroup
    """
    n = t.n
    ws = tuple(sorted(set(int(i) for i in W)))
    for i in ws:
        if not 0 <= i <= n:
            raise DomainError(f"argument label {i} outside [0, {n}]")
    high = n if allow_full else n - 1
    if not 2 <= len(ws) <= high:
        raise DomainError(f"|W| = {len(ws)} outside [2, {high}]")
    _require_quasigroup(t)
    return _decompose(t, ws)


def is_separable_qg(t: QuasigroupTable) -> Optional[Decomposition]:
    """First separable W in {1..n}, by size then lexicographically.

    Sets containing 0 are covered through their complements.
    """
    _require_quasigroup(t)
    n = t.n
    for k in range(2, n):
        for W in combinations(range(1, n + 1), k):
            d = _decompose(t, W)
            if d is not None:
                return d
    return None


def check_retract_implication(f: FunctionTable, a: int) -> Dict[str, Any]:
    """If every retract of Q_{f,a} and of each inverse is separable, so is Q_{f,a}.

    Only claimed for a quadratic f over an odd prime; with n = 3 the retracts
    are binary and never separable, so the premise fails.
    """
    if f.q == 2:
        raise DomainError("needs an odd prime q")
    if poly_from_table(f).degree > 2:
        raise DomainError("f must be quadratic")
    t = build_Qfa(f, a)
    sources = [t] + [invert(t, j) for j in range(1, t.n + 1)]
    total = separable = 0
    for src in sources:
        for i in range(1, t.n + 1):
            for c in range(t.m):
                total += 1
                separable += is_separable_qg(retract(src, i, c)) is not None
    premise = separable == total
    conclusion = is_separable_qg(t) is not None
    return {
        "q": f.q,
        "n": f.n,
        "a": a,
        "retracts": total,
        "separable_retracts": separable,
        "premise": premise,
        "separable": conclusion,
        "holds": conclusion or not premise,
    }


@dataclass
class RetractImplicationReport:
    q: int
    n: int
    seed: int
    functions: int = 0
    premise_hits: int = 0
    violations: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, Any]:
        return {
            "q": self.q,
            "n": self.n,
            "seed": self.seed,
            "functions": self.functions,
            "premise_hits": self.premise_hits,
            "violations": self.violations,
            "ok": self.ok,
        }


def retract_implication_census(q: int, n: int, count: int, seed: Optional[int] = None) -> RetractImplicationReport:
    """Run check_retract_implication on seeded random quadratics, a drawn per function."""
    if count < 1:
        raise DomainError("count must be positive")
    seed = config.DEFAULT_SEED if seed is None else seed
    rng = Lcg64(seed)
    report = RetractImplicationReport(q=q, n=n, seed=seed)
    for _ in range(count):
        f = table_from_poly(random_quadratic(q, n, rng))
        a = rng.below(q)
        result = check_retract_implication(f, a)
        report.functions += 1
        report.premise_hits += result["premise"]
        if not result["holds"]:
            report.violations.append({"a": a, "f": f.values.tolist()})
    logger.info(
        f"retract implication q={q} n={n}: {report.functions} functions, "
        f"{report.premise_hits} premise hits, {len(report.violations)} violations"
    )
    return report


@dataclass
class CorrespondenceReport:
    q: int
    n: int
    seed: int
    functions: int = 0
    sets_compared: int = 0
    extension_a_agreements: int = 0
    retracts_checked: int = 0
    inverses_checked: int = 0
    violations: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, Any]:
        return {
            "q": self.q,
            "n": self.n,
            "seed": self.seed,
            "functions": self.functions,
            "sets_compared": self.sets_compared,
            "extension_a_agreements": self.extension_a_agreements,
            "retracts_checked": self.retracts_checked,
            "inverses_checked": self.inverses_checked,
            "violations": self.violations,
            "ok": self.ok,
        }


def verify_correspondence(q: int, n: int, count: int, seed: Optional[int] = None) -> CorrespondenceReport:
    """Check on seeded random quadratics that Q_{f,a} and the 0-extension of f
    are separable along the same W, that retracts are Q_{g,a'} tables and that
    inverses match the x_i / x_0 swap.
    """
    seed = config.DEFAULT_SEED if seed is None else seed
    rng = Lcg64(seed)
    report = CorrespondenceReport(q=q, n=n, seed=seed)
    sets = all_label_sets(n)
    for _ in range(count):
        p = random_quadratic(q, n, rng)
        f = table_from_poly(p)
        report.functions += 1
        by_function = {W: oracle_is_W_separable(PartialExtension(f, 0), W) is not None for W in sets}
        for a in range(q):
            t = build_Qfa(f, a)
            if not is_quasigroup(t):
                report.violations.append({"kind": "not_a_quasigroup", "a": a, "f": f.values.tolist()})
                continue
            for W in sets:
                report.sets_compared += 1
                qv = is_W_separable_qg(t, W) is not None
                if qv != by_function[W]:
                    report.violations.append(
                        {"kind": "separability_mismatch", "a": a, "W": list(W), "f": f.values.tolist()}
                    )
                report.extension_a_agreements += qv == (oracle_is_W_separable(PartialExtension(f, a), W) is not None)
            if n >= 2:
                for i in range(1, n + 1):
                    for b in range(q):
                        for c in range(q):
                            report.retracts_checked += 1
                            g, a2 = retract_as_Qfa(f, a, i, b, c)
                            if retract(t, i, b * q + c) != build_Qfa(g, a2):
                                report.violations.append({"kind": "retract_mismatch", "a": a, "i": i, "b": b, "c": c})
            for i in range(1, n + 1):
                report.inverses_checked += 1
                swapped = swap_with_x0(PartialExtension(f, a), i).f
                if invert(t, i) != build_Qfa(swapped, a):
                    report.violations.append({"kind": "inverse_mismatch", "a": a, "i": i})
    logger.info(f"correspondence q={q} n={n}: {report.functions} functions, {len(report.violations)} violations")
    return report

"""Polynomials and dense function tables over a prime field Z_q.

Every function Z_q^n -> Z_q is a unique polynomial with all exponents below
q (x^q = x on Z_q). Conversions go through the coefficient tensor: evaluation
multiplies each axis by the Vandermonde matrix V[x][e] = x^e, interpolation
by its inverse mod q.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from zq_switching import config
from zq_switching.errors import BudgetExceeded, DomainError
from zq_switching.sampling import Lcg64

Exponents = Tuple[int, ...]


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % d for d in range(2, int(q ** 0.5) + 1))


def require_prime(q: int) -> None:
    if not is_prime(q):
        raise DomainError(f"modulus must be prime, got {q}")


def _reduce_exponent(e: int, q: int) -> int:
    return e if e < q else (e - 1) % (q - 1) + 1


def check_table_size(q: int, n: int, cap: Optional[int] = None) -> None:
    cap = config.DEFAULT_TABLE_CAP if cap is None else cap
    if q ** n > cap:
        raise BudgetExceeded(f"dense table q={q} n={n}", q ** n, cap)


@dataclass(frozen=True)
class PolynomialZq:
    """Sparse polynomial; terms are (exponents, coefficient) sorted by exponents."""
    q: int
    nvars: int
    terms: Tuple[Tuple[Exponents, int], ...] = ()

    def __post_init__(self):
        require_prime(self.q)
        q = self.q
        raw = self.terms.items() if isinstance(self.terms, dict) else self.terms
        merged: Dict[Exponents, int] = {}
        for exps, coef in raw:
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.nvars:
                raise DomainError(f"exponent vector {exps} has length != {self.nvars}")
            if any(e < 0 for e in exps):
                raise DomainError(f"negative exponent in {exps}")
            key = tuple(_reduce_exponent(e, q) for e in exps)
            merged[key] = (merged.get(key, 0) + int(coef)) % q
        object.__setattr__(self, "terms", tuple(sorted((k, c) for k, c in merged.items() if c)))

    @classmethod
    def constant(cls, q: int, nvars: int, c: int) -> "PolynomialZq":
        return cls(q, nvars, (((0,) * nvars, c),))

    @classmethod
    def variable(cls, q: int, nvars: int, i: int) -> "PolynomialZq":
        """x_i for a 0-based variable position i."""
        exps = [0] * nvars
        exps[i] = 1
        return cls(q, nvars, ((tuple(exps), 1),))

    @property
    def coefficients(self) -> Dict[Exponents, int]:
        return dict(self.terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e, _ in self.terms), default=-1)

    def coefficient(self, exps: Sequence[int]) -> int:
        return self.coefficients.get(tuple(exps), 0)

    def _check(self, other: "PolynomialZq") -> None:
        if self.q != other.q or self.nvars != other.nvars:
            raise DomainError("polynomials differ in modulus or variable count")

    def __add__(self, other: "PolynomialZq") -> "PolynomialZq":
        self._check(other)
        return PolynomialZq(self.q, self.nvars, self.terms + other.terms)

    def __neg__(self) -> "PolynomialZq":
        return self.scale(-1)

    def __sub__(self, other: "PolynomialZq") -> "PolynomialZq":
        return self + (-other)

    def scale(self, c: int) -> "PolynomialZq":
        return PolynomialZq(self.q, self.nvars, tuple((e, coef * c) for e, coef in self.terms))

    def __mul__(self, other: "PolynomialZq") -> "PolynomialZq":
        self._check(other)
        products = []
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                products.append((tuple(a + b for a, b in zip(e1, e2)), c1 * c2))
        return PolynomialZq(self.q, self.nvars, tuple(products))


def eval_poly(p: PolynomialZq, point: Sequence[int]) -> int:
    if len(point) != p.nvars:
        raise DomainError(f"point has {len(point)} coordinates, polynomial has {p.nvars} variables")
    q = p.q
    total = 0
    for exps, coef in p.terms:
        term = coef
        for x, e in zip(point, exps):
            term = term * pow(int(x), e, q) % q
        total += term
    return total % q


def with_hidden(p: PolynomialZq) -> PolynomialZq:
    """Append an unused trailing variable (the hidden argument x_0)."""
    return PolynomialZq(p.q, p.nvars + 1, tuple((e + (0,), c) for e, c in p.terms))


def quadratic_monomials(nvars: int, q: int) -> List[Exponents]:
    """Exponent vectors of total degree <= 2 with every exponent below q."""
    result = [(0,) * nvars]
    for i in range(nvars):
        result.append(tuple(1 if k == i else 0 for k in range(nvars)))
    for i, j in combinations_with_replacement(range(nvars), 2):
        exps = [0] * nvars
        exps[i] += 1
        exps[j] += 1
        if max(exps) < q:
            result.append(tuple(exps))
    return result


def random_quadratic(q: int, nvars: int, rng: Lcg64) -> PolynomialZq:
    """Uniform coefficients on every monomial of degree <= 2."""
    return PolynomialZq(q, nvars, tuple((e, rng.below(q)) for e in quadratic_monomials(nvars, q)))


@dataclass(frozen=True, eq=False)
class FunctionTable:
    """Values of f: Z_q^n -> Z_q; index is the base-q number x_1 x_2 ... x_n."""
    q: int
    n: int
    values: np.ndarray

    def __post_init__(self):
        require_prime(self.q)
        vals = np.array(self.values, dtype=np.int64).reshape(-1)
        if vals.size != self.q ** self.n:
            raise DomainError(f"table needs {self.q ** self.n} values, got {vals.size}")
        if vals.size and (vals.min() < 0 or vals.max() >= self.q):
            raise DomainError(f"table values outside [0, {self.q})")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FunctionTable):
            return NotImplemented
        return self.q == other.q and self.n == other.n and np.array_equal(self.values, other.values)

    __hash__ = None

    @property
    def tensor(self) -> np.ndarray:
        return self.values.reshape((self.q,) * self.n)

    def __call__(self, *xs: int) -> int:
        if len(xs) != self.n:
            raise DomainError(f"expected {self.n} arguments, got {len(xs)}")
        return int(self.values[index_of(xs, self.q)])

    @classmethod
    def constant(cls, q: int, n: int, c: int) -> "FunctionTable":
        return cls(q, n, np.full(q ** n, c % q, dtype=np.int64))

    @classmethod
    def from_function(cls, q: int, n: int, fn: Callable[..., int]) -> "FunctionTable":
        check_table_size(q, n)
        pts = grid(q, n)
        return cls(q, n, np.array([fn(*map(int, row)) % q for row in pts], dtype=np.int64))


def index_of(xs: Sequence[int], q: int) -> int:
    idx = 0
    for x in xs:
        idx = idx * q + int(x)
    return idx


def index_rows(points: np.ndarray, q: int) -> np.ndarray:
    """Base-q index of every row of an (N, k) array, first column most significant."""
    k = points.shape[1]
    weights = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return points.astype(np.int64) @ weights


def grid(q: int, n: int) -> np.ndarray:
    """All points of Z_q^n as a (q^n, n) array in index order."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.indices((q,) * n, dtype=np.int64).reshape(n, -1).T


@lru_cache(maxsize=None)
def vandermonde(q: int) -> np.ndarray:
    v = np.array([[pow(x, e, q) for e in range(q)] for x in range(q)], dtype=np.int64)
    v.setflags(write=False)
    return v


@lru_cache(maxsize=None)
def vandermonde_inverse(q: int) -> np.ndarray:
    """Inverse of V mod q by Gauss-Jordan elimination."""
    a = [list(row) + [int(i == j) for j in range(q)] for i, row in enumerate(vandermonde(q).tolist())]
    for col in range(q):
        pivot = next(r for r in range(col, q) if a[r][col] % q)
        a[col], a[pivot] = a[pivot], a[col]
        inv = pow(a[col][col], -1, q)
        a[col] = [x * inv % q for x in a[col]]
        for r in range(q):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [(x - f * y) % q for x, y in zip(a[r], a[col])]
    result = np.array([row[q:] for row in a], dtype=np.int64)
    result.setflags(write=False)
    return result


def _along_axes(tensor: np.ndarray, matrix: np.ndarray, q: int) -> np.ndarray:
    for axis in range(tensor.ndim):
        tensor = np.moveaxis(np.tensordot(matrix, tensor, axes=([1], [axis])), 0, axis) % q
    return tensor


def coefficient_tensor(p: PolynomialZq) -> np.ndarray:
    c = np.zeros((p.q,) * p.nvars, dtype=np.int64)
    for exps, coef in p.terms:
        c[exps] = coef
    return c


def table_from_poly(p: PolynomialZq, cap: Optional[int] = None) -> FunctionTable:
    """Dense table of p over Z_q^nvars."""
    check_table_size(p.q, p.nvars, cap)
    values = _along_axes(coefficient_tensor(p), vandermonde(p.q), p.q)
    return FunctionTable(p.q, p.nvars, values.reshape(-1))


def poly_from_table(t: FunctionTable) -> PolynomialZq:
    """The unique polynomial with exponents below q that agrees with t."""
    coeffs = _along_axes(t.tensor.astype(np.int64), vandermonde_inverse(t.q), t.q)
    if t.n == 0:
        return PolynomialZq.constant(t.q, 0, int(coeffs))
    nz = np.argwhere(coeffs)
    return PolynomialZq(t.q, t.n, tuple((tuple(int(e) for e in idx), int(coeffs[tuple(idx)])) for idx in nz))


def evaluate_on_points(p: PolynomialZq, points: np.ndarray) -> np.ndarray:
    """Values of p on the rows of an (N, nvars) array."""
    q = p.q
    powers = vandermonde(q)
    out = np.zeros(points.shape[0], dtype=np.int64)
    for exps, coef in p.terms:
        term = np.full(points.shape[0], coef, dtype=np.int64)
        for i, e in enumerate(exps):
            if e:
                term = term * powers[points[:, i], e] % q
        out = (out + term) % q
    return out


def reduce_mod_constraint(p: PolynomialZq, a: int, cap: Optional[int] = None) -> PolynomialZq:
    """The unique tau in x_1..x_n equal to p on sum(x_1..x_n, x_0) = a.

    p is over (x_1, ..., x_n, x_0) with x_0 last. Substituting
    x_0 = a - sum(x_1..x_n) and reducing exponents gives tau; it is computed
    here by evaluating on the constraint set and interpolating, which yields
    the same polynomial since tau is unique.
    """
    q, n = p.q, p.nvars - 1
    if n < 0:
        raise DomainError("polynomial has no hidden variable")
    check_table_size(q, n, cap)
    pts = grid(q, n)
    hidden = (a - pts.sum(axis=1)) % q
    values = evaluate_on_points(p, np.column_stack([pts, hidden]))
    return poly_from_table(FunctionTable(q, n, values))

"""Z_q edge-weighted graphs and the switching algebra.

A graph is a symmetric n x n matrix of residues mod q with a zero diagonal;
weight 0 means "no edge". A graph is additive when its weights are the
pairwise sums (mod q) of some vertex labels, and a switching of G is G plus an
additive graph on the same vertex set. Switchings form an equivalence whose
classes are what separability and the census reason about.
"""

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from zq_switching.errors import GraphError

MAX_MODULUS = 255


@dataclass(frozen=True)
class VertexLabeling:
    """Labels in Z_q, one per vertex. Generates an additive graph."""
    q: int
    labels: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))
        if self.q < 2:
            raise GraphError(f"modulus must be >= 2, got {self.q}")
        for x in self.labels:
            if not 0 <= x < self.q:
                raise GraphError(f"label {x} outside [0, {self.q})")

    @classmethod
    def of(cls, q: int, values: Iterable[int]) -> "VertexLabeling":
        """Build a labeling, reducing every value mod q."""
        return cls(q, tuple(int(v) % q for v in values))

    @classmethod
    def zero(cls, q: int, n: int) -> "VertexLabeling":
        return cls(q, (0,) * n)

    def __len__(self) -> int:
        return len(self.labels)

    def __getitem__(self, i: int) -> int:
        return self.labels[i]

    def __add__(self, other: "VertexLabeling") -> "VertexLabeling":
        if self.q != other.q or len(self) != len(other):
            raise GraphError("labelings differ in modulus or length")
        return VertexLabeling(self.q, tuple((a + b) % self.q for a, b in zip(self.labels, other.labels)))

    def __neg__(self) -> "VertexLabeling":
        return VertexLabeling(self.q, tuple((-a) % self.q for a in self.labels))

    def restrict(self, vertices: Iterable[int]) -> "VertexLabeling":
        """Labels of the given vertices, in increasing vertex order."""
        return VertexLabeling(self.q, tuple(self.labels[v] for v in sorted(set(vertices))))


@dataclass(frozen=True)
class WeightedGraph:
    """Symmetric weight matrix over Z_q stored row-major as bytes."""
    q: int
    n: int
    weights: bytes

    def __post_init__(self):
        object.__setattr__(self, "weights", bytes(self.weights))
        q, n, w = self.q, self.n, self.weights
        if not 2 <= q <= MAX_MODULUS:
            raise GraphError(f"modulus must be in [2, {MAX_MODULUS}], got {q}")
        if n < 0:
            raise GraphError(f"vertex count must be >= 0, got {n}")
        if len(w) != n * n:
            raise GraphError(f"expected {n * n} weights, got {len(w)}")
        for u in range(n):
            if w[u * n + u] != 0:
                raise GraphError(f"nonzero diagonal at vertex {u}")
            for v in range(u + 1, n):
                x = w[u * n + v]
                if x != w[v * n + u]:
                    raise GraphError(f"asymmetric weight on pair ({u}, {v})")
                if x >= q:
                    raise GraphError(f"weight {x} on pair ({u}, {v}) outside [0, {q})")

    @classmethod
    def _trusted(cls, q: int, n: int, weights: bytes) -> "WeightedGraph":
        # Skips validation; callers guarantee the invariants.
        g = object.__new__(cls)
        object.__setattr__(g, "q", q)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "weights", bytes(weights))
        return g

    @classmethod
    def from_matrix(cls, q: int, matrix: Sequence[Sequence[int]]) -> "WeightedGraph":
        m = np.asarray(matrix, dtype=np.int64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise GraphError(f"weight matrix must be square, got shape {m.shape}")
        if m.size and (m.min() < 0 or m.max() > 255):
            raise GraphError("weights must fit in a byte")
        return cls(q, int(m.shape[0]), m.astype(np.uint8).tobytes())

    @classmethod
    def from_upper(cls, q: int, n: int, upper: Sequence[int]) -> "WeightedGraph":
        """Build from the row-major upper triangle (pairs u < v)."""
        buf = bytearray(n * n)
        for (u, v), x in zip(combinations(range(n), 2), upper):
            buf[u * n + v] = x
            buf[v * n + u] = x
        return cls(q, n, bytes(buf))

    def weight(self, u: int, v: int) -> int:
        return self.weights[u * self.n + v]

    def row(self, u: int) -> bytes:
        return self.weights[u * self.n:(u + 1) * self.n]

    def upper(self) -> Tuple[int, ...]:
        n, w = self.n, self.weights
        return tuple(w[u * n + v] for u, v in combinations(range(n), 2))

    def edges(self) -> List[Tuple[int, int, int]]:
        """Nonzero edges (u, v, weight) with u < v, lexicographic."""
        n, w = self.n, self.weights
        return [(u, v, w[u * n + v]) for u, v in combinations(range(n), 2) if w[u * n + v]]

    @property
    def matrix(self) -> np.ndarray:
        m = np.frombuffer(self.weights, dtype=np.uint8).reshape(self.n, self.n)
        return m.copy()

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} outside [0, {self.n})")


def make_graph(q: int, n: int, edges: Iterable[Tuple[int, int, int]]) -> WeightedGraph:
    """Build a graph from an edge list; unspecified pairs get weight 0.

    Args:
        q: Modulus, 2 <= q <= 255
        n: Vertex count
        edges: Triples (u, v, weight) with u != v, 0 <= weight < q

    Returns:
        The validated graph

    Raises:
        GraphError: on an out-of-range index or weight, a self-loop or a
            pair given twice
    """
    if not 2 <= q <= MAX_MODULUS:
        raise GraphError(f"modulus must be in [2, {MAX_MODULUS}], got {q}")
    buf = bytearray(n * n)
    seen = set()
    for u, v, x in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has a vertex outside [0, {n})")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if not 0 <= x < q:
            raise GraphError(f"weight {x} on ({u}, {v}) outside [0, {q})")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphError(f"duplicate edge {key}")
        seen.add(key)
        buf[u * n + v] = x
        buf[v * n + u] = x
    return WeightedGraph._trusted(q, n, bytes(buf))


def _check_compatible(g1: WeightedGraph, g2: WeightedGraph) -> None:
    if g1.q != g2.q or g1.n != g2.n:
        raise GraphError(f"graphs differ: (q={g1.q}, n={g1.n}) vs (q={g2.q}, n={g2.n})")


def _check_labeling(lab: VertexLabeling, q: int, n: int) -> None:
    if lab.q != q or len(lab) != n:
        raise GraphError(f"labeling (q={lab.q}, n={len(lab)}) does not fit graph (q={q}, n={n})")


def add(g1: WeightedGraph, g2: WeightedGraph) -> WeightedGraph:
    """Entrywise sum mod q."""
    _check_compatible(g1, g2)
    q = g1.q
    return WeightedGraph._trusted(q, g1.n, bytes((a + b) % q for a, b in zip(g1.weights, g2.weights)))


def negate(g: WeightedGraph) -> WeightedGraph:
    q = g.q
    return WeightedGraph._trusted(q, g.n, bytes((-a) % q for a in g.weights))


def subtract(g1: WeightedGraph, g2: WeightedGraph) -> WeightedGraph:
    """g1 - g2, entrywise mod q."""
    _check_compatible(g1, g2)
    q = g1.q
    return WeightedGraph._trusted(q, g1.n, bytes((a - b) % q for a, b in zip(g1.weights, g2.weights)))


def additive_from_labeling(lab: VertexLabeling, n: int) -> WeightedGraph:
    """The additive graph with w[u][v] = lab[u] + lab[v] off the diagonal."""
    if len(lab) != n:
        raise GraphError(f"labeling has {len(lab)} entries, graph has {n} vertices")
    q, x = lab.q, lab.labels
    buf = bytearray(n * n)
    for u, v in combinations(range(n), 2):
        s = (x[u] + x[v]) % q
        buf[u * n + v] = s
        buf[v * n + u] = s
    return WeightedGraph._trusted(q, n, bytes(buf))


def solve_double(c: int, q: int) -> Optional[int]:
    """Smallest t in [0, q) with 2t = c (mod q), or None."""
    d = gcd(2, q)
    if c % d:
        return None
    q2 = q // d
    if q2 == 1:
        return 0
    return (c // d) * pow(2 // d, -1, q2) % q2


def is_additive(g: WeightedGraph) -> Optional[VertexLabeling]:
    """Return a labeling generating g, or None when g is not additive.

    With vertex 0 as root and lab[0] = t, every other label is w[0][u] - t;
    the graph is additive iff c = w[0][u] + w[0][v] - w[u][v] is one constant
    over all pairs u, v != 0 and 2t = c is solvable mod q.
    """
    q, n, w = g.q, g.n, g.weights
    if n <= 1:
        return VertexLabeling.zero(q, n)
    if n == 2:
        return VertexLabeling(q, (w[1], 0))
    c = (w[1] + w[2] - w[n + 2]) % q
    for u, v in combinations(range(1, n), 2):
        if (w[u] + w[v] - w[u * n + v]) % q != c:
            return None
    t = solve_double(c, q)
    if t is None:
        return None
    return VertexLabeling(q, (t,) + tuple((w[u] - t) % q for u in range(1, n)))


def switch(g: WeightedGraph, lab: VertexLabeling) -> WeightedGraph:
    """g plus the additive graph of lab."""
    _check_labeling(lab, g.q, g.n)
    q, n, x = g.q, g.n, lab.labels
    buf = bytearray(g.weights)
    for u, v in combinations(range(n), 2):
        s = (buf[u * n + v] + x[u] + x[v]) % q
        buf[u * n + v] = s
        buf[v * n + u] = s
    return WeightedGraph._trusted(q, n, bytes(buf))


def isolate(g: WeightedGraph, o: int) -> Tuple[WeightedGraph, VertexLabeling]:
    """Switch g so that vertex o has no edges; returns (graph, labeling used)."""
    g._check_vertex(o)
    q = g.q
    lab = VertexLabeling(q, tuple((-x) % q for x in g.row(o)))
    return switch(g, lab), lab


def switching_equivalent(g: WeightedGraph, h: WeightedGraph) -> Optional[VertexLabeling]:
    """A labeling lab with switch(g, lab) == h, or None."""
    _check_compatible(g, h)
    return is_additive(subtract(h, g))


def _shifts(q: int) -> List[int]:
    # Weight shifts -2t (mod q) that keep vertex 0 isolated, 0 excluded.
    return sorted({(-2 * t) % q for t in range(q)} - {0})


def shift_minimal(q: int, tail: Sequence[int]) -> bool:
    """True when tail is lexicographically minimal among its -2t shifts."""
    tail = tuple(tail)
    for s in _shifts(q):
        if tuple((x + s) % q for x in tail) < tail:
            return False
    return True


def canonical_rep(g: WeightedGraph) -> WeightedGraph:
    """Deterministic representative of the switching class of g.

    Vertex 0 is isolated, then the remaining weights are shifted by the -2t
    (mod q) that makes the row-major upper triangle lexicographically least.
    """
    if g.n < 2:
        return g
    iso, _ = isolate(g, 0)
    q, n = g.q, g.n
    upper = iso.upper()
    head, tail = upper[:n - 1], upper[n - 1:]
    best = tail
    for s in _shifts(q):
        cand = tuple((x + s) % q for x in tail)
        if cand < best:
            best = cand
    return WeightedGraph.from_upper(q, n, head + best)


def induced_subgraph(g: WeightedGraph, vertices: Iterable[int]) -> WeightedGraph:
    """Subgraph on the given vertices, renumbered in increasing original order."""
    keep = sorted(set(vertices))
    for v in keep:
        g._check_vertex(v)
    n, w, k = g.n, g.weights, len(keep)
    buf = bytearray(k * k)
    for i, u in enumerate(keep):
        for j, v in enumerate(keep):
            buf[i * k + j] = w[u * n + v]
    return WeightedGraph._trusted(g.q, k, bytes(buf))


def permute(g: WeightedGraph, perm: Sequence[int]) -> WeightedGraph:
    """Relabel vertices: vertex u of g becomes perm[u]."""
    n = g.n
    if sorted(perm) != list(range(n)):
        raise GraphError(f"not a permutation of range({n}): {list(perm)}")
    w = g.weights
    buf = bytearray(n * n)
    for u in range(n):
        pu = perm[u]
        for v in range(n):
            buf[pu * n + perm[v]] = w[u * n + v]
    return WeightedGraph._trusted(g.q, n, bytes(buf))


def vertex_invariants(g: WeightedGraph) -> List[Tuple[int, ...]]:
    """Per-vertex switching invariant.

    For each v, isolate v and count the weights of the edges avoiding v; the
    count vector is normalised over the -2t shifts (the only freedom left once
    v is isolated).
    """
    q, n = g.q, g.n
    shifts = [0] + _shifts(q)
    result = []
    for v in range(n):
        iso, _ = isolate(g, v)
        counts = [0] * q
        for a, b in combinations([u for u in range(n) if u != v], 2):
            counts[iso.weight(a, b)] += 1
        result.append(min(tuple(counts[(x - s) % q] for x in range(q)) for s in shifts))
    return result


def switching_isomorphic(g: WeightedGraph, h: WeightedGraph) -> Optional[Tuple[Tuple[int, ...], VertexLabeling]]:
    """Find (perm, lab) with switch(permute(g, perm), lab) == h.

    Backtracking over vertex images restricted to matching vertex invariants.
    A partial assignment survives only while the weight differences on the
    assigned vertices still form an additive graph. Intended for n <= 11;
    larger inputs work but the search is factorial in the worst case.
    """
    _check_compatible(g, h)
    q, n = g.q, g.n
    inv_g, inv_h = vertex_invariants(g), vertex_invariants(h)
    if sorted(inv_g) != sorted(inv_h):
        return None
    candidates = {u: [v for v in range(n) if inv_h[v] == inv_g[u]] for u in range(n)}
    order = sorted(range(n), key=lambda u: (len(candidates[u]), u))
    gw, hw = g.weights, h.weights
    pairs: List[Tuple[int, int]] = []
    used = [False] * n

    def diff(i: Tuple[int, int], j: Tuple[int, int]) -> int:
        return hw[i[1] * n + j[1]] - gw[i[0] * n + j[0]]

    def extend(depth: int, c: Optional[int]):
        if depth == n:
            perm = [0] * n
            for u, v in pairs:
                perm[u] = v
            lab = switching_equivalent(permute(g, perm), h)
            return (tuple(perm), lab) if lab is not None else None
        u = order[depth]
        for v in candidates[u]:
            if used[v]:
                continue
            new = (u, v)
            new_c = c
            ok = True
            if depth >= 2:
                root = pairs[0]
                d_root = diff(root, new)
                for other in pairs[1:]:
                    val = (diff(root, other) + d_root - diff(other, new)) % q
                    if new_c is None:
                        if solve_double(val, q) is None:
                            ok = False
                            break
                        new_c = val
                    elif val != new_c:
                        ok = False
                        break
            if not ok:
                continue
            used[v] = True
            pairs.append(new)
            found = extend(depth + 1, new_c)
            pairs.pop()
            used[v] = False
            if found is not None:
                return found
        return None

    return extend(0, None)


def swap_weights(g: WeightedGraph, i: int, j: int) -> WeightedGraph:
    """Exchange edge weights i and j everywhere off the diagonal."""
    q, n = g.q, g.n
    if not (0 <= i < q and 0 <= j < q):
        raise GraphError(f"weights ({i}, {j}) outside [0, {q})")
    table = list(range(q))
    table[i], table[j] = j, i
    buf = bytearray(g.weights)
    for u, v in combinations(range(n), 2):
        s = table[buf[u * n + v]]
        buf[u * n + v] = s
        buf[v * n + u] = s
    return WeightedGraph._trusted(q, n, bytes(buf))

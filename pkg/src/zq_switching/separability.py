"""Separable vertex sets, separable graphs and critical graphs.

A vertex set W is separable when some switching of G has no edge between W
and its complement. Sets of size 0, 1, n-1 or n always are; any other
separable set is nontrivial, and a graph with a nontrivial separable set is
separable. A critical graph is nonseparable while every vertex-deleted
subgraph is separable.
"""

from dataclasses import dataclass
from itertools import combinations, product
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from zq_switching.errors import GraphError
from zq_switching.graph import VertexLabeling, WeightedGraph, induced_subgraph, isolate, switch


@dataclass(frozen=True)
class SeparationCertificate:
    """W together with a labeling whose switching cuts W off from the rest."""
    W: Tuple[int, ...]
    labeling: VertexLabeling

    def classes(self) -> Tuple[Dict[int, List[int]], Dict[int, List[int]]]:
        """Partition (W_i, V_j) in which every W_i-V_j edge has weight i + j.

        A vertex labelled x belongs to class (-x) mod q.
        """
        q = self.labeling.q
        inside = set(self.W)
        w_classes: Dict[int, List[int]] = {}
        v_classes: Dict[int, List[int]] = {}
        for v, x in enumerate(self.labeling.labels):
            target = w_classes if v in inside else v_classes
            target.setdefault((-x) % q, []).append(v)
        return w_classes, v_classes


def _vertex_set(g: WeightedGraph, W: Iterable[int]) -> FrozenSet[int]:
    ws = frozenset(int(v) for v in W)
    for v in ws:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} outside [0, {g.n})")
    return ws


def brute_force_separable_set(g: WeightedGraph, W: Iterable[int]) -> Optional[SeparationCertificate]:
    """Search all q^n labelings for one that separates W. Test oracle only."""
    ws = _vertex_set(g, W)
    q, n, w = g.q, g.n, g.weights
    cross = [(a, b) for a in sorted(ws) for b in range(n) if b not in ws]
    for labels in product(range(q), repeat=n):
        if all((w[a * n + b] + labels[a] + labels[b]) % q == 0 for a, b in cross):
            return SeparationCertificate(tuple(sorted(ws)), VertexLabeling(q, labels))
    return None


def is_separable_set(g: WeightedGraph, W: Iterable[int], brute_force: bool = False) -> Optional[SeparationCertificate]:
    """Decide whether W is separable in g and return a certificate.

    The cross constraints lab[w] + lab[v] = -w[w][v] (w in W, v outside W)
    are solved by propagation: lab[w0] = 0, then every outside label from
    w0, then every inside label from one outside vertex v0, then all cross
    constraints are checked. Edges inside W or inside the complement are
    unconstrained.

    Args:
        g: The graph
        W: Vertex set
        brute_force: Use the q^n labeling search instead (test oracle)

    Returns:
        A certificate, or None when W is not separable
    """
    if brute_force:
        return brute_force_separable_set(g, W)
    ws = _vertex_set(g, W)
    q, n, w = g.q, g.n, g.weights
    inside = sorted(ws)
    outside = [v for v in range(n) if v not in ws]
    labels = [0] * n
    if inside and outside:
        w0, v0 = inside[0], outside[0]
        for v in outside:
            labels[v] = (-w[w0 * n + v]) % q
        for u in inside:
            labels[u] = (-w[u * n + v0] - labels[v0]) % q
        for u in inside:
            row = u * n
            lu = labels[u]
            for v in outside:
                if (w[row + v] + lu + labels[v]) % q:
                    return None
    return SeparationCertificate(tuple(inside), VertexLabeling(q, tuple(labels)))


def verify_certificate(g: WeightedGraph, cert: SeparationCertificate) -> bool:
    """True iff switch(g, cert.labeling) has no edge across W."""
    if len(cert.labeling) != g.n or cert.labeling.q != g.q:
        return False
    ws = set(cert.W)
    if any(not 0 <= v < g.n for v in ws):
        return False
    h = switch(g, cert.labeling)
    return all(h.weight(a, b) == 0 for a in ws for b in range(g.n) if b not in ws)


def nontrivial_separable_sets(g: WeightedGraph) -> List[Tuple[Tuple[int, ...], SeparationCertificate]]:
    """All nontrivial separable W containing vertex 0, by size then lexicographically.

    Complements are separable too and are not listed. Enumerates subsets;
    intended for n <= 16.
    """
    n = g.n
    found = []
    for k in range(2, n - 1):
        for rest in combinations(range(1, n), k - 1):
            W = (0,) + rest
            cert = is_separable_set(g, W)
            if cert is not None:
                found.append((W, cert))
    return found


def _first_separable_set(g: WeightedGraph) -> Optional[Tuple[int, ...]]:
    # With vertex 0 isolated, W containing 0 is separable iff every other
    # vertex of W sees the complement through a single weight.
    n = g.n
    iso, _ = isolate(g, 0)
    rows = [iso.row(v) for v in range(n)]
    others = range(1, n)
    for k in range(1, n - 2):
        for A in combinations(others, k):
            chosen = set(A)
            B = [v for v in others if v not in chosen]
            if all(len({rows[a][b] for b in B}) == 1 for a in A):
                return (0,) + A
    return None


def is_separable(g: WeightedGraph) -> Optional[SeparationCertificate]:
    """A certificate for a minimum-size nontrivial separable set, or None.

    Graphs with n <= 3 have no nontrivial set sizes and are nonseparable.
    """
    if g.n <= 3:
        return None
    W = _first_separable_set(g)
    if W is None:
        return None
    return is_separable_set(g, W)


def delete_vertex(g: WeightedGraph, v: int) -> WeightedGraph:
    return induced_subgraph(g, [u for u in range(g.n) if u != v])


def is_critical(g: WeightedGraph) -> bool:
    """Nonseparable, while every vertex-deleted subgraph is separable."""
    if is_separable(g) is not None:
        return False
    return all(is_separable(delete_vertex(g, v)) is not None for v in range(g.n))


def nonseparable_subgraph_count(g: WeightedGraph) -> int:
    """Number of vertices whose deletion leaves a nonseparable graph."""
    return sum(1 for v in range(g.n) if is_separable(delete_vertex(g, v)) is None)


def constant_weight_sets(g: WeightedGraph, W: Iterable[int]) -> bool:
    """Sufficient condition for separability of W.

    True when every vertex outside W is joined to all of W by one weight.
    """
    ws = _vertex_set(g, W)
    if not ws:
        return True
    return all(len({g.weight(v, u) for u in ws}) == 1 for v in range(g.n) if v not in ws)


def unique_separable_pair(g: WeightedGraph, d: int) -> Optional[Tuple[int, int]]:
    """The pair structure forced when deleting d leaves a nonseparable graph.

    For a separable g of order >= 5 with g - d nonseparable, returns the pair
    (d, e) when it is the only nontrivial separable set up to complement;
    None when that structure does not hold.
    """
    n = g.n
    sets = []
    for k in range(2, n - 1):
        for W in combinations(range(n), k):
            if 0 in W and is_separable_set(g, W) is not None:
                sets.append(frozenset(W))
    everything = frozenset(range(n))
    pairs = []
    for W in sets:
        for side in (W, everything - W):
            if len(side) == 2 and d in side:
                pairs.append(tuple(sorted(side)))
    if len(sets) == 1 and len(pairs) == 1:
        a, b = pairs[0]
        return (d, b if a == d else a)
    return None

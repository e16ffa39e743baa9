"""The exceptional family G_{n,gamma} of critical graphs.

For even q and odd n = 2k + 1 >= 5 the vertices are a_0, a_1..a_k, b_1..b_k,
stored at indices 0, 1..k, k+1..2k. a_0 is isolated, a-a and b-b edges weigh
gamma, and a_l-b_m weighs gamma when l < m and gamma + q/2 otherwise.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Tuple

from loguru import logger

from zq_switching.errors import DomainError
from zq_switching.graph import WeightedGraph, make_graph, switching_isomorphic
from zq_switching.separability import delete_vertex, is_separable, is_separable_set


@dataclass(frozen=True)
class FamilyParams:
    n: int
    q: int
    gamma: int

    def __post_init__(self):
        if self.n < 5 or self.n % 2 == 0:
            raise DomainError(f"n must be odd and >= 5, got {self.n}")
        if self.q < 2 or self.q % 2:
            raise DomainError(f"q must be even, got {self.q}")
        if not 0 <= self.gamma < self.q:
            raise DomainError(f"gamma {self.gamma} outside [0, {self.q})")

    @property
    def k(self) -> int:
        return (self.n - 1) // 2

    def a(self, l: int) -> int:
        return l

    def b(self, m: int) -> int:
        return self.k + m

    def name(self, v: int) -> str:
        return f"a{v}" if v <= self.k else f"b{v - self.k}"


def make_family(p: FamilyParams) -> WeightedGraph:
    """Build G_{n,gamma}."""
    q, k, gamma = p.q, p.k, p.gamma
    flipped = (gamma + q // 2) % q
    edges = []
    for l, m in combinations(range(1, k + 1), 2):
        edges.append((p.a(l), p.a(m), gamma))
        edges.append((p.b(l), p.b(m), gamma))
    for l in range(1, k + 1):
        for m in range(1, k + 1):
            edges.append((p.a(l), p.b(m), gamma if l < m else flipped))
    return make_graph(q, p.n, edges)


@dataclass
class WitnessCheck:
    deleted: str
    pair: Tuple[str, str]
    holds: bool


@dataclass
class FamilyReport:
    params: FamilyParams
    separable: bool
    subgraph_separable: Dict[str, bool] = field(default_factory=dict)
    witnesses: List[WitnessCheck] = field(default_factory=list)

    @property
    def critical(self) -> bool:
        return not self.separable and all(self.subgraph_separable.values())

    @property
    def ok(self) -> bool:
        return self.critical and all(w.holds for w in self.witnesses)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.params.n,
            "q": self.params.q,
            "gamma": self.params.gamma,
            "separable": self.separable,
            "critical": self.critical,
            "subgraph_separable": self.subgraph_separable,
            "witnesses": [
                {"deleted": w.deleted, "pair": list(w.pair), "holds": w.holds}
                for w in self.witnesses
            ],
            "ok": self.ok,
        }


def named_witnesses(p: FamilyParams) -> List[Tuple[int, Tuple[int, int]]]:
    """(deleted vertex, separable pair) for every vertex of G_{n,gamma}.

    {a_k, b_1} in G - a_0; {b_i, b_i+1} in G - a_i for i < k;
    {b_k, a_0} in G - a_k; {a_i-1, a_i} in G - b_i.
    """
    k = p.k
    result = [(p.a(0), (p.a(k), p.b(1)))]
    for i in range(1, k):
        result.append((p.a(i), (p.b(i), p.b(i + 1))))
    result.append((p.a(k), (p.b(k), p.a(0))))
    for i in range(1, k + 1):
        result.append((p.b(i), (p.a(i - 1), p.a(i))))
    return result


def verify_family_critical(p: FamilyParams) -> FamilyReport:
    """Check that G_{n,gamma} is critical and that each named pair separates."""
    g = make_family(p)
    report = FamilyReport(params=p, separable=is_separable(g) is not None)
    for v in range(p.n):
        report.subgraph_separable[p.name(v)] = is_separable(delete_vertex(g, v)) is not None
    for deleted, pair in named_witnesses(p):
        sub = delete_vertex(g, deleted)
        # indices shift down by one past the deleted vertex
        local = [u - (u > deleted) for u in pair]
        holds = is_separable_set(sub, local) is not None
        report.witnesses.append(
            WitnessCheck(deleted=p.name(deleted), pair=(p.name(pair[0]), p.name(pair[1])), holds=holds)
        )
    logger.debug(f"G_{{{p.n},{p.gamma}}} mod {p.q}: critical={report.critical}")
    return report


def family_isomorphism_classes(n: int, q: int) -> List[List[int]]:
    """Group gamma values whose G_{n,gamma} are switching-isomorphic."""
    graphs = {gamma: make_family(FamilyParams(n, q, gamma)) for gamma in range(q)}
    classes: List[List[int]] = []
    for gamma in range(q):
        for cls in classes:
            if switching_isomorphic(graphs[cls[0]], graphs[gamma]) is not None:
                cls.append(gamma)
                break
        else:
            classes.append([gamma])
    return classes

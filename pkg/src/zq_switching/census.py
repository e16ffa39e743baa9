"""Exhaustive and sampled censuses over switching classes.

Every switching class has exactly one representative with vertex 0 isolated
whose remaining upper triangle is least among its -2t (mod q) shifts, so the
census walks the q^C(n-1,2) edge assignments on vertices 1..n-1 and keeps the
shift-minimal ones. The index space is cut into contiguous ranges that
workers scan independently; partial reports are merged in range order, so the
job count never changes the content of a report.
"""

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, islice, product
from math import comb
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from loguru import logger

from zq_switching import config
from zq_switching.codec import graph_to_dict
from zq_switching.errors import BudgetExceeded, CheckError, DomainError
from zq_switching.family import FamilyParams, make_family
from zq_switching.graph import (
    MAX_MODULUS,
    VertexLabeling,
    WeightedGraph,
    induced_subgraph,
    permute,
    shift_minimal,
    swap_weights,
    switch,
    switching_isomorphic,
)
from zq_switching.regression import CRITICAL_COUNTS, expected_class_count
from zq_switching.sampling import Lcg64
from zq_switching.separability import delete_vertex, is_critical, is_separable, nonseparable_subgraph_count, unique_separable_pair


def assignment_count(q: int, n: int) -> int:
    """Edge assignments on vertices 1..n-1, the census scan length."""
    return q ** comb(n - 1, 2)


def _rep_graph(q: int, n: int, tail: Sequence[int]) -> WeightedGraph:
    buf = bytearray(n * n)
    pairs = combinations(range(1, n), 2)
    for (u, v), x in zip(pairs, tail):
        buf[u * n + v] = x
        buf[v * n + u] = x
    return WeightedGraph._trusted(q, n, bytes(buf))


def _check_budget(q: int, n: int, budget: Optional[int]) -> int:
    if not 2 <= q <= MAX_MODULUS or n < 2:
        raise DomainError(f"census needs 2 <= q <= {MAX_MODULUS} and n >= 2, got q={q} n={n}")
    budget = config.DEFAULT_BUDGET if budget is None else budget
    total = assignment_count(q, n)
    if total > budget:
        raise BudgetExceeded(f"census q={q} n={n}", total, budget)
    return total


def enumerate_reps(q: int, n: int, budget: Optional[int] = None,
                   start: int = 0, stop: Optional[int] = None) -> Iterator[WeightedGraph]:
    """Stream one representative per switching class, in lexicographic order.

    Args:
        q: Modulus
        n: Vertex count, n >= 2
        budget: Maximum scan length (default from config)
        start, stop: Index range of the underlying assignment scan

    Raises:
        BudgetExceeded: when q^C(n-1,2) exceeds the budget
    """
    total = _check_budget(q, n, budget)
    m = comb(n - 1, 2)
    stop = total if stop is None else min(stop, total)
    for tail in islice(product(range(q), repeat=m), start, stop):
        if shift_minimal(q, tail):
            yield _rep_graph(q, n, tail)


def _ranges(total: int, parts: int) -> List[Tuple[int, int]]:
    parts = max(1, min(parts, total))
    step = -(-total // parts)
    return [(s, min(s + step, total)) for s in range(0, total, step)]


def _run_parallel(worker: Callable, tasks: List[tuple], jobs: int) -> List[Any]:
    if jobs <= 1 or len(tasks) <= 1:
        return [worker(*t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, *zip(*tasks)))


@dataclass
class FamilyMatch:
    gamma: int
    permutation: Tuple[int, ...]
    labeling: VertexLabeling


@dataclass
class CensusReport:
    q: int
    n: int
    classes_scanned: int = 0
    critical_classes: List[WeightedGraph] = field(default_factory=list)
    matched_family: List[Optional[FamilyMatch]] = field(default_factory=list)
    property_violations: List[Dict[str, Any]] = field(default_factory=list)
    wall_time: float = 0.0

    def merge(self, other: "CensusReport") -> "CensusReport":
        self.classes_scanned += other.classes_scanned
        self.critical_classes.extend(other.critical_classes)
        self.matched_family.extend(other.matched_family)
        self.property_violations.extend(other.property_violations)
        return self

    @property
    def ok(self) -> bool:
        return not self.property_violations

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        matches = []
        for g, m in zip(self.critical_classes, self.matched_family):
            entry = {"rep": graph_to_dict(g)}
            if m is not None:
                entry.update(gamma=m.gamma, permutation=list(m.permutation), labels=list(m.labeling.labels))
            matches.append(entry)
        result = {
            "q": self.q,
            "n": self.n,
            "classes_scanned": self.classes_scanned,
            "critical_count": len(self.critical_classes),
            "critical_classes": [graph_to_dict(g) for g in self.critical_classes],
            "matched_family": matches,
            "property_violations": self.property_violations,
            "ok": self.ok,
        }
        if include_timing:
            result["wall_time"] = round(self.wall_time, 3)
        return result


def _family_graphs(q: int, n: int) -> List[Tuple[int, WeightedGraph]]:
    if q % 2 or n % 2 == 0 or n < 5:
        return []
    return [(gamma, make_family(FamilyParams(n, q, gamma))) for gamma in range(q)]


def _scan_critical(q: int, n: int, start: int, stop: int, budget: int) -> CensusReport:
    report = CensusReport(q=q, n=n)
    families = _family_graphs(q, n)
    logger.debug(f"critical scan q={q} n={n} range [{start}, {stop})")
    for rep in enumerate_reps(q, n, budget, start, stop):
        report.classes_scanned += 1
        if not is_critical(rep):
            continue
        match = None
        for gamma, fam in families:
            witness = switching_isomorphic(fam, rep)
            if witness is not None:
                match = FamilyMatch(gamma, witness[0], witness[1])
                break
        report.critical_classes.append(rep)
        report.matched_family.append(match)
        if match is None:
            kind = "unmatched_critical" if families else "critical_outside_family"
            report.property_violations.append({"kind": kind, "graph": graph_to_dict(rep)})
    return report


def find_critical(q: int, n: int, jobs: Optional[int] = None, budget: Optional[int] = None) -> CensusReport:
    """Scan every switching class for critical graphs and match them to G_{n,gamma}.

    Args:
        q: Modulus
        n: Vertex count
        jobs: Worker processes (default from config)
        budget: Maximum scan length (default from config)

    Returns:
        CensusReport; property_violations lists critical classes outside the
        family, unmatched ones, a class-count mismatch and a pinned-count
        mismatch
    """
    jobs = config.DEFAULT_JOBS if jobs is None else jobs
    budget = config.DEFAULT_BUDGET if budget is None else budget
    total = _check_budget(q, n, budget)
    started = time.perf_counter()
    tasks = [(q, n, s, e, budget) for s, e in _ranges(total, jobs)]
    report = CensusReport(q=q, n=n)
    for part in _run_parallel(_scan_critical, tasks, jobs):
        report.merge(part)
    report.wall_time = time.perf_counter() - started

    expected = expected_class_count(q, n)
    if report.classes_scanned != expected:
        report.property_violations.append(
            {"kind": "class_count_mismatch", "expected": expected, "scanned": report.classes_scanned}
        )
    pinned = CRITICAL_COUNTS.get((q, n))
    if pinned is not None and pinned != len(report.critical_classes):
        report.property_violations.append(
            {"kind": "pinned_count_mismatch", "pinned": pinned, "found": len(report.critical_classes)}
        )
    logger.info(
        f"census q={q} n={n}: {report.classes_scanned} classes, "
        f"{len(report.critical_classes)} critical, {report.wall_time:.2f}s"
    )
    return report


# Each check returns (tested, premise held, violation detail or None).
# `tested` marks graphs past the check's structural filter; a violation is a
# graph that meets the premise and misses the conclusion.
CheckResult = Tuple[bool, bool, Optional[str]]


def _check_nss(g: WeightedGraph) -> CheckResult:
    if is_separable(g) is None:
        return False, False, None
    count = nonseparable_subgraph_count(g)
    return True, True, None if count in (0, 2) else f"{count} nonseparable subgraphs of order n-1"


def _check_lemma3(g: WeightedGraph) -> CheckResult:
    if is_separable(g) is None:
        return False, False, None
    premise = False
    for d in range(g.n):
        if is_separable(delete_vertex(g, d)) is None:
            premise = True
            if unique_separable_pair(g, d) is None:
                return True, True, f"deleting {d} leaves a nonseparable graph without a unique pair {{{d}, e}}"
    return True, premise, None


def _all_subgraphs_separable(g: WeightedGraph, orders: Sequence[int]) -> bool:
    for k in orders:
        for S in combinations(range(g.n), k):
            if is_separable(induced_subgraph(g, S)) is None:
                return False
    return True


def _check_c2rs(g: WeightedGraph) -> CheckResult:
    if not _all_subgraphs_separable(g, (g.n - 1, g.n - 2)):
        return True, False, None
    if is_separable(g) is None:
        return True, True, "all subgraphs of orders n-1 and n-2 separable, graph is not"
    return True, True, None


def _check_allsep(g: WeightedGraph) -> CheckResult:
    if not _all_subgraphs_separable(g, (4, 5)):
        return True, False, None
    if is_separable(g) is None:
        return True, True, "all subgraphs of orders 4 and 5 separable, graph is not"
    return True, True, None


def _check_czm(g: WeightedGraph) -> CheckResult:
    isolated = [v for v in range(g.n) if not any(g.row(v))]
    if not isolated:
        return False, False, None
    if is_separable(g) is None:
        return True, False, None
    for i, j in combinations(range(g.q), 2):
        if is_separable(swap_weights(g, i, j)) is None:
            return True, True, f"swapping weights {i} and {j} destroys separability"
    return True, True, None


def separable_extension_kernel(g: WeightedGraph) -> Optional[Tuple[int, ...]]:
    """A nonseparable induced subgraph of order 4..n-3 whose every one- and
    two-vertex extension is separable, or None."""
    n = g.n
    everything = range(n)
    for chi in range(4, n - 2):
        for K in combinations(everything, chi):
            if is_separable(induced_subgraph(g, K)) is not None:
                continue
            outside = [v for v in everything if v not in K]
            supersets = [tuple(sorted(K + (a,))) for a in outside]
            supersets += [tuple(sorted(K + pair)) for pair in combinations(outside, 2)]
            if all(is_separable(induced_subgraph(g, S)) is not None for S in supersets):
                return K
    return None


def _check_t2rs(g: WeightedGraph) -> CheckResult:
    K = separable_extension_kernel(g)
    if K is None:
        return True, False, None
    if is_separable(g) is None:
        return True, True, f"kernel {list(K)} satisfies the premise, graph is nonseparable"
    return True, True, None


CHECKS: Dict[str, Tuple[int, Callable[[WeightedGraph], CheckResult]]] = {
    "nss": (5, _check_nss),
    "lemma3": (5, _check_lemma3),
    "c2rs": (5, _check_c2rs),
    "allsep": (5, _check_allsep),
    "czm": (4, _check_czm),
    "t2rs": (7, _check_t2rs),
}


@dataclass
class CheckReport:
    name: str
    q: int
    n: int
    mode: str
    seed: Optional[int] = None
    samples: Optional[int] = None
    scanned: int = 0
    tested: int = 0
    premise_hits: int = 0
    violations: List[Dict[str, Any]] = field(default_factory=list)

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.scanned += other.scanned
        self.tested += other.tested
        self.premise_hits += other.premise_hits
        self.violations.extend(other.violations)
        return self

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.name,
            "q": self.q,
            "n": self.n,
            "mode": self.mode,
            "seed": self.seed,
            "samples": self.samples,
            "scanned": self.scanned,
            "tested": self.tested,
            "premise_hits": self.premise_hits,
            "violations": self.violations,
            "ok": self.ok,
        }


def _apply_check(name: str, q: int, n: int, graphs: Iterable[WeightedGraph]) -> CheckReport:
    check = CHECKS[name][1]
    report = CheckReport(name=name, q=q, n=n, mode="")
    for g in graphs:
        report.scanned += 1
        tested, premise, detail = check(g)
        report.tested += tested
        report.premise_hits += premise
        if detail is not None:
            report.violations.append({"detail": detail, "graph": graph_to_dict(g)})
    return report


def _check_range(name: str, q: int, n: int, start: int, stop: int, budget: int) -> CheckReport:
    return _apply_check(name, q, n, enumerate_reps(q, n, budget, start, stop))


def _check_tails(name: str, q: int, n: int, tails: List[Tuple[int, ...]]) -> CheckReport:
    return _apply_check(name, q, n, (_rep_graph(q, n, t) for t in tails))


def sample_tails(q: int, n: int, seed: int, count: int) -> List[Tuple[int, ...]]:
    """Seeded random class representatives, as shift-minimal upper-triangle tails."""
    rng = Lcg64(seed)
    m = comb(n - 1, 2)
    shifts = sorted({(-2 * t) % q for t in range(q)})
    tails = []
    for _ in range(count):
        raw = rng.residues(q, m)
        tails.append(min(tuple((x + s) % q for x in raw) for s in shifts))
    return tails


def sample_kernel_extensions(q: int, n: int, seed: int, count: int) -> List[WeightedGraph]:
    """Seeded graphs whose order-4 kernel is nonseparable while every one- and
    two-vertex extension of it is separable.

    The kernel is a 0-isolated graph on vertices 0..3 with three distinct tail
    weights. Every further vertex v copies kernel vertex 0 up to a shift s_v
    (w(v, u) = s_v for u in 1..3); weights among vertex 0 and its copies are
    random. A random switching and vertex permutation follow.
    """
    if q < 3:
        raise DomainError(f"no nonseparable graph of order 4 exists mod {q}")
    if n < 7:
        raise DomainError(f"kernel extensions need n >= 7, got {n}")
    rng = Lcg64(seed)
    graphs = []
    for _ in range(count):
        tail: List[int] = []
        while len(tail) < 3:
            x = rng.below(q)
            if x not in tail:
                tail.append(x)
        m = [[0] * n for _ in range(n)]
        for (u, v), x in zip(((1, 2), (1, 3), (2, 3)), tail):
            m[u][v] = m[v][u] = x
        for v in range(4, n):
            s = rng.below(q)
            for u in (1, 2, 3):
                m[u][v] = m[v][u] = s
        blown = [0] + list(range(4, n))
        for u, v in combinations(blown, 2):
            m[u][v] = m[v][u] = rng.below(q)
        g = WeightedGraph.from_matrix(q, m)
        g = switch(g, VertexLabeling(q, tuple(rng.residues(q, n))))
        perm = list(range(n))
        for i in range(n - 1, 0, -1):
            j = rng.below(i + 1)
            perm[i], perm[j] = perm[j], perm[i]
        graphs.append(permute(g, perm))
    return graphs


def check_graphs(name: str, graphs: Sequence[WeightedGraph]) -> CheckReport:
    """Run one check over explicitly given graphs of a common q and n."""
    if name not in CHECKS:
        raise CheckError(f"unknown check {name!r}; expected one of {sorted(CHECKS)}")
    if not graphs:
        raise CheckError("no graphs to check")
    q, n = graphs[0].q, graphs[0].n
    if any(g.q != q or g.n != n for g in graphs):
        raise CheckError("graphs must share the modulus and order")
    if n < CHECKS[name][0]:
        raise CheckError(f"check {name} needs n >= {CHECKS[name][0]}, got {n}")
    report = _apply_check(name, q, n, graphs)
    report.mode = "given"
    return report


def run_check(name: str, q: int, n: int, seed: Optional[int] = None, samples: Optional[int] = None,
              budget: Optional[int] = None, jobs: Optional[int] = None) -> CheckReport:
    """Verify one structural property over all classes or a seeded sample.

    Checks: nss (0 or 2 nonseparable vertex-deleted subgraphs), lemma3
    (pair structure behind a nonseparable deletion), c2rs (separable
    subgraphs of orders n-1 and n-2 force separability), allsep (separable
    subgraphs of orders 4 and 5 force it), czm (swapping two weights keeps a
    graph with an isolated vertex separable), t2rs (a nonseparable kernel
    with separable one- and two-vertex extensions forces it).

    The scan is exhaustive when samples is None and the class scan fits the
    budget; otherwise `samples` (default from config) seeded classes are used.
    Sampled t2rs runs draw from `sample_kernel_extensions` instead, since
    random classes almost never meet its premise.
    """
    if name not in CHECKS:
        raise CheckError(f"unknown check {name!r}; expected one of {sorted(CHECKS)}")
    min_n = CHECKS[name][0]
    if n < min_n:
        raise CheckError(f"check {name} needs n >= {min_n}, got {n}")
    if not 2 <= q <= MAX_MODULUS:
        raise DomainError(f"modulus must be in [2, {MAX_MODULUS}], got {q}")
    jobs = config.DEFAULT_JOBS if jobs is None else jobs
    budget = config.DEFAULT_BUDGET if budget is None else budget
    seed = config.DEFAULT_SEED if seed is None else seed
    total = assignment_count(q, n)

    if samples is None and total <= budget:
        tasks = [(name, q, n, s, e, budget) for s, e in _ranges(total, jobs)]
        parts = _run_parallel(_check_range, tasks, jobs)
        report = CheckReport(name=name, q=q, n=n, mode="exhaustive")
    else:
        if samples is None:
            samples = config.DEFAULT_SAMPLES
            logger.warning(f"check {name} q={q} n={n}: {total} assignments over budget, sampling {samples}")
        if name == "t2rs":
            items: List[Any] = sample_kernel_extensions(q, n, seed, samples)
            worker = _apply_check
        else:
            items = sample_tails(q, n, seed, samples)
            worker = _check_tails
        step = -(-len(items) // max(1, jobs)) or 1
        tasks = [(name, q, n, items[i:i + step]) for i in range(0, len(items), step)]
        parts = _run_parallel(worker, tasks, jobs)
        report = CheckReport(name=name, q=q, n=n, mode="sampled", seed=seed, samples=samples)
    for part in parts:
        report.merge(part)
    logger.info(
        f"check {name} q={q} n={n}: {report.scanned} scanned, "
        f"{report.premise_hits} premise hits, {len(report.violations)} violations"
    )
    return report

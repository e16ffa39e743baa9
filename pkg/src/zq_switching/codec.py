"""JSON shapes for graphs, certificates, polynomials, tables and quasigroups.

    graph        {"q": 4, "n": 5, "edges": [[u, v, w], ...]}
    certificate  {"W": [...], "labels": [...]}
    polynomial   {"q": 3, "nvars": 4, "terms": [{"exps": [...], "coef": c}, ...]}
    table        {"q": 3, "n": 3, "values": [...]}       (+ "a" for an extension)
    quasigroup   {"m": 9, "n": 3, "values": [...]}       (flat, row-major)
"""

import json
from typing import Any, Dict, Optional, Union

from zq_switching.config import resolve_data_path
from zq_switching.errors import DomainError, GraphError
from zq_switching.graph import VertexLabeling, WeightedGraph, make_graph
from zq_switching.partial_function import PartialExtension
from zq_switching.polynomial import FunctionTable, PolynomialZq
from zq_switching.quasigroup import QuasigroupTable
from zq_switching.separability import SeparationCertificate

JsonInput = Union[str, Dict[str, Any]]


def load_json(source: JsonInput) -> Dict[str, Any]:
    """Accept an already-decoded object, or a path resolved against the data directory."""
    if isinstance(source, dict):
        return source
    path = resolve_data_path(source)
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _require(d: Dict[str, Any], *keys: str, kind: str) -> None:
    missing = [k for k in keys if k not in d]
    if missing:
        raise DomainError(f"{kind} object is missing {', '.join(missing)}")


def graph_to_dict(g: WeightedGraph) -> Dict[str, Any]:
    return {"q": g.q, "n": g.n, "edges": [list(e) for e in g.edges()]}


def graph_from_dict(d: JsonInput) -> WeightedGraph:
    d = load_json(d)
    _require(d, "q", "n", kind="graph")
    edges = []
    for e in d.get("edges", []):
        if len(e) != 3:
            raise GraphError(f"edge {e} is not a [u, v, w] triple")
        edges.append(tuple(int(x) for x in e))
    return make_graph(int(d["q"]), int(d["n"]), edges)


def labeling_from_list(q: int, labels) -> VertexLabeling:
    return VertexLabeling(q, tuple(int(x) for x in labels))


def certificate_to_dict(cert: SeparationCertificate) -> Dict[str, Any]:
    return {"W": list(cert.W), "labels": list(cert.labeling.labels)}


def certificate_from_dict(q: int, d: JsonInput) -> SeparationCertificate:
    d = load_json(d)
    _require(d, "W", "labels", kind="certificate")
    return SeparationCertificate(tuple(int(v) for v in d["W"]), labeling_from_list(q, d["labels"]))


def poly_to_dict(p: PolynomialZq) -> Dict[str, Any]:
    return {
        "q": p.q,
        "nvars": p.nvars,
        "terms": [{"exps": list(e), "coef": c} for e, c in p.terms],
    }


def poly_from_dict(d: JsonInput) -> PolynomialZq:
    d = load_json(d)
    _require(d, "q", "nvars", kind="polynomial")
    terms = tuple((tuple(t["exps"]), int(t["coef"])) for t in d.get("terms", []))
    return PolynomialZq(int(d["q"]), int(d["nvars"]), terms)


def table_to_dict(t: FunctionTable) -> Dict[str, Any]:
    return {"q": t.q, "n": t.n, "values": t.values.tolist()}


def table_from_dict(d: JsonInput) -> FunctionTable:
    d = load_json(d)
    _require(d, "q", "n", "values", kind="function table")
    return FunctionTable(int(d["q"]), int(d["n"]), d["values"])


def extension_to_dict(e: PartialExtension) -> Dict[str, Any]:
    return {**table_to_dict(e.f), "a": e.a}


def extension_from_dict(d: JsonInput, a: Optional[int] = None) -> PartialExtension:
    """Table plus constant; an explicit `a` wins over the object's own."""
    d = load_json(d)
    if a is None:
        _require(d, "a", kind="extension")
        a = d["a"]
    return PartialExtension(table_from_dict(d), int(a))


def quasigroup_to_dict(t: QuasigroupTable) -> Dict[str, Any]:
    return {"m": t.m, "n": t.n, "values": t.values.reshape(-1).tolist()}


def quasigroup_from_dict(d: JsonInput) -> QuasigroupTable:
    d = load_json(d)
    _require(d, "m", "n", "values", kind="quasigroup")
    return QuasigroupTable(int(d["m"]), int(d["n"]), d["values"])

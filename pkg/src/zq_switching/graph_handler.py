"""Graph and family handlers.

Each handler takes a dictionary of arguments (graphs as JSON objects or file
paths) and returns a JSON-ready dictionary; failures come back as
{"error": message}.
"""

from typing import Any, Dict

from loguru import logger

from zq_switching.codec import (
    certificate_to_dict,
    graph_from_dict,
    graph_to_dict,
    labeling_from_list,
)
from zq_switching.family import FamilyParams, family_isomorphism_classes, make_family, verify_family_critical
from zq_switching.graph import is_additive, isolate, switch, switching_isomorphic
from zq_switching.separability import (
    is_critical,
    is_separable,
    is_separable_set,
    nonseparable_subgraph_count,
    nontrivial_separable_sets,
)

HANDLED_ERRORS = (ValueError, KeyError, TypeError, OSError)


async def check_additive(arguments: Dict[str, Any]) -> Dict[str, Any]:
    """Decide whether a graph is additive and return a generating labeling."""
    if arguments.get("graph") is None:
        return {"error": "graph is required"}
    try:
        lab = is_additive(graph_from_dict(arguments["graph"]))
    except HANDLED_ERRORS as e:
        return {"error": f"Error checking additivity: {e}"}
    return {"additive": lab is not None, "labels": list(lab.labels) if lab is not None else None}


async def switch_graph(arguments: Dict[str, Any]) -> Dict[str, Any]:
    """Switch a graph by a vertex labeling.

    Args:
        arguments: Dictionary containing:
            - graph: Graph object or path
            - labels: One label per vertex

    Returns:
        Dict with the switched graph
    """
    if arguments.get("graph") is None or arguments.get("labels") is None:
        return {"error": "graph and labels are required"}
    try:
        g = graph_from_dict(arguments["graph"])
        return {"graph": graph_to_dict(switch(g, labeling_from_list(g.q, arguments["labels"])))}
    except HANDLED_ERRORS as e:
        return {"error": f"Error switching graph: {e}"}


async def isolate_vertex(arguments: Dict[str, Any]) -> Dict[str, Any]:
    if arguments.get("graph") is None:
        return {"error": "graph is required"}
    try:
        iso, lab = isolate(graph_from_dict(arguments["graph"]), int(arguments.get("vertex", 0)))
    except HANDLED_ERRORS as e:
        return {"error": f"Error isolating vertex: {e}"}
    return {"graph": graph_to_dict(iso), "labels": list(lab.labels)}


async def analyze_separability(arguments: Dict[str, Any]) -> Dict[str, Any]:
    """Decide separability of a graph, or of one vertex set when W is given.

    Args:
        arguments: Dictionary containing:
            - graph: Graph object or path
            - W: Optional vertex set to test instead of searching

    Returns:
        Dict with `separable` and, when separable, a certificate
    """
    if arguments.get("graph") is None:
        return {"error": "graph is required"}
    try:
        g = graph_from_dict(arguments["graph"])
        W = arguments.get("W")
        cert = is_separable(g) if W is None else is_separable_set(g, W)
    except HANDLED_ERRORS as e:
        return {"error": f"Error analyzing separability: {e}"}
    result: Dict[str, Any] = {"q": g.q, "n": g.n, "separable": cert is not None}
    if cert is not None:
        result["certificate"] = certificate_to_dict(cert)
    return result


async def list_separable_sets(arguments: Dict[str, Any]) -> Dict[str, Any]:
    if arguments.get("graph") is None:
        return {"error": "graph is required"}
    try:
        found = nontrivial_separable_sets(graph_from_dict(arguments["graph"]))
    except HANDLED_ERRORS as e:
        return {"error": f"Error listing separable sets: {e}"}
    return {"sets": [certificate_to_dict(cert) for _, cert in found], "count": len(found)}


async def analyze_criticality(arguments: Dict[str, Any]) -> Dict[str, Any]:
    if arguments.get("graph") is None:
        return {"error": "graph is required"}
    try:
        g = graph_from_dict(arguments["graph"])
        separable = is_separable(g) is not None
        critical = is_critical(g)
        nss = nonseparable_subgraph_count(g)
    except HANDLED_ERRORS as e:
        return {"error": f"Error analyzing criticality: {e}"}
    return {"separable": separable, "critical": critical, "nonseparable_subgraphs": nss}


async def find_switching_isomorphism(arguments: Dict[str, Any]) -> Dict[str, Any]:
    """Search for (perm, labels) with switch(permute(graph, perm), labels) == other."""
    if arguments.get("graph") is None or arguments.get("other") is None:
        return {"error": "graph and other are required"}
    try:
        found = switching_isomorphic(graph_from_dict(arguments["graph"]), graph_from_dict(arguments["other"]))
    except HANDLED_ERRORS as e:
        return {"error": f"Error searching switching isomorphism: {e}"}
    if found is None:
        return {"isomorphic": False}
    perm, lab = found
    return {"isomorphic": True, "permutation": list(perm), "labels": list(lab.labels)}


def _family_params(arguments: Dict[str, Any]) -> FamilyParams:
    missing = [k for k in ("n", "q", "gamma") if arguments.get(k) is None]
    if missing:
        raise KeyError(f"{', '.join(missing)} required")
    return FamilyParams(int(arguments["n"]), int(arguments["q"]), int(arguments["gamma"]))


async def generate_family(arguments: Dict[str, Any]) -> Dict[str, Any]:
    """Build G_{n,gamma} for even q and odd n >= 5."""
    try:
        return graph_to_dict(make_family(_family_params(arguments)))
    except HANDLED_ERRORS as e:
        return {"error": f"Error generating family graph: {e}"}


async def verify_family(arguments: Dict[str, Any]) -> Dict[str, Any]:
    """Verify criticality of G_{n,gamma}, its named separable pairs and, on
    request, which gamma values give switching-isomorphic graphs."""
    try:
        p = _family_params(arguments)
        report = verify_family_critical(p).to_dict()
        if arguments.get("classes"):
            report["isomorphism_classes"] = family_isomorphism_classes(p.n, p.q)
    except HANDLED_ERRORS as e:
        return {"error": f"Error verifying family: {e}"}
    if not report["ok"]:
        logger.warning(f"G_{{{p.n},{p.gamma}}} mod {p.q} failed verification")
    return report

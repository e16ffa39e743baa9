"""Handlers for partial functions and quasigroups.

Functions are given either as a polynomial object (has "nvars") or a value
table; the constant a comes from the arguments, then from the object, then
defaults to 0.
"""

from typing import Any, Dict, Optional

from zq_switching import config
from zq_switching.codec import (
    graph_to_dict,
    load_json,
    poly_from_dict,
    poly_to_dict,
    quasigroup_from_dict,
    quasigroup_to_dict,
    table_from_dict,
    table_to_dict,
)
from zq_switching.partial_function import (
    PartialExtension,
    compare_deciders,
    cross_patterns,
    graph_of_quadratic,
    is_separable_extension,
    oracle_is_W_separable,
    random_quadratics,
    subfunction_report,
)
from zq_switching.polynomial import FunctionTable, random_quadratic, reduce_mod_constraint, table_from_poly
from zq_switching.quasigroup import (
    build_Qfa,
    check_retract_implication,
    invert,
    is_quasigroup,
    is_separable_qg,
    is_W_separable_qg,
    retract,
    retract_implication_census,
    verify_correspondence,
)
from zq_switching.sampling import Lcg64

HANDLED_ERRORS = (ValueError, KeyError, TypeError, OSError)


def _function(arguments: Dict[str, Any]) -> FunctionTable:
    if arguments.get("function") is None:
        raise KeyError("function is required")
    d = load_json(arguments["function"])
    if "nvars" in d:
        return table_from_poly(poly_from_dict(d))
    return table_from_dict(d)


def _constant(arguments: Dict[str, Any]) -> int:
    if arguments.get("a") is not None:
        return int(arguments["a"])
    source = arguments.get("function")
    if source is not None:
        return int(load_json(source).get("a", 0))
    return 0


def _extension(arguments: Dict[str, Any]) -> PartialExtension:
    f = _function(arguments)
    return PartialExtension(f, _constant(arguments) % f.q)


def _split_dict(split) -> Dict[str, Any]:
    return {"f1": table_to_dict(split[0]), "f2": table_to_dict(split[1])}


async def reduce_polynomial(arguments: Dict[str, Any]) -> Dict[str, Any]:
    """Reduce a polynomial over (x_1..x_n, x_0) on the constraint sum = a."""
    if arguments.get("poly") is None:
        return {"error": "poly is required"}
    try:
        tau = reduce_mod_constraint(poly_from_dict(arguments["poly"]), int(arguments.get("a") or 0))
    except HANDLED_ERRORS as e:
        return {"error": f"Error reducing polynomial: {e}"}
    return {"poly": poly_to_dict(tau), "degree": tau.degree}


async def quadratic_graph(arguments: Dict[str, Any]) -> Dict[str, Any]:
    if arguments.get("poly") is None:
        return {"error": "poly is required"}
    try:
        return graph_to_dict(graph_of_quadratic(poly_from_dict(arguments["poly"])))
    except HANDLED_ERRORS as e:
        return {"error": f"Error building graph: {e}"}


async def function_separability(arguments: Dict[str, Any]) -> Dict[str, Any]:
    """Decide separability of the a-extension of a function.

    Args:
        arguments: Dictionary containing:
            - function: Polynomial or table object, or a path to one
            - a: Constraint constant
            - W: Optional label set to decide instead of scanning
            - use_graph: Screen candidate sets with the quadratic graph test
            - verify: Run the oracle on every screened set as well
            - subfunctions: Also report every one-argument subfunction

    Returns:
        Dict with `separable`, the separating W and the split (f1, f2)
    """
    try:
        e = _extension(arguments)
        W = arguments.get("W")
        if W is not None:
            split = oracle_is_W_separable(e, W)
            found = (tuple(sorted(W)), split) if split is not None else None
        else:
            found = is_separable_extension(
                e, use_graph=bool(arguments.get("use_graph")), verify=bool(arguments.get("verify"))
            )
        result: Dict[str, Any] = {"q": e.q, "n": e.n, "a": e.a, "separable": found is not None}
        if found is not None:
            result["W"] = list(found[0])
            result.update(_split_dict(found[1]))
        if arguments.get("subfunctions"):
            report = subfunction_report(e)
            result["subfunctions"] = report["subfunctions"]
            result["ok"] = report["holds"]
    except HANDLED_ERRORS as e:
        return {"error": f"Error deciding separability: {e}"}
    return result


async def oracle_split(arguments: Dict[str, Any]) -> Dict[str, Any]:
    if arguments.get("W") is None:
        return {"error": "W is required"}
    try:
        e = _extension(arguments)
        split = oracle_is_W_separable(e, arguments["W"])
    except HANDLED_ERRORS as e:
        return {"error": f"Error running oracle: {e}"}
    result: Dict[str, Any] = {"W": sorted(arguments["W"]), "separable": split is not None}
    if split is not None:
        result.update(_split_dict(split))
    return result


async def compare_quadratic_deciders(arguments: Dict[str, Any]) -> Dict[str, Any]:
    """Graph test against the oracle, exhaustively over cross patterns or on
    seeded random quadratics."""
    if arguments.get("q") is None or arguments.get("n") is None:
        return {"error": "q and n are required"}
    try:
        q, n = int(arguments["q"]), int(arguments["n"])
        a = int(arguments.get("a") or 0)
        if arguments.get("exhaustive"):
            polys = cross_patterns(q, n)
        else:
            count = int(arguments.get("count") or 200)
            seed = config.DEFAULT_SEED if arguments.get("seed") is None else int(arguments["seed"])
            polys = random_quadratics(q, n, count, seed)
        return compare_deciders(q, n, polys, a).to_dict()
    except HANDLED_ERRORS as e:
        return {"error": f"Error comparing deciders: {e}"}


async def build_quasigroup(arguments: Dict[str, Any]) -> Dict[str, Any]:
    """Q_{f,a} for a function and constant."""
    try:
        f = _function(arguments)
        return quasigroup_to_dict(build_Qfa(f, _constant(arguments) % f.q))
    except HANDLED_ERRORS as e:
        return {"error": f"Error building quasigroup: {e}"}


async def check_quasigroup(arguments: Dict[str, Any]) -> Dict[str, Any]:
    if arguments.get("table") is None:
        return {"error": "table is required"}
    try:
        ok = is_quasigroup(quasigroup_from_dict(arguments["table"]))
    except HANDLED_ERRORS as e:
        return {"error": f"Error checking quasigroup: {e}"}
    return {"quasigroup": ok, "ok": ok}


async def retract_quasigroup(arguments: Dict[str, Any]) -> Dict[str, Any]:
    missing = [k for k in ("table", "i", "c") if arguments.get(k) is None]
    if missing:
        return {"error": f"{', '.join(missing)} required"}
    try:
        t = quasigroup_from_dict(arguments["table"])
        return quasigroup_to_dict(retract(t, int(arguments["i"]), int(arguments["c"])))
    except HANDLED_ERRORS as e:
        return {"error": f"Error computing retract: {e}"}


async def invert_quasigroup(arguments: Dict[str, Any]) -> Dict[str, Any]:
    if arguments.get("table") is None or arguments.get("i") is None:
        return {"error": "table and i are required"}
    try:
        return quasigroup_to_dict(invert(quasigroup_from_dict(arguments["table"]), int(arguments["i"])))
    except HANDLED_ERRORS as e:
        return {"error": f"Error inverting quasigroup: {e}"}


async def quasigroup_separability(arguments: Dict[str, Any]) -> Dict[str, Any]:
    """Decompose a quasigroup along W, or find the first separable W.

    Args:
        arguments: Dictionary containing:
            - table: Quasigroup object or path
            - W: Optional label set in {0..n}
            - allow_full: Admit |W| = n

    Returns:
        Dict with `separable` and, when separable, the decomposition
    """
    if arguments.get("table") is None:
        return {"error": "table is required"}
    try:
        t = quasigroup_from_dict(arguments["table"])
        W = arguments.get("W")
        if W is None:
            d = is_separable_qg(t)
        else:
            d = is_W_separable_qg(t, W, allow_full=bool(arguments.get("allow_full")))
    except HANDLED_ERRORS as e:
        return {"error": f"Error deciding quasigroup separability: {e}"}
    result: Dict[str, Any] = {"m": t.m, "n": t.n, "separable": d is not None}
    if d is not None:
        result["decomposition"] = d.to_dict()
    return result


async def verify_quasigroup_correspondence(arguments: Dict[str, Any]) -> Dict[str, Any]:
    """Bulk agreement between Q_{f,a} and partial-extension separability."""
    if arguments.get("q") is None or arguments.get("n") is None:
        return {"error": "q and n are required"}
    try:
        seed: Optional[int] = None if arguments.get("seed") is None else int(arguments["seed"])
        report = verify_correspondence(
            int(arguments["q"]), int(arguments["n"]), int(arguments.get("count") or 100), seed
        )
    except HANDLED_ERRORS as e:
        return {"error": f"Error verifying correspondence: {e}"}
    return report.to_dict()


async def verify_retract_implication(arguments: Dict[str, Any]) -> Dict[str, Any]:
    """Check that separable retracts force a separable Q_{f,a}.

    Uses the given function, or a seeded random quadratic in n variables.
    With count, runs that many seeded quadratics and reports premise hits.
    """
    try:
        if arguments.get("function") is not None:
            f = _function(arguments)
        else:
            if arguments.get("q") is None or arguments.get("n") is None:
                return {"error": "function, or q and n, required"}
            q, n = int(arguments["q"]), int(arguments["n"])
            seed = config.DEFAULT_SEED if arguments.get("seed") is None else int(arguments["seed"])
            if arguments.get("count") is not None:
                return retract_implication_census(q, n, int(arguments["count"]), seed).to_dict()
            f = table_from_poly(random_quadratic(q, n, Lcg64(seed)))
        report = check_retract_implication(f, _constant(arguments) % f.q)
    except HANDLED_ERRORS as e:
        return {"error": f"Error verifying retracts: {e}"}
    report["ok"] = report["holds"]
    return report

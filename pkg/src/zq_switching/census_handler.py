"""Census handlers: critical-graph search and structural property checks."""

from typing import Any, Dict, Optional

from zq_switching.census import find_critical, run_check


def _int(arguments: Dict[str, Any], key: str) -> Optional[int]:
    value = arguments.get(key)
    return None if value is None else int(value)


async def census_critical(arguments: Dict[str, Any]) -> Dict[str, Any]:
    """Enumerate all switching classes of order n over Z_q and report the critical ones.

    Args:
        arguments: Dictionary containing:
            - q, n: Modulus and order
            - jobs: Optional worker process count
            - budget: Optional enumeration budget
            - timing: Include wall time in the report

    Returns:
        Census report with critical classes, family matches and violations
    """
    if arguments.get("q") is None or arguments.get("n") is None:
        return {"error": "q and n are required"}
    try:
        report = find_critical(
            int(arguments["q"]), int(arguments["n"]), jobs=_int(arguments, "jobs"), budget=_int(arguments, "budget")
        )
    except (ValueError, TypeError) as e:
        return {"error": f"Error running census: {e}"}
    return report.to_dict(include_timing=bool(arguments.get("timing")))


async def census_check(arguments: Dict[str, Any]) -> Dict[str, Any]:
    """Run one named property check (nss, lemma3, c2rs, allsep, czm, t2rs)."""
    missing = [k for k in ("name", "q", "n") if arguments.get(k) is None]
    if missing:
        return {"error": f"{', '.join(missing)} required"}
    try:
        report = run_check(
            str(arguments["name"]),
            int(arguments["q"]),
            int(arguments["n"]),
            seed=_int(arguments, "seed"),
            samples=_int(arguments, "samples"),
            budget=_int(arguments, "budget"),
            jobs=_int(arguments, "jobs"),
        )
    except (ValueError, TypeError) as e:
        return {"error": f"Error running check: {e}"}
    return report.to_dict()

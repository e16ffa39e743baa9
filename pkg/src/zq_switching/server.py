"""Zq Switching MCP Server (stdio)"""
from typing import Any, Dict, List, Optional

from fastmcp import FastMCP

from zq_switching.config import setup_logging

setup_logging()

from zq_switching.algebra_handler import (
    function_separability as run_function_separability,
    quasigroup_separability as run_quasigroup_separability,
    verify_quasigroup_correspondence as run_correspondence,
)
from zq_switching.census_handler import census_check as run_census_check
from zq_switching.census_handler import census_critical as run_census_critical
from zq_switching.graph_handler import analyze_separability, generate_family as run_generate_family
from zq_switching.graph_handler import verify_family as run_verify_family

mcp = FastMCP("Zq Switching")


@mcp.tool()
async def check_graph_separability(graph: Dict[str, Any], W: Optional[List[int]] = None) -> Dict[str, Any]:
    """Decide switching separability of a Z_q edge-weighted graph.

    Examples:
      - {"q": 2, "n": 5, "edges": [[1, 2, 1], [2, 3, 1], [3, 4, 1]]} - nonseparable
      - same graph with W=[0, 1] - tests one vertex set only

    Args:
        graph: JSON graph {"q", "n", "edges": [[u, v, w], ...]} or a file path
        W: Optional vertex set to test instead of searching

    Returns:
        Dict with `separable` and, when separable, a certificate {"W", "labels"}
    """
    return await analyze_separability({"graph": graph, "W": W})


@mcp.tool()
async def generate_family(n: int, q: int, gamma: int) -> Dict[str, Any]:
    """Build the critical graph G_{n,gamma} (q even, n odd >= 5)."""
    return await run_generate_family({"n": n, "q": q, "gamma": gamma})


@mcp.tool()
async def verify_family(n: int, q: int, gamma: int, classes: bool = False) -> Dict[str, Any]:
    """Verify that G_{n,gamma} is critical and that its named pairs separate.

    Args:
        n, q, gamma: Family parameters
        classes: Also group gamma values by switching isomorphism

    Returns:
        Report with per-vertex subgraph separability, witnesses and `ok`
    """
    return await run_verify_family({"n": n, "q": q, "gamma": gamma, "classes": classes})


@mcp.tool()
async def census_critical(q: int, n: int, jobs: Optional[int] = None, budget: Optional[int] = None) -> Dict[str, Any]:
    """Enumerate all switching classes of order n over Z_q and report critical ones.

    Odd q gives none; for even q every critical class should match some
    G_{n,gamma}. Cost grows as q^((n-1)(n-2)/2).
    """
    return await run_census_critical({"q": q, "n": n, "jobs": jobs, "budget": budget})


@mcp.tool()
async def census_check(name: str, q: int, n: int, seed: Optional[int] = None,
                       samples: Optional[int] = None, jobs: Optional[int] = None) -> Dict[str, Any]:
    """Run a structural property check over all classes or a seeded sample.

    Args:
        name: One of nss, lemma3, c2rs, allsep, czm, t2rs
        q, n: Modulus and order
        seed, samples: Sample instead of enumerating
        jobs: Worker processes
    """
    return await run_census_check({"name": name, "q": q, "n": n, "seed": seed, "samples": samples, "jobs": jobs})


@mcp.tool()
async def function_separability(function: Dict[str, Any], a: int = 0, W: Optional[List[int]] = None,
                                use_graph: bool = False) -> Dict[str, Any]:
    """Decide separability of the a-extension of f: Z_q^n -> Z_q (q prime).

    Args:
        function: Polynomial {"q", "nvars", "terms"} or table {"q", "n", "values"}
        a: Constraint constant, x_1 + ... + x_n + x_0 = a
        W: Optional argument labels (0 is the hidden argument)
        use_graph: Screen with the quadratic graph test
    """
    return await run_function_separability({"function": function, "a": a, "W": W, "use_graph": use_graph})


@mcp.tool()
async def quasigroup_separability(table: Dict[str, Any], W: Optional[List[int]] = None) -> Dict[str, Any]:
    """Decompose an n-ary quasigroup table {"m", "n", "values"} as G(x_U, H(x_W))."""
    return await run_quasigroup_separability({"table": table, "W": W})


@mcp.tool()
async def verify_quasigroup_correspondence(q: int, n: int, count: int = 100, seed: Optional[int] = None) -> Dict[str, Any]:
    """Check on seeded random quadratics that Q_{f,a} and the 0-extension of f
    separate along the same argument sets, and that retracts and inverses of
    Q_{f,a} are again Q_{g,a'} tables."""
    return await run_correspondence({"q": q, "n": n, "count": count, "seed": seed})


if __name__ == "__main__":
    mcp.run()

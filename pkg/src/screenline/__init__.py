"""Screen-line counter location on directed road networks.

Enumerate minimal directed (s, t)-cuts per origin-destination pair, prune
them with degree-based bounds, and pick an optimal sensor layout with exact
0-1 integer programs: minimum links covering every OD pair, or maximum OD
pairs covered under a link budget.
"""

from .bounds import BoundReport, compute_bounds, lemma2_filter, size_cap_filter
from .branchbound import SolveOptions, SolveResult, solve
from .cuts import (
    CutPool,
    CutSet,
    build_pool,
    enumerate_st_cuts,
    load_pool,
    outflow_cut,
    save_pool,
)
from .estimators import MaxCoverageLocator, MinLinkLocator
from .model import (
    IlpModel,
    Placement,
    PsiStructure,
    build_csp0,
    build_csp1,
    build_csp2,
    build_psi,
    extract_placement,
    write_lp,
)
from .network import Network, OdPair, load_network, read_centroids, read_link_table
from .oracle import brute_max_coverage, brute_min_links, coverage_ratio, verify_coverage

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CutPool",
    "CutSet",
    "IlpModel",
    "MaxCoverageLocator",
    "MinLinkLocator",
    "Network",
    "OdPair",
    "Placement",
    "PsiStructure",
    "SolveOptions",
    "SolveResult",
    "brute_max_coverage",
    "brute_min_links",
    "build_csp0",
    "build_csp1",
    "build_csp2",
    "build_pool",
    "build_psi",
    "compute_bounds",
    "coverage_ratio",
    "enumerate_st_cuts",
    "extract_placement",
    "lemma2_filter",
    "load_network",
    "load_pool",
    "outflow_cut",
    "read_centroids",
    "read_link_table",
    "save_pool",
    "size_cap_filter",
    "solve",
    "verify_coverage",
    "write_lp",
]

"""Anytime treewidth solver: improving upper and lower bounds that converge
to the exact value, with verifiable witnesses on both sides."""

from .btdp import (
    DpResult,
    PmcSet,
    TreeDecomposition,
    decide_tw_leq,
    enumerate_pmcs_upto,
    exact_tw,
    tw_over_pi,
    validate_td,
)
from .certificates import MinorCertificate, verify_certificate
from .control import Cancelled, CancelToken, Exhausted, SharedBounds, SizeCapExceeded
from .graph import ContractionForest, Graph
from .solver import SolveConfig, SolveReport, solve

__all__ = [
    "CancelToken",
    "Cancelled",
    "ContractionForest",
    "DpResult",
    "Exhausted",
    "Graph",
    "MinorCertificate",
    "PmcSet",
    "SharedBounds",
    "SizeCapExceeded",
    "SolveConfig",
    "SolveReport",
    "TreeDecomposition",
    "decide_tw_leq",
    "enumerate_pmcs_upto",
    "exact_tw",
    "solve",
    "tw_over_pi",
    "validate_td",
    "verify_certificate",
]

"""Constructive tight Hamilton cycles in dense 3-graphs via absorption."""
from __future__ import annotations

__version__ = "0.1.0"

from ._kernels import BACKEND
from .absorb import Absorber, AbsorberConstraint, count_absorbers, enumerate_absorbers, find_absorber, is_absorber
from .connect import ConnectorParams, connect_chain, connect_pair, tight_steps
from .density import (
    DensityParams,
    DensityWitness,
    Digraph,
    check_cherry,
    check_edge,
    check_points,
    estimate_rho_hat,
    falsify_cherry,
    falsify_edge,
    falsify_points,
)
from .hypergraph import ThreeGraph, new_graph
from .oracle import dp_connector, dp_hamilton, verify_hamilton_cycle, verify_tight_cycle, verify_tight_path
from .pathcover import CoverParams, CoverResult, extend_path, greedy_cover
from .paths import PathEnd, TightCycle, TightPath
from .pipeline import (
    AbsorbingPathRecord,
    HamiltonCertificate,
    PipelineParams,
    ReservoirReport,
    absorb_into,
    build_absorbing_path,
    find_tight_hamilton,
    sample_reservoir,
)
from .shave import ShaveResult, purge, shave_graph, strong_dense_subgraph

__all__ = [name for name in dir() if not name.startswith("_")]

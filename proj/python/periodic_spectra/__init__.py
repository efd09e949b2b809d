"""Trace formulas, band structures and cycle products for periodic graphs."""

import json

from ._core import (
    Error,
    Graph,
    SeriesApprox,
    TraceSeries,
    bipartite,
    build_graph,
    cycle_counts,
    determinant,
    eigenvalues,
    example,
    example_names,
    fiber_matrix,
    gp_graph,
    graph_from_json,
    heat_trace,
    ihara_log_derivative,
    kagome_lattice,
    load_graph,
    resolvent_trace,
    square_lattice,
    trace_series,
    z_line,
    zeta,
)
from ._core import band_summary as _band_summary

__all__ = [
    "Error",
    "Graph",
    "SeriesApprox",
    "TraceSeries",
    "band_summary",
    "bipartite",
    "build_graph",
    "cycle_counts",
    "determinant",
    "eigenvalues",
    "example",
    "example_names",
    "fiber_matrix",
    "gp_graph",
    "graph_from_json",
    "heat_trace",
    "ihara_log_derivative",
    "kagome_lattice",
    "load_graph",
    "resolvent_trace",
    "square_lattice",
    "trace_series",
    "z_line",
    "zeta",
]


def band_summary(graph, kind="adjacency", grid=32):
    """Band intervals, flat flags and total bandwidth as a dict."""
    return json.loads(_band_summary(graph, kind, grid))

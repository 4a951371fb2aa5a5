# -*- coding: utf-8 -*-
from .config import ExperimentPlan, RunCell, SolverEntry, load_config, parse_config
from .hstar import HStarFixture, compute_hstar, load_hstar, save_hstar
from .runner import CellFailure, ExecutionReport, execute, run_cell
from .summary import SummaryRow, summarize, summarize_frame
from .tables import emit_csv, emit_failures_csv, emit_summary_csv, emit_traces_csv, read_traces_csv

__all__ = [
    "ExperimentPlan",
    "RunCell",
    "SolverEntry",
    "load_config",
    "parse_config",
    "HStarFixture",
    "compute_hstar",
    "load_hstar",
    "save_hstar",
    "CellFailure",
    "ExecutionReport",
    "execute",
    "run_cell",
    "SummaryRow",
    "summarize",
    "summarize_frame",
    "emit_csv",
    "emit_failures_csv",
    "emit_summary_csv",
    "emit_traces_csv",
    "read_traces_csv",
]

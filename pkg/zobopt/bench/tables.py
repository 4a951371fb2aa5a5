# -*- coding: utf-8 -*-
from __future__ import annotations

import os
import tempfile
from dataclasses import asdict
from pathlib import Path
from typing import Sequence, Union

import pandas as pd

from ..trace import TRACE_COLUMNS, RunTrace
from .summary import SUMMARY_COLUMNS, SummaryRow

FLOAT_FORMAT = "%.17g"
NAN_SENTINEL = "NaN"
TRACE_FLOAT_COLUMNS = ["h", "violation", "g_norm", "moreau_norm", "rel_error"]
FAILURE_COLUMNS = ["label", "algorithm", "block_size", "seed", "k", "error"]

PathLike = Union[str, Path]


def _atomic_write(df: pd.DataFrame, path: PathLike, **kwargs) -> Path:
    """Escreve num temporário do mesmo diretório e troca com os.replace."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            df.to_csv(f, index=False, float_format=FLOAT_FORMAT, **kwargs)
        os.replace(tmp, path)
    except OSError as e:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise OSError(f"falha ao escrever {path}: {e}") from e
    return path


def traces_frame(traces: Sequence[RunTrace]) -> pd.DataFrame:
    """Linhas semente-major, k-minor (estável entre solvers da mesma semente)."""
    ordered = sorted(traces, key=lambda t: t.seed)
    rows = [row for t in ordered for row in t.rows()]
    df = pd.DataFrame(rows, columns=TRACE_COLUMNS)
    return df.astype({c: float for c in TRACE_FLOAT_COLUMNS})


def emit_traces_csv(traces: Sequence[RunTrace], path: PathLike) -> Path:
    return _atomic_write(traces_frame(traces), path)


def emit_summary_csv(rows: Sequence[SummaryRow], path: PathLike) -> Path:
    df = pd.DataFrame([asdict(r) for r in rows], columns=SUMMARY_COLUMNS)
    return _atomic_write(df, path, na_rep=NAN_SENTINEL)


def emit_failures_csv(failures: Sequence, path: PathLike) -> Path:
    df = pd.DataFrame([asdict(f) for f in failures], columns=FAILURE_COLUMNS)
    return _atomic_write(df, path)


def emit_csv(items: Sequence, path: PathLike) -> Path:
    """Despacha pelo tipo: traços ou linhas de resumo (lista vazia = traços)."""
    items = list(items)
    if items and isinstance(items[0], SummaryRow):
        return emit_summary_csv(items, path)
    if items and not isinstance(items[0], RunTrace):
        raise TypeError(f"emit_csv não sabe escrever {type(items[0]).__name__}.")
    return emit_traces_csv(items, path)


def read_traces_csv(path: PathLike) -> pd.DataFrame:
    path = Path(path)
    if path.is_dir():
        path = path / "traces.csv"
    if not path.exists():
        raise FileNotFoundError(f"traços não encontrados: {path}")
    return pd.read_csv(path, float_precision="round_trip")

# -*- coding: utf-8 -*-
"""
Linha de comando do harness.

    python -m zobopt.main run configs/quad_ball.toml --jobs 4
    python -m zobopt.main summarize out/quad_ball --targets 0.1,0.01,0.001
    python -m zobopt.main oracle-hstar configs/toy_grid.toml
    python -m zobopt.main probe-L configs/toy_grid.toml

Códigos de saída: 0 sucesso, 1 erro de validação, 2 falha de execução.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import List, Optional, Sequence

from dotenv import load_dotenv

from .algorithms import probe_lipschitz
from .bench import (
    compute_hstar,
    emit_failures_csv,
    emit_summary_csv,
    emit_traces_csv,
    execute,
    load_config,
    read_traces_csv,
    save_hstar,
    summarize_frame,
)
from .bench.runner import default_hstar_path
from .errors import ZobError
from .utils import configure_logging, get_settings

logger = logging.getLogger("zobopt.main")

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2
TARGETS_DEFAULT = "0.1,0.01,0.001"


def _parse_targets(raw: str) -> List[float]:
    try:
        return [float(t) for t in raw.split(",") if t.strip()]
    except ValueError:
        raise ValueError(f"--targets inválido: {raw!r} (use números separados por vírgula).")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zobopt", description="Otimização de ordem zero por blocos (primal-dual).")
    sub = p.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="Executa o plano e grava traces.csv.")
    run_p.add_argument("config", help="Arquivo TOML do experimento.")
    run_p.add_argument("--seed-offset", type=int, default=0, help="Soma a todas as sementes.")
    run_p.add_argument("--jobs", type=int, default=None, help="Processos em paralelo.")
    run_p.add_argument("--theory", action="store_true", help="Passos pelas hipóteses dos teoremas.")
    run_p.add_argument("--out", default=None, help="Diretório de saída.")

    sum_p = sub.add_parser("summarize", help="Tabela de iterações/consultas até o alvo.")
    sum_p.add_argument("trace_dir", help="Diretório (ou CSV) com os traços.")
    sum_p.add_argument("--targets", default=TARGETS_DEFAULT, help="Erros relativos alvo, separados por vírgula.")
    sum_p.add_argument("--out", default=None, help="Diretório do summary.csv.")

    h_p = sub.add_parser("oracle-hstar", help="Gera a fixture de h* do problema.")
    h_p.add_argument("config")
    h_p.add_argument("--out", default=None)

    l_p = sub.add_parser("probe-L", help="Estima a constante de Lipschitz L.")
    l_p.add_argument("config")
    l_p.add_argument("--out", default=None)
    return p


# ===========================
# Subcomandos
# ===========================
def _load_plan(args, settings):
    plan = load_config(args.config)
    out_dir = args.out or (plan.out_dir if plan.out_dir else settings.out_dir)
    return plan.with_overrides(
        seed_offset=getattr(args, "seed_offset", 0),
        theory=getattr(args, "theory", False),
        out_dir=out_dir,
    )


def cmd_run(args, settings) -> int:
    plan = _load_plan(args, settings)
    if plan.h_star is None and plan.h_star_file is None and default_hstar_path(plan).exists():
        plan = replace(plan, h_star_file=str(default_hstar_path(plan)))

    report = execute(plan, jobs=args.jobs or settings.jobs)
    out = Path(plan.out_dir)
    path = emit_traces_csv(report.traces, out / "traces.csv")
    logger.info("traços gravados em %s (%d execuções)", path, len(report.traces))
    if report.failures:
        emit_failures_csv(report.failures, out / "failures.csv")
        logger.error("%d célula(s) falharam; veja %s", len(report.failures), out / "failures.csv")
        return EXIT_RUNTIME
    return EXIT_OK


def cmd_summarize(args, settings) -> int:
    targets = _parse_targets(args.targets)
    df = read_traces_csv(args.trace_dir)
    rows = summarize_frame(df, targets)
    trace_dir = Path(args.trace_dir)
    out = Path(args.out) if args.out else (trace_dir if trace_dir.is_dir() else trace_dir.parent)
    path = emit_summary_csv(rows, out / "summary.csv")
    logger.info("resumo gravado em %s (%d linhas)", path, len(rows))
    return EXIT_OK


def cmd_oracle_hstar(args, settings) -> int:
    plan = _load_plan(args, settings)
    fixture = compute_hstar(plan)
    path = save_hstar(fixture, default_hstar_path(plan))
    print(json.dumps({"h_star": fixture.h_star, "path": str(path)}))
    return EXIT_OK


def cmd_probe_lipschitz(args, settings) -> int:
    plan = _load_plan(args, settings)
    probe = probe_lipschitz(plan.problem.build(), seed=plan.problem.seed)
    print(json.dumps({"L_hat": probe.L_hat, "queries": probe.queries}))
    return EXIT_OK


COMMANDS = {
    "run": cmd_run,
    "summarize": cmd_summarize,
    "oracle-hstar": cmd_oracle_hstar,
    "probe-L": cmd_probe_lipschitz,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    settings = get_settings(load_env=False)
    configure_logging(settings.log_level)
    args = build_parser().parse_args(argv)

    try:
        return COMMANDS[args.command](args, settings)
    except ValueError as e:
        logger.error("erro de validação: %s", e)
        return EXIT_VALIDATION
    except (ZobError, RuntimeError, OSError) as e:
        logger.error("falha de execução: %s", e)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())

# -*- coding: utf-8 -*-
import copy
import math

import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_array_equal

from zobopt.bench import (
    SummaryRow,
    compute_hstar,
    emit_csv,
    emit_summary_csv,
    emit_traces_csv,
    execute,
    load_config,
    load_hstar,
    parse_config,
    read_traces_csv,
    save_hstar,
    summarize,
    summarize_frame,
)
from zobopt.bench import runner
from zobopt.bench.config import ProblemSpec
from zobopt.bench.tables import traces_frame
from zobopt.errors import ConfigError, MissingFixtureError, RunFailedError
from zobopt.trace import TRACE_COLUMNS, RunTrace, TraceRecord

BASE = {
    "problem": {"kind": "quad_ball", "dim": 20, "seed": 0},
    "run": {"max_iters": 30, "seeds": [0, 1]},
    "solver": [{"algorithm": "zob_gda", "block_size": 10, "alpha": 0.1, "beta": 0.05}],
}

SMALL_SOLVER = [{"algorithm": "zob_gda", "block_size": 2, "alpha": 0.1, "beta": 0.05}]


def config(**changes):
    data = copy.deepcopy(BASE)
    for section, values in changes.items():
        if section == "solver":
            data["solver"] = values
        else:
            data.setdefault(section, {}).update(values)
    return data


class TestConfig:
    def test_minimal(self):
        plan = parse_config(config(run={"max_iters": 100, "seeds": [0]}, solver=[
            {"algorithm": "zob_gda", "block_size": 1, "alpha": 0.1, "beta": 0.1}
        ]))
        assert len(plan.cells()) == 1
        assert plan.solvers[0].block_size == 1

    def test_invalid_block(self):
        with pytest.raises(ConfigError, match="1 <= b <= d"):
            parse_config(config(solver=[{"algorithm": "zob_gda", "block_size": 0, "alpha": 0.1, "beta": 0.1}]))
        with pytest.raises(ConfigError, match="1 <= b <= d"):
            parse_config(config(solver=[{"algorithm": "zob_gda", "block_size": 21, "alpha": 0.1, "beta": 0.1}]))

    def test_unknown_keys_listed(self):
        data = config(run={"foo": 1})
        data["solver"][0]["bar"] = 2
        with pytest.raises(ConfigError) as err:
            parse_config(data)
        assert err.value.unknown_keys == ["run.foo", "solver[0].bar"]

    def test_reference_scale_plan(self):
        solvers = [
            {"algorithm": "zob_gda", "block_size": b, "alpha": 0.01, "beta_ratio": 2.5}
            for b in (1, 10, 50, "full")
        ]
        data = config(problem={"kind": "toy_grid", "dim": 168}, run={"max_iters": 20_000, "seed_count": 50}, solver=solvers)
        del data["run"]["seeds"]
        plan = parse_config(data)
        assert len(plan.cells()) == 200
        assert [s.block_size for s in plan.solvers] == [1, 10, 50, 168]
        assert plan.solvers[0].beta == pytest.approx(0.025)

    def test_horizon_shorter_than_budget(self):
        with pytest.raises(ConfigError, match="r_k"):
            parse_config(config(radius={"horizon": 10}))

    def test_radius_condition_without_rescale(self):
        with pytest.raises(ConfigError, match="1/b"):
            parse_config(config(radius={"r0": 1.0, "cap": 1.0, "auto_rescale": False}))

    def test_steps_required_outside_theory(self):
        with pytest.raises(ConfigError):
            parse_config(config(solver=[{"algorithm": "zob_gda", "block_size": 2, "alpha": 0.1}]))
        plan = parse_config(config(solver=[{"algorithm": "zob_gda", "block_size": 2, "theory": True}]))
        assert plan.solvers[0].theory

    def test_sgda_defaults(self):
        plan = parse_config(config(solver=[{"algorithm": "zob_sgda", "block_size": 2, "alpha": 0.1, "beta": 0.1}]))
        assert plan.solvers[0].p == 10.0
        assert plan.solvers[0].gamma == 0.3

    def test_seeds_and_seed_count_exclusive(self):
        with pytest.raises(ConfigError, match="não os dois"):
            parse_config(config(run={"seed_count": 5}))
        with pytest.raises(ConfigError, match="não os dois"):
            parse_config(config(run={"seed_start": 3}))

    def test_default_init_is_random(self):
        assert parse_config(config()).init == "random"

    def test_duplicate_summary_rows_rejected(self):
        same = {"algorithm": "zob_gda", "block_size": 10, "alpha": 0.1, "beta": 0.05}
        with pytest.raises(ConfigError, match="solver\\[1\\]"):
            parse_config(config(solver=[same, dict(same, alpha=0.2)]))
        # "full" e d explícito caem na mesma linha do resumo
        with pytest.raises(ConfigError):
            parse_config(config(solver=[same, dict(same, block_size=20), dict(same, block_size="full")]))
        with pytest.raises(ConfigError):
            parse_config(config(solver=[
                {"algorithm": "rge_gda", "alpha": 0.01, "beta": 0.05},
                {"algorithm": "rge_gda", "alpha": 0.01, "beta": 0.05, "direction": "sphere"},
            ]))

    def test_overrides(self):
        plan = parse_config(config()).with_overrides(seed_offset=100, theory=True, out_dir="elsewhere")
        assert plan.seeds == (100, 101)
        assert all(s.theory for s in plan.solvers)
        assert plan.out_dir == "elsewhere"

    def test_load_from_file(self, tmp_path):
        path = tmp_path / "plan.toml"
        path.write_text(
            '[problem]\nkind = "quad_ball"\ndim = 4\n\n[run]\nmax_iters = 5\nseed_count = 3\nseed_start = 7\n'
            'h_star_file = "hstar.json"\n\n[[solver]]\nalgorithm = "rge_gda"\nalpha = 0.01\nbeta = 0.1\n',
            encoding="utf-8",
        )
        plan = load_config(path)
        assert plan.seeds == (7, 8, 9)
        assert plan.h_star_file == str(tmp_path / "hstar.json")

    def test_bad_toml(self, tmp_path):
        path = tmp_path / "bad.toml"
        path.write_text("[problem\nkind=", encoding="utf-8")
        with pytest.raises(ConfigError):
            load_config(path)
        with pytest.raises(ConfigError):
            load_config(tmp_path / "missing.toml")


class TestExecute:
    def test_counting_law_per_seed(self):
        report = execute(parse_config(config()))
        assert report.ok
        assert [t.seed for t in report.traces] == [0, 1]
        assert all(t.total_queries == 30 * 11 for t in report.traces)
        assert [r.h for r in report.traces[0].records] != [r.h for r in report.traces[1].records]
        assert report.traces[0].config_fingerprint == report.traces[1].config_fingerprint

    def test_full_block_traces_differ_across_seeds(self):
        # com b = d o estimador não sorteia nada: só o ponto inicial separa as sementes
        plan = parse_config(config(
            run={"max_iters": 10, "seeds": [0, 1, 2]},
            solver=[{"algorithm": "zob_gda", "block_size": "full", "alpha": 0.1, "beta": 0.05}],
        ))
        hs = [tuple(r.h for r in t.records) for t in execute(plan).traces]
        assert len(set(hs)) == 3

    def test_default_init_repeats_across_seeds(self):
        plan = parse_config(config(
            run={"max_iters": 10, "seeds": [0, 1], "init": "default"},
            solver=[{"algorithm": "zob_gda", "block_size": "full", "alpha": 0.1, "beta": 0.05}],
        ))
        a, b = execute(plan).traces
        assert [r.h for r in a.records] == [r.h for r in b.records]

    def test_deterministic_bytes(self, tmp_path):
        plan = parse_config(config())
        a = emit_traces_csv(execute(plan).traces, tmp_path / "a.csv")
        b = emit_traces_csv(execute(plan).traces, tmp_path / "b.csv")
        assert a.read_bytes() == b.read_bytes()

    def test_parallel_matches_serial(self, tmp_path):
        plan = parse_config(config(solver=[
            {"algorithm": "zob_gda", "block_size": 10, "alpha": 0.1, "beta": 0.05},
            {"algorithm": "rge_gda", "alpha": 0.01, "beta": 0.05},
        ]))
        serial = emit_traces_csv(execute(plan, jobs=1).traces, tmp_path / "s.csv")
        parallel = emit_traces_csv(execute(plan, jobs=2).traces, tmp_path / "p.csv")
        assert serial.read_bytes() == parallel.read_bytes()

    def test_noise_reseeded_per_seed(self):
        plan = parse_config(config(noise={"constraint_std": 0.1, "seed": 50}))
        p0, p1 = runner.cell_problem(plan, 0), runner.cell_problem(plan, 1)
        assert p0.noise.rng_seed == 50 and p1.noise.rng_seed == 51
        assert p0.evaluate(np.zeros(20))[1][0] != p1.evaluate(np.zeros(20))[1][0]

    def test_failures_recorded(self, monkeypatch):
        def boom(cell, h_star=None):
            raise RunFailedError("falhou", 3)

        monkeypatch.setattr(runner, "run_cell", boom)
        report = execute(parse_config(config()))
        assert not report.ok
        assert [f.seed for f in report.failures] == [0, 1]
        assert report.failures[0].k == 3

    def test_theory_mode_runs(self):
        plan = parse_config(config(
            problem={"dim": 6},
            run={"max_iters": 10, "seeds": [0]},
            solver=[{"algorithm": "zob_sgda", "block_size": 3, "theory": True, "lipschitz": 1.0}],
        ))
        report = execute(plan)
        assert report.ok
        assert report.traces[0].total_queries == 40


class TestTables:
    def test_empty_is_header_only(self, tmp_path):
        path = emit_csv([], tmp_path / "t.csv")
        assert path.read_text().strip() == ",".join(TRACE_COLUMNS)

    def test_rows_include_initial_record(self, tmp_path):
        plan = parse_config(config(run={"max_iters": 3, "seeds": [0]}))
        df = read_traces_csv(emit_csv(execute(plan).traces, tmp_path / "t.csv"))
        assert list(df["k"]) == [0, 1, 2, 3]
        assert list(df.columns) == TRACE_COLUMNS

    def test_round_trip_exact(self, tmp_path):
        traces = execute(parse_config(config())).traces
        path = emit_traces_csv(traces, tmp_path / "traces.csv")
        back = read_traces_csv(tmp_path)
        expected = traces_frame(traces)
        for col in ("h", "violation", "g_norm", "rel_error"):
            assert_array_equal(back[col].to_numpy(), expected[col].to_numpy())
        assert back["moreau_norm"].isna().all()
        assert path.name == "traces.csv"

    def test_seed_major_order(self):
        traces = [_trace(1, [(0.5, 0.0)]), _trace(0, [(0.5, 0.0)])]
        assert list(traces_frame(traces)["seed"]) == [0, 1]

    def test_summary_nan_sentinel(self, tmp_path):
        rows = [SummaryRow("zob_gda", 10, 0.001, math.nan, math.nan, 0.0)]
        path = emit_summary_csv(rows, tmp_path / "summary.csv")
        assert "NaN,NaN" in path.read_text()


def _trace(seed, points, b=10, algorithm="zob_gda"):
    """points: (rel_error, violation) por iteração, (b+1) consultas cada."""
    records = [
        TraceRecord(k=k, queries_cum=k * (b + 1), h=1.0 + rel, max_violation=viol, g_norm=0.1, rel_error=rel)
        for k, (rel, viol) in enumerate(points)
    ]
    return RunTrace(records=records, config_fingerprint="x", seed=seed, algorithm=algorithm, block_size=b)


class TestSummarize:
    def test_first_feasible_hit(self):
        traces = [
            _trace(0, [(0.5, 0.1), (0.05, 0.2), (0.05, -0.1), (0.001, -0.1)]),
            _trace(1, [(0.5, 0.1), (0.2, 0.0), (0.08, 0.0), (0.02, 0.0)]),
        ]
        rows = {r.target_rel_error: r for r in summarize(traces, [0.1, 0.01, 0.0001, math.inf])}
        assert rows[0.1].mean_iterations == pytest.approx(2.0)
        assert rows[0.1].mean_queries == pytest.approx(22.0)
        assert rows[0.1].success_fraction == 1.0
        assert rows[0.01].mean_iterations == 3.0
        assert rows[0.01].success_fraction == 0.5
        assert math.isnan(rows[0.0001].mean_iterations)
        assert math.isnan(rows[0.0001].mean_queries)
        assert rows[0.0001].success_fraction == 0.0
        assert rows[math.inf].mean_iterations == pytest.approx(1.5)

    def test_query_ratio(self):
        traces = [_trace(s, [(0.5, 0.1), (0.05, 0.0), (0.01, -1.0)]) for s in range(4)]
        row = summarize(traces, [0.1])[0]
        assert row.mean_queries == pytest.approx(11 * row.mean_iterations, rel=1e-9)

    def test_missing_relative_error(self):
        records = [TraceRecord(k=0, queries_cum=0, h=1.0, max_violation=0.0, g_norm=None)]
        trace = RunTrace(records=records, config_fingerprint="x", seed=0, algorithm="zob_gda", block_size=1)
        with pytest.raises(MissingFixtureError):
            summarize([trace], [0.1])

    def test_from_frame(self):
        df = pd.DataFrame([row for t in [_trace(0, [(0.5, 0.1), (0.05, -0.1)])] for row in t.rows()])
        rows = summarize_frame(df, [0.1])
        assert rows[0].mean_iterations == 1.0
        assert rows[0].block_size == 10


class TestHStar:
    def test_quad_ball_reference_recovered(self, tmp_path):
        plan = parse_config(config(
            problem={"dim": 4, "seed": 2},
            run={"max_iters": 50, "seeds": [0]},
            hstar={"budget_factor": 2},
            solver=SMALL_SOLVER,
        ))
        fixture = compute_hstar(plan)
        assert fixture.h_star == pytest.approx(0.5, rel=1e-6)
        path = save_hstar(fixture, tmp_path / "hstar.json")
        assert load_hstar(path, plan.problem).h_star == fixture.h_star

    def test_missing_or_mismatched_fixture(self, tmp_path):
        with pytest.raises(MissingFixtureError):
            load_hstar(tmp_path / "nope.json")
        plan = parse_config(config(
            problem={"dim": 3}, run={"max_iters": 5, "seeds": [0]}, hstar={"budget_factor": 1}, solver=SMALL_SOLVER,
        ))
        path = save_hstar(compute_hstar(plan), tmp_path / "hstar.json")
        with pytest.raises(MissingFixtureError):
            load_hstar(path, ProblemSpec(kind="quad_ball", dim=4, seed=0))

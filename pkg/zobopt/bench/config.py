# -*- coding: utf-8 -*-
from __future__ import annotations

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from ..algorithms import Algorithm, ProblemBounds, SolverConfig, schedule_defaults
from ..errors import ConfigError, InvalidRadiusError
from ..estimators import NOISE_FREE_PRESET, RadiusSchedule
from ..problems import PROBLEM_BUILDERS, OracleProblem, build_problem
from ..utils import fingerprint

# ===========================
# Gramática (chaves aceitas por seção)
# ===========================
SECTION_KEYS: Dict[str, set] = {
    "problem": {"kind", "dim", "seed"},
    "noise": {"objective_std", "constraint_std", "seed"},
    "run": {"max_iters", "seeds", "seed_count", "seed_start", "init", "project_x", "h_star", "h_star_file"},
    "radius": {"r0", "decay_exponent", "cap", "auto_rescale", "horizon"},
    "metrics": {"stride", "moreau", "lipschitz", "fallback_cge"},
    "output": {"dir"},
    "hstar": {"budget_factor", "alpha", "beta", "p", "gamma"},
}
SOLVER_KEYS = {
    "algorithm", "block_size", "alpha", "beta", "beta_ratio", "p", "gamma",
    "theory", "lipschitz", "direction", "label",
}
REQUIRED_SECTIONS = ("problem", "run")

SGDA_P_DEFAULT = 10.0
SGDA_GAMMA_DEFAULT = 0.3


@dataclass(frozen=True)
class ProblemSpec:
    kind: str
    dim: int
    seed: int = 0

    def build(self) -> OracleProblem:
        return build_problem(self.kind, self.dim, self.seed)


@dataclass(frozen=True)
class NoiseSettings:
    objective_std: float = 0.0
    constraint_std: float = 0.0
    seed: int = 0


@dataclass(frozen=True)
class RadiusSpec:
    r0: float = NOISE_FREE_PRESET["r0"]
    decay_exponent: float = NOISE_FREE_PRESET["decay_exponent"]
    cap: float = NOISE_FREE_PRESET["cap"]
    auto_rescale: bool = True
    horizon: Optional[int] = None

    def schedule(self, block_size: int, K: int) -> RadiusSchedule:
        horizon = K if self.horizon is None else int(self.horizon)
        if horizon < K:
            raise ConfigError(
                f"horizonte dos raios ({horizon}) menor que max_iters={K}: "
                "a condição Σ_(k<=K) r_k² <= 1/b precisa valer até K."
            )
        params = dict(r0=self.r0, decay_exponent=self.decay_exponent, cap=self.cap, block_size=block_size, horizon=horizon)
        try:
            if self.auto_rescale:
                return RadiusSchedule.auto(**params)
            return RadiusSchedule(**params)
        except InvalidRadiusError as e:
            raise ConfigError(f"raios inválidos: {e}") from e


@dataclass(frozen=True)
class MetricsSpec:
    stride: int = 10
    moreau: bool = False
    lipschitz: Optional[float] = None
    fallback_cge: bool = True


@dataclass(frozen=True)
class HStarSpec:
    budget_factor: int = 10
    alpha: Optional[float] = None
    beta: Optional[float] = None
    p: float = 1.0
    gamma: float = 0.5


@dataclass(frozen=True)
class SolverEntry:
    algorithm: Algorithm
    block_size: int
    alpha: Optional[float] = None
    beta: Optional[float] = None
    p: float = 0.0
    gamma: float = 1.0
    theory: bool = False
    lipschitz: Optional[float] = None
    direction: str = "gaussian"
    label: str = ""

    @property
    def name(self) -> str:
        return self.label or f"{self.algorithm.value}-b{self.block_size}"


@dataclass(frozen=True)
class RunCell:
    """Uma célula (solver, semente) do plano; autocontida e serializável."""

    plan: "ExperimentPlan"
    solver_index: int
    seed: int

    @property
    def entry(self) -> SolverEntry:
        return self.plan.solvers[self.solver_index]


@dataclass(frozen=True)
class ExperimentPlan:
    problem: ProblemSpec
    solvers: Tuple[SolverEntry, ...]
    seeds: Tuple[int, ...]
    max_iters: int
    out_dir: str
    init: str = "random"
    project_x: bool = False
    noise: Optional[NoiseSettings] = None
    radius: RadiusSpec = field(default_factory=RadiusSpec)
    metrics: MetricsSpec = field(default_factory=MetricsSpec)
    hstar: HStarSpec = field(default_factory=HStarSpec)
    h_star: Optional[float] = None
    h_star_file: Optional[str] = None

    def cells(self) -> List[RunCell]:
        """Ordem solver-major, semente-minor."""
        return [RunCell(self, i, s) for i in range(len(self.solvers)) for s in self.seeds]

    def with_overrides(
        self,
        seed_offset: int = 0,
        theory: bool = False,
        out_dir: Optional[str] = None,
    ) -> "ExperimentPlan":
        solvers = tuple(replace(e, theory=True) for e in self.solvers) if theory else self.solvers
        return replace(
            self,
            seeds=tuple(int(s) + int(seed_offset) for s in self.seeds),
            solvers=solvers,
            out_dir=out_dir or self.out_dir,
        )

    def solver_config(self, entry: SolverEntry, seed: int, L: Optional[float] = None) -> SolverConfig:
        b = entry.block_size if entry.algorithm.is_block else 1
        radius = self.radius.schedule(b, self.max_iters)
        if entry.theory:
            if L is None:
                raise ConfigError(f"{entry.name}: modo teoria exige L (lipschitz) ou sondagem.")
            cfg = schedule_defaults(
                ProblemBounds(L=L),
                self.max_iters,
                b,
                entry.algorithm,
                dim_x=self.problem.dim,
                seed=seed,
                radius=radius,
                project_x=self.project_x,
            )
            return replace(cfg, direction_law=entry.direction)
        return SolverConfig(
            algorithm=entry.algorithm,
            alpha=entry.alpha,
            beta=entry.beta,
            radius=radius,
            block_size=b,
            max_iters=self.max_iters,
            gamma=entry.gamma,
            p=entry.p,
            seed=seed,
            project_x=self.project_x,
            direction_law=entry.direction,
        )

    def fingerprint_for(self, entry: SolverEntry) -> str:
        noise = asdict(self.noise) if self.noise else None
        if noise:
            noise.pop("seed")
        payload = {
            "problem": asdict(self.problem),
            "solver": {**asdict(entry), "algorithm": entry.algorithm.value},
            "max_iters": self.max_iters,
            "init": self.init,
            "project_x": self.project_x,
            "radius": asdict(self.radius),
            "noise": noise,
        }
        return fingerprint(payload)


# ===========================
# Leitura e validação
# ===========================
def _unknown(section: str, data: Dict[str, Any], allowed: set) -> List[str]:
    return [f"{section}.{k}" for k in data if k not in allowed]


def _solver_entry(raw: Dict[str, Any], index: int, dim: int) -> SolverEntry:
    where = f"solver[{index}]"
    try:
        algorithm = Algorithm(str(raw.get("algorithm", "")).lower())
    except ValueError:
        raise ConfigError(f"{where}: algoritmo inválido {raw.get('algorithm')!r} (opções: {[a.value for a in Algorithm]}).")

    b_raw = raw.get("block_size", 1)
    b = dim if isinstance(b_raw, str) and b_raw.lower() in ("full", "d") else b_raw
    if not isinstance(b, int) or isinstance(b, bool) or not 1 <= b <= dim:
        raise ConfigError(f"{where}: block_size={b_raw!r} viola a regra de bloco válido 1 <= b <= d (d={dim}).")

    theory = bool(raw.get("theory", False))
    alpha = raw.get("alpha")
    beta = raw.get("beta")
    if beta is None and "beta_ratio" in raw and alpha is not None:
        beta = float(raw["beta_ratio"]) * float(alpha)
    if not theory and (alpha is None or beta is None):
        raise ConfigError(f"{where}: alpha e beta (ou beta_ratio) são obrigatórios fora do modo teoria.")

    sgda = algorithm is Algorithm.ZOB_SGDA
    return SolverEntry(
        algorithm=algorithm,
        block_size=int(b),
        alpha=None if alpha is None else float(alpha),
        beta=None if beta is None else float(beta),
        p=float(raw.get("p", SGDA_P_DEFAULT if sgda else 0.0)),
        gamma=float(raw.get("gamma", SGDA_GAMMA_DEFAULT if sgda else 1.0)),
        theory=theory,
        lipschitz=None if raw.get("lipschitz") is None else float(raw["lipschitz"]),
        direction=str(raw.get("direction", "gaussian")),
        label=str(raw.get("label", "")),
    )


def parse_config(data: Dict[str, Any], base_dir: Union[str, Path, None] = None) -> ExperimentPlan:
    """Valida um dicionário já lido do TOML e monta o plano."""
    unknown = [k for k in data if k not in SECTION_KEYS and k != "solver"]
    for name, allowed in SECTION_KEYS.items():
        section = data.get(name, {})
        if not isinstance(section, dict):
            raise ConfigError(f"[{name}] deve ser uma seção.")
        unknown += _unknown(name, section, allowed)
    solvers_raw = data.get("solver", [])
    if isinstance(solvers_raw, dict):
        solvers_raw = [solvers_raw]
    for i, raw in enumerate(solvers_raw):
        unknown += _unknown(f"solver[{i}]", raw, SOLVER_KEYS)
    if unknown:
        raise ConfigError(f"chaves desconhecidas: {', '.join(unknown)}", unknown_keys=unknown)

    missing = [s for s in REQUIRED_SECTIONS if s not in data]
    if missing:
        raise ConfigError(f"seções obrigatórias ausentes: {missing}")
    if not solvers_raw:
        raise ConfigError("nenhum [[solver]] definido.")

    prob = data["problem"]
    kind = prob.get("kind")
    if kind not in PROBLEM_BUILDERS:
        raise ConfigError(f"problem.kind inválido {kind!r} (opções: {sorted(PROBLEM_BUILDERS)}).")
    dim = int(prob.get("dim", 0))
    if dim < 1:
        raise ConfigError("problem.dim deve ser >= 1.")
    problem = ProblemSpec(kind=kind, dim=dim, seed=int(prob.get("seed", 0)))

    run = data["run"]
    K = int(run.get("max_iters", -1))
    if K < 0:
        raise ConfigError("run.max_iters é obrigatório e deve ser >= 0.")
    if "seeds" in run and ("seed_count" in run or "seed_start" in run):
        raise ConfigError("use run.seeds ou run.seed_count/seed_start, não os dois.")
    if "seeds" in run:
        seeds = tuple(int(s) for s in run["seeds"])
    else:
        start = int(run.get("seed_start", 0))
        seeds = tuple(range(start, start + int(run.get("seed_count", 1))))
    if not seeds:
        raise ConfigError("run.seeds não pode ser vazio.")
    init = str(run.get("init", "random"))
    if init not in ("default", "random"):
        raise ConfigError("run.init deve ser 'default' ou 'random'.")

    noise = None
    if "noise" in data:
        n = data["noise"]
        noise = NoiseSettings(
            objective_std=float(n.get("objective_std", 0.0)),
            constraint_std=float(n.get("constraint_std", 0.0)),
            seed=int(n.get("seed", 0)),
        )
        if noise.objective_std < 0 or noise.constraint_std < 0:
            raise ConfigError("desvios-padrão de ruído devem ser >= 0.")

    radius = RadiusSpec(**data.get("radius", {}))
    metrics = MetricsSpec(**data.get("metrics", {}))
    hstar = HStarSpec(**data.get("hstar", {}))
    solvers = tuple(_solver_entry(raw, i, dim) for i, raw in enumerate(solvers_raw))
    seen: Dict[tuple, int] = {}
    for i, entry in enumerate(solvers):
        key = (entry.algorithm, entry.block_size if entry.algorithm.is_block else 1)
        if key in seen:
            raise ConfigError(
                f"solver[{i}] repete (algorithm, b) = ({key[0].value}, {key[1]}) de solver[{seen[key]}]; "
                "o resumo agrupa por esse par."
            )
        seen[key] = i

    h_star_file = run.get("h_star_file")
    if h_star_file is not None and base_dir is not None and not Path(h_star_file).is_absolute():
        h_star_file = str(Path(base_dir) / h_star_file)

    plan = ExperimentPlan(
        problem=problem,
        solvers=solvers,
        seeds=seeds,
        max_iters=K,
        out_dir=str(data.get("output", {}).get("dir", "")),
        init=init,
        project_x=bool(run.get("project_x", False)),
        noise=noise,
        radius=radius,
        metrics=metrics,
        hstar=hstar,
        h_star=None if run.get("h_star") is None else float(run["h_star"]),
        h_star_file=h_star_file,
    )
    # horizonte e Σ r² checados já na carga
    for entry in solvers:
        plan.radius.schedule(entry.block_size if entry.algorithm.is_block else 1, K)
    return plan


def load_config(path: Union[str, Path]) -> ExperimentPlan:
    path = Path(path)
    try:
        with open(path, "rb") as f:
            data = tomllib.load(f)
    except FileNotFoundError:
        raise ConfigError(f"arquivo de configuração não encontrado: {path}")
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"TOML inválido em {path}: {e}")
    return parse_config(data, base_dir=path.parent)

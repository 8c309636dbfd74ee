"""Synthetic data generation for the benchmark experiments.

Predictor blocks and noise rows are drawn from compound-symmetry Gaussians
(unit diagonal, constant off-diagonal correlation). True coefficients come
in four flavors: per-block low rank (S1), low rank plus a sparse block (S2),
globally low rank (S3), and globally sparse (S4). Draws for the design, the
coefficients and the noise use separate seeded streams, so datasets with the
same seed share their predictor and noise draws across settings and
correlation levels (common random numbers).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .core import BlockCoefficients, MultiViewDesign, ResponseMatrix, concat_design

__all__ = [
    "SETTINGS",
    "SimScenario",
    "SimDataset",
    "compound_sqrt_coeffs",
    "gen_compound_normal",
    "gen_coefficients",
    "gen_dataset",
    "scenario_to_config",
    "scenario_from_config",
    "parse_config_text",
]

SETTINGS = ("S1", "S2", "S3", "S4")

# Sub-stream tags so design, coefficients and noise never share a stream.
_STREAM_DESIGN = 0
_STREAM_COEF = 1
_STREAM_NOISE = 2


@dataclass(frozen=True)
class SimScenario:
    """One simulation cell: dimensions, correlations, coefficient setting.

    ``block_ranks`` drives S1 (and the low-rank block of S2), ``global_rank``
    drives S3, ``density`` the fraction of nonzeros in S2/S4 (defaults 0.5
    and 0.2). With ``fix_coefficients`` the truth is drawn from ``coef_seed``
    instead of ``seed`` and therefore stays the same across replicates.
    """

    n: int = 90
    q: int = 24
    block_sizes: tuple[int, ...] = (100, 100)
    rho_x: float = 0.0
    rho_eps: float = 0.0
    setting: str = "S1"
    seed: int = 0
    block_ranks: tuple[int, ...] = (4, 6)
    global_rank: int = 2
    density: float | None = None
    fix_coefficients: bool = False
    coef_seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 1 or self.q < 1:
            raise ValueError("n and q must be positive")
        if len(self.block_sizes) < 1 or any(p < 1 for p in self.block_sizes):
            raise ValueError("block_sizes must be positive")
        for name, rho in (("rho_x", self.rho_x), ("rho_eps", self.rho_eps)):
            if not 0.0 <= rho < 1.0:
                raise ValueError(f"{name} must lie in [0, 1)")
        if self.setting not in SETTINGS:
            raise ValueError(f"setting must be one of {SETTINGS}")
        if self.setting in ("S1", "S2"):
            if len(self.block_ranks) != len(self.block_sizes):
                raise ValueError("block_ranks must provide one rank per block")
            for r, p_k in zip(self.block_ranks, self.block_sizes):
                if not 1 <= r <= min(p_k, self.q):
                    raise ValueError("block ranks must lie in [1, min(p_k, q)]")
        if self.setting == "S3":
            if not 1 <= self.global_rank <= min(self.p, self.q):
                raise ValueError("global_rank must lie in [1, min(p, q)]")
        if self.density is not None and not 0.0 < self.density <= 1.0:
            raise ValueError("density must lie in (0, 1]")

    @property
    def n_blocks(self) -> int:
        return len(self.block_sizes)

    @property
    def p(self) -> int:
        return sum(self.block_sizes)

    @property
    def effective_density(self) -> float:
        if self.density is not None:
            return self.density
        return 0.5 if self.setting == "S2" else 0.2


@dataclass(frozen=True)
class SimDataset:
    """Generated design, responses, true coefficients and retained noise."""

    design: MultiViewDesign
    responses: ResponseMatrix
    truth: BlockCoefficients
    noise: np.ndarray


def compound_sqrt_coeffs(dim: int, rho: float) -> tuple[float, float]:
    """Coefficients (a, b) with a*I + b*ones the symmetric square root of the
    compound-symmetry matrix (1 - rho)*I + rho*ones."""
    if not 0.0 <= rho < 1.0:
        raise ValueError("rho must lie in [0, 1)")
    a = math.sqrt(1.0 - rho)
    b = (math.sqrt(1.0 - rho + dim * rho) - math.sqrt(1.0 - rho)) / dim
    return a, b


def gen_compound_normal(
    rows: int, dim: int, rho: float, seed: int | np.random.Generator
) -> np.ndarray:
    """Rows drawn i.i.d. from N(0, (1 - rho) I + rho ones).

    The square root of the covariance has the closed form a*I + b*ones, so a
    standard-normal draw Z maps to a*Z + b*(row sums), avoiding any dense
    factorization.
    """
    a, b = compound_sqrt_coeffs(dim, rho)
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    z = rng.standard_normal((rows, dim))
    return a * z + b * z.sum(axis=1, keepdims=True)


def _low_rank_matrix(rows: int, cols: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    left = rng.standard_normal((rows, rank))
    right = rng.standard_normal((cols, rank))
    return left @ right.T


def _sparse_matrix(rows: int, cols: int, density: float, rng: np.random.Generator) -> np.ndarray:
    count = round(density * rows * cols)
    flat = np.zeros(rows * cols)
    idx = rng.choice(rows * cols, size=count, replace=False)
    flat[idx] = rng.standard_normal(count)
    return flat.reshape(rows, cols)


def gen_coefficients(scenario: SimScenario, seed: int | np.random.Generator) -> BlockCoefficients:
    """True coefficient blocks for the scenario's setting.

    S1: every block is a low-rank factor product with the configured rank.
    S2: first block as in S1, remaining blocks sparse with an exact nonzero
        count at the configured density.
    S3: the stacked matrix is one low-rank factor product, then split.
    S4: the stacked matrix is sparse with an exact nonzero count.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    q = scenario.q
    sizes = scenario.block_sizes
    if scenario.setting == "S1":
        blocks = tuple(
            _low_rank_matrix(p_k, q, r_k, rng)
            for p_k, r_k in zip(sizes, scenario.block_ranks)
        )
        return BlockCoefficients(blocks)
    if scenario.setting == "S2":
        blocks = [_low_rank_matrix(sizes[0], q, scenario.block_ranks[0], rng)]
        for p_k in sizes[1:]:
            blocks.append(_sparse_matrix(p_k, q, scenario.effective_density, rng))
        return BlockCoefficients(tuple(blocks))
    if scenario.setting == "S3":
        full = _low_rank_matrix(scenario.p, q, scenario.global_rank, rng)
        return BlockCoefficients.from_full(full, sizes)
    full = _sparse_matrix(scenario.p, q, scenario.effective_density, rng)
    return BlockCoefficients.from_full(full, sizes)


def gen_dataset(scenario: SimScenario) -> SimDataset:
    """Simulate one dataset: responses are design times truth plus noise.

    Deterministic in the scenario (including its seed). Design, coefficient
    and noise draws use separate streams derived from the seed.
    """
    rng_x = np.random.default_rng((scenario.seed, _STREAM_DESIGN))
    blocks = tuple(
        gen_compound_normal(scenario.n, p_k, scenario.rho_x, rng_x)
        for p_k in scenario.block_sizes
    )
    design = MultiViewDesign(blocks)

    coef_seed = scenario.coef_seed if scenario.fix_coefficients else scenario.seed
    rng_b = np.random.default_rng((coef_seed, _STREAM_COEF))
    truth = gen_coefficients(scenario, rng_b)

    rng_e = np.random.default_rng((scenario.seed, _STREAM_NOISE))
    noise = gen_compound_normal(scenario.n, scenario.q, scenario.rho_eps, rng_e)

    responses = ResponseMatrix(concat_design(design) @ truth.full + noise)
    return SimDataset(design=design, responses=responses, truth=truth, noise=noise)


# ---------------------------------------------------------------------------
# Plain-text scenario serialization (key = value lines, '#' comments).

def parse_config_text(text: str) -> list[tuple[str, str]]:
    """Parse key = value lines, preserving order and repeated keys."""
    pairs: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = line.split("=", 1)
        pairs.append((key.strip(), value.strip()))
    return pairs


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (tuple, list)):
        return ",".join(_format_value(v) for v in value)
    return repr(value) if isinstance(value, float) else str(value)


def scenario_to_config(scenario: SimScenario) -> str:
    """Render a scenario as key = value text; inverse of
    :func:`scenario_from_config`."""
    lines = [
        f"n = {scenario.n}",
        f"q = {scenario.q}",
        f"p = {_format_value(scenario.block_sizes)}",
        f"rho_x = {_format_value(scenario.rho_x)}",
        f"rho_eps = {_format_value(scenario.rho_eps)}",
        f"setting = {scenario.setting}",
        f"seed = {scenario.seed}",
        f"block_ranks = {_format_value(scenario.block_ranks)}",
        f"global_rank = {scenario.global_rank}",
    ]
    if scenario.density is not None:
        lines.append(f"density = {_format_value(scenario.density)}")
    lines.append(f"fix_coefficients = {_format_value(scenario.fix_coefficients)}")
    lines.append(f"coef_seed = {scenario.coef_seed}")
    return "\n".join(lines) + "\n"


def _parse_bool(value: str) -> bool:
    low = value.lower()
    if low in ("true", "1", "yes"):
        return True
    if low in ("false", "0", "no"):
        return False
    raise ValueError(f"expected a boolean, got {value!r}")


def scenario_from_config(text: str) -> SimScenario:
    """Build a scenario from key = value text; unknown keys are rejected."""
    scenario = SimScenario()
    updates: dict = {}
    for key, value in parse_config_text(text):
        if key == "n":
            updates["n"] = int(value)
        elif key == "q":
            updates["q"] = int(value)
        elif key == "p":
            updates["block_sizes"] = tuple(int(v) for v in value.split(","))
        elif key == "rho_x":
            updates["rho_x"] = float(value)
        elif key == "rho_eps":
            updates["rho_eps"] = float(value)
        elif key == "setting":
            updates["setting"] = value
        elif key == "seed":
            updates["seed"] = int(value)
        elif key == "block_ranks":
            updates["block_ranks"] = tuple(int(v) for v in value.split(","))
        elif key == "global_rank":
            updates["global_rank"] = int(value)
        elif key == "density":
            updates["density"] = float(value)
        elif key == "fix_coefficients":
            updates["fix_coefficients"] = _parse_bool(value)
        elif key == "coef_seed":
            updates["coef_seed"] = int(value)
        else:
            raise ValueError(f"unknown scenario key {key!r}")
    return replace(scenario, **updates)

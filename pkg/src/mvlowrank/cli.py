"""Command-line interface: CSV ingestion, fitting, prediction, simulation
export and benchmark execution.

File conventions: every view is a CSV with a sample-id column followed by
feature columns; the response CSV holds the same ids and one column per
drug. Rows are aligned across files by sample id (the response file fixes
the canonical order). Matrices are written at full precision ("%.17g") so a
save/load round-trip is lossless.

Exit codes: 0 on success, 2 for input/usage errors, 3 for numerical
failures.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from .core import BlockCoefficients, MultiViewDesign, NumericalError, ResponseMatrix
from .evaluation import (
    TuningConfig,
    kfold_cv,
    render_table,
    report_to_long_csv,
    run_benchmark,
)
from .pipeline import FittedModel, fit_method, predict, training_mspe
from .simulate import SimScenario, gen_dataset, parse_config_text, scenario_to_config
from .solver import FitResult

__all__ = [
    "ViewManifest",
    "ModelArtifact",
    "load_views",
    "cmd_fit",
    "cmd_predict",
    "cmd_benchmark",
    "cmd_simulate",
    "main",
]

FLOAT_FORMAT = "%.17g"
VIEW_TYPES = ("binary", "integer", "continuous")
EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERICAL = 3


@dataclass(frozen=True)
class ViewManifest:
    """Paths and declared types of the view CSVs plus the response CSV.

    The response entry may be omitted for prediction-only manifests; the
    first view then fixes the canonical sample order.
    """

    entries: tuple[tuple[str, Path, str], ...]  # (view name, path, type)
    response: Path | None = None
    id_column: str = "sample_id"

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError("manifest declares no views")
        names = [name for name, _, _ in self.entries]
        if len(set(names)) != len(names):
            raise ValueError("view names must be unique")
        for name, path, kind in self.entries:
            if kind not in VIEW_TYPES:
                raise ValueError(
                    f"view {name!r} declares type {kind!r}; expected one of {VIEW_TYPES}"
                )
            if not Path(path).exists():
                raise ValueError(f"view file not found: {path}")
        if self.response is not None and not Path(self.response).exists():
            raise ValueError(f"response file not found: {self.response}")


def parse_manifest(path: str | Path) -> ViewManifest:
    """Read a manifest file: 'response', 'id_column' and ordered repeated
    'view = <name> <type> <path>' entries; paths are relative to the
    manifest's directory."""
    path = Path(path)
    base = path.parent
    entries: list[tuple[str, Path, str]] = []
    response: Path | None = None
    id_column = "sample_id"
    for key, value in parse_config_text(path.read_text()):
        if key == "view":
            parts = value.split()
            if len(parts) != 3:
                raise ValueError(
                    f"manifest view entry must be '<name> <type> <path>', got {value!r}"
                )
            name, kind, rel = parts
            entries.append((name, base / rel, kind))
        elif key == "response":
            response = base / value
        elif key == "id_column":
            id_column = value
        else:
            raise ValueError(f"unknown manifest key {key!r}")
    return ViewManifest(entries=tuple(entries), response=response, id_column=id_column)


def _read_table(path: Path, id_column: str) -> tuple[list[str], list[str], np.ndarray]:
    """Read one CSV; returns (ids, feature names, float matrix).

    Raises with file/row/column coordinates for non-numeric cells and names
    the file for duplicated ids.
    """
    df = pd.read_csv(path)
    if id_column not in df.columns:
        raise ValueError(f"{path}: missing id column {id_column!r}")
    ids = [str(v) for v in df[id_column].tolist()]
    dupes = pd.Series(ids).duplicated()
    if dupes.any():
        raise ValueError(
            f"{path}: duplicated sample id {ids[int(np.argmax(dupes.values))]!r}"
        )
    feats = [c for c in df.columns if c != id_column]
    if not feats:
        raise ValueError(f"{path}: no feature columns")
    values = np.empty((len(ids), len(feats)))
    for j, col in enumerate(feats):
        numeric = pd.to_numeric(df[col], errors="coerce")
        bad = numeric.isna()
        if bad.any():
            i = int(np.argmax(bad.values))
            raise ValueError(
                f"{path}: non-numeric value {df[col].iloc[i]!r} at row {i + 2} "
                f"(sample {ids[i]!r}), column {col!r}"
            )
        values[:, j] = numeric.to_numpy(dtype=float)
    return ids, feats, values


def load_views(
    manifest: ViewManifest,
) -> tuple[MultiViewDesign, ResponseMatrix | None, dict]:
    """Load and align all view CSVs against the response CSV.

    The response file's id order is canonical (the first view's order when
    no response is declared); each view must contain exactly the same set of
    ids, in any order. Returns the design, the responses (None for
    prediction-only manifests), and a metadata dict (ids, per-view feature
    names, drug names).
    """
    if manifest.response is not None:
        resp_ids, drugs, y = _read_table(Path(manifest.response), manifest.id_column)
        responses = ResponseMatrix(y)
        anchor = str(manifest.response)
    else:
        resp_ids, drugs, responses = None, [], None
        anchor = str(manifest.entries[0][1])
    order = None if resp_ids is None else {sid: i for i, sid in enumerate(resp_ids)}
    blocks = []
    features: dict[str, list[str]] = {}
    for name, path, _ in manifest.entries:
        ids, feats, values = _read_table(Path(path), manifest.id_column)
        if order is None:
            resp_ids = ids
            order = {sid: i for i, sid in enumerate(ids)}
        if set(ids) != set(order):
            missing = sorted(set(order) - set(ids))
            extra = sorted(set(ids) - set(order))
            detail = []
            if missing:
                detail.append(f"missing id {missing[0]!r}")
            if extra:
                detail.append(f"unexpected id {extra[0]!r}")
            raise ValueError(f"{path}: sample ids disagree with {anchor} "
                             f"({'; '.join(detail)})")
        perm = np.argsort([order[sid] for sid in ids], kind="stable")
        blocks.append(values[perm])
        features[name] = feats
    design = MultiViewDesign(tuple(blocks))
    meta = {
        "ids": resp_ids,
        "features": features,
        "drugs": drugs,
        "view_names": [name for name, _, _ in manifest.entries],
        "view_types": {name: kind for name, _, kind in manifest.entries},
        "id_column": manifest.id_column,
    }
    return design, responses, meta


@dataclass(frozen=True)
class ModelArtifact:
    """Everything needed to re-apply a fitted model to new CSVs."""

    method: str
    hyper: float | int
    alpha: float | None
    coefficients: BlockCoefficients
    intercept: np.ndarray
    x_means: np.ndarray
    y_means: np.ndarray
    weights: np.ndarray | None
    block_ranks: tuple[int, ...]
    converged: bool
    training_mspe: float
    view_names: tuple[str, ...]
    view_types: dict
    features: dict
    drugs: tuple[str, ...]
    id_column: str

    def save(self, path: str | Path) -> None:
        payload = {
            "format": "mvlowrank-artifact",
            "version": 1,
            "method": self.method,
            "hyper": self.hyper,
            "alpha": self.alpha,
            "intercept": self.intercept.tolist(),
            "x_means": self.x_means.tolist(),
            "y_means": self.y_means.tolist(),
            "weights": None if self.weights is None else self.weights.tolist(),
            "block_ranks": list(self.block_ranks),
            "converged": self.converged,
            "training_mspe": self.training_mspe,
            "view_names": list(self.view_names),
            "view_types": dict(self.view_types),
            "features": {k: list(v) for k, v in self.features.items()},
            "drugs": list(self.drugs),
            "id_column": self.id_column,
            "coefficients": [b.tolist() for b in self.coefficients.blocks],
        }
        Path(path).write_text(json.dumps(payload))

    @classmethod
    def load(cls, path: str | Path) -> "ModelArtifact":
        payload = json.loads(Path(path).read_text())
        if payload.get("format") != "mvlowrank-artifact":
            raise ValueError(f"{path}: not a model artifact file")
        return cls(
            method=payload["method"],
            hyper=payload["hyper"],
            alpha=payload["alpha"],
            coefficients=BlockCoefficients(
                tuple(np.asarray(b, dtype=float) for b in payload["coefficients"])
            ),
            intercept=np.asarray(payload["intercept"], dtype=float),
            x_means=np.asarray(payload["x_means"], dtype=float),
            y_means=np.asarray(payload["y_means"], dtype=float),
            weights=None
            if payload["weights"] is None
            else np.asarray(payload["weights"], dtype=float),
            block_ranks=tuple(payload["block_ranks"]),
            converged=payload["converged"],
            training_mspe=payload["training_mspe"],
            view_names=tuple(payload["view_names"]),
            view_types=payload["view_types"],
            features=payload["features"],
            drugs=tuple(payload["drugs"]),
            id_column=payload["id_column"],
        )

    def as_model(self) -> FittedModel:
        return FittedModel(
            method=self.method,
            coefficients=self.coefficients,
            intercept=self.intercept,
            x_means=self.x_means,
            y_means=self.y_means,
            hyper=self.hyper,
            fit=FitResult(
                coefficients=self.coefficients,
                objective_trace=np.asarray([float("nan")]),
                iterations=0,
                converged=self.converged,
                block_ranks=self.block_ranks,
            ),
            weights=self.weights,
        )


def _tuning_from_args(args) -> TuningConfig:
    base = TuningConfig()
    return TuningConfig(
        alpha=args.alpha,
        folds=args.folds,
        center=not args.no_center,
        clr_grid_size=args.grid_size or base.clr_grid_size,
        clr_grid_ratio=args.grid_ratio or base.clr_grid_ratio,
        enet_grid_size=args.grid_size or base.enet_grid_size,
        enet_grid_ratio=args.grid_ratio or base.enet_grid_ratio,
        glr_max_rank=args.max_rank,
        clr_rel_tol=args.rel_tol,
        clr_max_iter=args.max_iter,
        enet_rel_tol=args.rel_tol,
        enet_max_iter=args.max_iter,
    )


def cmd_fit(args) -> int:
    manifest = parse_manifest(args.manifest)
    design, responses, meta = load_views(manifest)
    if responses is None:
        raise ValueError("fitting requires a 'response' entry in the manifest")
    tuning = _tuning_from_args(args)

    fixed = args.lam if args.method in ("clr", "enet") else args.rank
    note = ""
    if fixed is None:
        seed = _resolve_seed(args.seed)
        cv = kfold_cv(
            design,
            responses,
            args.method,
            folds=args.folds,
            seed=seed,
            tuning=tuning,
        )
        hyper = cv.selected
        note = f"selected by {args.folds}-fold CV"
        if cv.at_boundary:
            note += " (warning: selection hit the grid boundary)"
    else:
        hyper = float(fixed) if args.method in ("clr", "enet") else int(fixed)
        note = "fixed by flag"

    model = fit_method(
        args.method,
        design,
        responses,
        hyper,
        alpha=args.alpha,
        center=not args.no_center,
        rel_tol=args.rel_tol,
        max_iter=args.max_iter,
    )
    mspe_train = training_mspe(model, design, responses)

    artifact = ModelArtifact(
        method=args.method,
        hyper=model.hyper,
        alpha=args.alpha if args.method == "enet" else None,
        coefficients=model.coefficients,
        intercept=model.intercept,
        x_means=model.x_means,
        y_means=model.y_means,
        weights=model.weights,
        block_ranks=model.fit.block_ranks,
        converged=model.fit.converged,
        training_mspe=mspe_train,
        view_names=tuple(meta["view_names"]),
        view_types=meta["view_types"],
        features=meta["features"],
        drugs=tuple(meta["drugs"]),
        id_column=meta["id_column"],
    )
    out = Path(args.out)
    artifact.save(out)

    hyper_name = "lambda" if args.method in ("clr", "enet") else "rank"
    lines = [
        f"method: {args.method}",
        f"{hyper_name}: {model.hyper} ({note})",
        "block ranks: "
        + ", ".join(
            f"{name}={r}" for name, r in zip(meta["view_names"], model.fit.block_ranks)
        ),
        f"training MSPE (in-sample): {mspe_train:.6g}",
        f"artifact: {out}",
    ]
    if not model.fit.converged:
        lines.append(
            "warning: solver stopped at max_iter without meeting the "
            "convergence tolerance"
        )
    summary = "\n".join(lines) + "\n"
    out.with_suffix(out.suffix + ".summary.txt").write_text(summary)
    sys.stdout.write(summary)
    return EXIT_OK


def cmd_predict(args) -> int:
    artifact = ModelArtifact.load(args.artifact)
    manifest = parse_manifest(args.manifest)
    design, _responses_unused, meta = load_views(manifest)

    if tuple(meta["view_names"]) != artifact.view_names:
        raise ValueError(
            f"manifest views {meta['view_names']} do not match the artifact's "
            f"{list(artifact.view_names)}"
        )
    for name in artifact.view_names:
        got = list(meta["features"][name])
        want = list(artifact.features[name])
        if got != want:
            missing = [f for f in want if f not in got]
            extra = [f for f in got if f not in want]
            raise ValueError(
                f"view {name!r} feature mismatch: missing {missing[:5]}, "
                f"extra {extra[:5]}"
            )

    pred = predict(artifact.as_model(), design)
    frame = pd.DataFrame(pred, columns=list(artifact.drugs))
    frame.insert(0, artifact.id_column, meta["ids"])
    frame.to_csv(args.out, index=False, float_format=FLOAT_FORMAT)
    sys.stdout.write(f"wrote {pred.shape[0]} x {pred.shape[1]} predictions to {args.out}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Benchmark configuration.

_BENCH_DEFAULTS = {
    "n": 90,
    "q": 24,
    "p": (100, 100),
    "settings": ("S1", "S2", "S3", "S4"),
    "rho_eps_grid": (0.0, 0.3, 0.6),
    "rho_x_grid": (0.3, 0.6, 0.9),
    "rho_x_base": 0.0,
    "rho_eps_base": 0.0,
    "block_ranks": (4, 6),
    "global_rank": 2,
    "density_s2": 0.5,
    "density_s4": 0.2,
    "replicates": 30,
    "seed": None,
    "methods": ("clr", "glr", "enet"),
    "fix_coefficients": False,
}


def parse_benchmark_config(text: str) -> tuple[dict, TuningConfig]:
    """Benchmark grid description plus tuning knobs from key = value text."""
    cfg = dict(_BENCH_DEFAULTS)
    tuning_kwargs: dict = {}
    tuning_fields = {f.name for f in dataclasses.fields(TuningConfig)}
    for key, value in parse_config_text(text):
        if key in ("n", "q", "replicates", "seed", "global_rank"):
            cfg[key] = int(value)
        elif key == "p":
            cfg["p"] = tuple(int(v) for v in value.split(","))
        elif key == "block_ranks":
            cfg["block_ranks"] = tuple(int(v) for v in value.split(","))
        elif key in ("rho_eps_grid", "rho_x_grid"):
            cfg[key] = tuple(float(v) for v in value.split(","))
        elif key in ("rho_x_base", "rho_eps_base", "density_s2", "density_s4"):
            cfg[key] = float(value)
        elif key == "settings":
            cfg["settings"] = tuple(v.strip() for v in value.split(","))
        elif key == "methods":
            cfg["methods"] = tuple(v.strip() for v in value.split(","))
        elif key == "fix_coefficients":
            cfg["fix_coefficients"] = value.lower() in ("true", "1", "yes")
        elif key in ("folds", "glr_max_rank") and key in tuning_fields:
            tuning_kwargs[key] = int(value)
        elif key in tuning_fields:
            field_type = TuningConfig.__dataclass_fields__[key].type
            if key == "center":
                tuning_kwargs[key] = value.lower() in ("true", "1", "yes")
            elif "int" in str(field_type):
                tuning_kwargs[key] = int(value)
            else:
                tuning_kwargs[key] = float(value)
        else:
            raise ValueError(f"unknown benchmark config key {key!r}")
    return cfg, TuningConfig(**tuning_kwargs)


def build_scenarios(cfg: dict) -> list[SimScenario]:
    """The full benchmark grid: every setting at every correlation level of
    both regimes (noise correlation varied at the base predictor
    correlation, and vice versa)."""
    common = dict(
        n=cfg["n"],
        q=cfg["q"],
        block_sizes=cfg["p"],
        block_ranks=cfg["block_ranks"],
        global_rank=cfg["global_rank"],
        fix_coefficients=cfg["fix_coefficients"],
    )
    scenarios = []
    for setting in cfg["settings"]:
        density = None
        if setting == "S2":
            density = cfg["density_s2"]
        elif setting == "S4":
            density = cfg["density_s4"]
        for rho_eps in cfg["rho_eps_grid"]:
            scenarios.append(
                SimScenario(
                    setting=setting,
                    rho_x=cfg["rho_x_base"],
                    rho_eps=rho_eps,
                    density=density,
                    **common,
                )
            )
        for rho_x in cfg["rho_x_grid"]:
            scenarios.append(
                SimScenario(
                    setting=setting,
                    rho_x=rho_x,
                    rho_eps=cfg["rho_eps_base"],
                    density=density,
                    **common,
                )
            )
    return scenarios


def cmd_benchmark(args) -> int:
    text = Path(args.config).read_text() if args.config else ""
    cfg, tuning = parse_benchmark_config(text)
    if args.replicates is not None:
        cfg["replicates"] = args.replicates
    if args.seed is not None:
        cfg["seed"] = args.seed
    if cfg["seed"] is None:
        cfg["seed"] = _resolve_seed(None)
    if args.folds is not None:
        tuning = dataclasses.replace(tuning, folds=args.folds)

    scenarios = build_scenarios(cfg)
    report = run_benchmark(
        scenarios,
        list(cfg["methods"]),
        replicates=cfg["replicates"],
        seed=cfg["seed"],
        tuning=tuning,
        threads=args.threads,
    )

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "benchmark_long.csv").write_text(report_to_long_csv(report))

    sections = []
    metric_titles = {
        "mspe_in": "in-sample MSPE (protocol of the reference tables)",
        "msee": "MSEE",
        "mspe_oos": "out-of-sample MSPE (fresh draw)",
    }
    for metric, title in metric_titles.items():
        sections.append(
            render_table(
                report,
                metric,
                vary="rho_eps",
                fixed_value=cfg["rho_x_base"],
                title=f"{title}; rho_x = {cfg['rho_x_base']:g}, rho_eps varied",
            )
        )
        sections.append(
            render_table(
                report,
                metric,
                vary="rho_x",
                fixed_value=cfg["rho_eps_base"],
                title=f"{title}; rho_eps = {cfg['rho_eps_base']:g}, rho_x varied",
            )
        )
    (out / "tables.txt").write_text("\n".join(sections))
    sys.stdout.write(
        f"benchmark finished: {len(scenarios)} scenarios x {cfg['replicates']} "
        f"replicates; results in {out}\n"
    )
    failures = [c for c in report.cells if c.status != "ok"]
    for cell in failures:
        sys.stdout.write(
            f"warning: cell ({cell.setting}, rho_x={cell.rho_x:g}, "
            f"rho_eps={cell.rho_eps:g}, {cell.method}): {cell.status}\n"
        )
    return EXIT_OK


def cmd_simulate(args) -> int:
    if args.config:
        from .simulate import scenario_from_config

        scenario = scenario_from_config(Path(args.config).read_text())
    else:
        scenario = SimScenario()
    overrides = {}
    if args.setting:
        overrides["setting"] = args.setting
    if args.rho_x is not None:
        overrides["rho_x"] = args.rho_x
    if args.rho_eps is not None:
        overrides["rho_eps"] = args.rho_eps
    if args.seed is not None:
        overrides["seed"] = args.seed
    elif args.config is None:
        overrides["seed"] = _resolve_seed(None)
    if overrides:
        scenario = dataclasses.replace(scenario, **overrides)

    ds = gen_dataset(scenario)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    n = scenario.n
    ids = [f"s{i + 1:04d}" for i in range(n)]
    manifest_lines = ["response = responses.csv", "id_column = sample_id"]
    for k, block in enumerate(ds.design.blocks):
        name = f"view{k + 1}"
        feats = [f"{name}_f{j + 1:04d}" for j in range(block.shape[1])]
        frame = pd.DataFrame(block, columns=feats)
        frame.insert(0, "sample_id", ids)
        frame.to_csv(out / f"{name}.csv", index=False, float_format=FLOAT_FORMAT)
        manifest_lines.append(f"view = {name} continuous {name}.csv")

    drugs = [f"drug{j + 1:03d}" for j in range(scenario.q)]
    frame = pd.DataFrame(ds.responses.values, columns=drugs)
    frame.insert(0, "sample_id", ids)
    frame.to_csv(out / "responses.csv", index=False, float_format=FLOAT_FORMAT)

    truth = pd.DataFrame(ds.truth.full, columns=drugs)
    truth.to_csv(out / "truth.csv", index=False, float_format=FLOAT_FORMAT)

    (out / "manifest.txt").write_text("\n".join(manifest_lines) + "\n")
    (out / "scenario.txt").write_text(scenario_to_config(scenario))
    sys.stdout.write(f"wrote simulated dataset ({scenario.setting}) to {out}\n")
    return EXIT_OK


def _resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    generated = int.from_bytes(os.urandom(4), "big")
    sys.stdout.write(f"no --seed given; using generated seed {generated}\n")
    return generated


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mvlowrank",
        description="Multi-view multi-response regression with blockwise "
        "nuclear-norm penalties (exit codes: 0 ok, 2 input error, "
        "3 numerical failure)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="fit a model from a view manifest")
    fit.add_argument("--manifest", required=True)
    fit.add_argument("--method", choices=("clr", "glr", "enet"), default="clr")
    fit.add_argument("--lambda", dest="lam", type=float, default=None,
                     help="fix the penalty level (clr/enet); skips CV")
    fit.add_argument("--rank", type=int, default=None,
                     help="fix the rank (glr); skips CV")
    fit.add_argument("--alpha", type=float, default=0.2,
                     help="elastic-net mixing weight (default 0.2)")
    fit.add_argument("--folds", type=int, default=10)
    fit.add_argument("--seed", type=int, default=None)
    fit.add_argument("--grid-size", type=int, default=None)
    fit.add_argument("--grid-ratio", type=float, default=None)
    fit.add_argument("--max-rank", type=int, default=25)
    fit.add_argument("--max-iter", type=int, default=5000)
    fit.add_argument("--rel-tol", type=float, default=1e-6)
    fit.add_argument("--no-center", action="store_true",
                     help="fit without column centering (no intercept)")
    fit.add_argument("--out", default="model.json")
    fit.set_defaults(func=cmd_fit)

    pred = sub.add_parser("predict", help="apply a stored model to new data")
    pred.add_argument("--artifact", required=True)
    pred.add_argument("--manifest", required=True)
    pred.add_argument("--out", default="predictions.csv")
    pred.set_defaults(func=cmd_predict)

    bench = sub.add_parser("benchmark", help="run the simulation benchmark grid")
    bench.add_argument("--config", default=None,
                       help="key = value config; defaults reproduce the full grid")
    bench.add_argument("--out", default="benchmark_out")
    bench.add_argument("--replicates", type=int, default=None)
    bench.add_argument("--seed", type=int, default=None)
    bench.add_argument("--folds", type=int, default=None)
    bench.add_argument("--threads", type=int, default=1)
    bench.set_defaults(func=cmd_benchmark)

    sim = sub.add_parser("simulate", help="write one simulated dataset as CSVs")
    sim.add_argument("--config", default=None, help="scenario config file")
    sim.add_argument("--setting", choices=("S1", "S2", "S3", "S4"), default=None)
    sim.add_argument("--rho-x", type=float, default=None)
    sim.add_argument("--rho-eps", type=float, default=None)
    sim.add_argument("--seed", type=int, default=None)
    sim.add_argument("--out", default="simulated")
    sim.set_defaults(func=cmd_simulate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NumericalError as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERICAL
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

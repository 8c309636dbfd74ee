"""Comparison estimators: reduced-rank regression and the elastic net.

Reduced-rank regression restricts the whole coefficient matrix to a hard
rank bound and is solved in closed form from the minimum-norm least-squares
fit. The elastic net applies an entrywise l1 penalty plus a ridge term,
solved by cyclic coordinate descent; the problem separates across response
columns, which all share the same tuning parameters.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .core import (
    DEFAULT_RANK_TOL,
    BlockCoefficients,
    MultiViewDesign,
    ResponseMatrix,
    concat_design,
    numeric_rank,
)
from .solver import FitResult

__all__ = [
    "RrrConfig",
    "EnetConfig",
    "fit_rrr",
    "rrr_path",
    "fit_enet",
    "enet_lambda_max",
]

# Relative singular-value cutoff for the pseudo-inverse underlying the
# reduced-rank fit; keeps the minimum-norm solution deterministic when p > n.
PINV_CUTOFF = 1e-10


@dataclass(frozen=True)
class RrrConfig:
    """Rank bound for reduced-rank regression.

    ``rank`` fixes the fitted rank directly; leave it unset to select a rank
    externally (e.g. by cross-validation over ``1..max_rank``).
    """

    max_rank: int = 25
    rank: int | None = None

    def __post_init__(self) -> None:
        if self.max_rank < 1:
            raise ValueError("max_rank must be at least 1")
        if self.rank is not None and self.rank < 1:
            raise ValueError("rank must be at least 1")


@dataclass(frozen=True)
class EnetConfig:
    """Elastic-net hyperparameters: mixing weight alpha in [0, 1] and
    penalty level lam; the l1 share is alpha, the ridge share 1 - alpha."""

    lam: float
    alpha: float = 0.2
    max_iter: int = 5000
    rel_tol: float = 1e-6

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")
        if self.lam < 0:
            raise ValueError("lam must be non-negative")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.rel_tol <= 0:
            raise ValueError("rel_tol must be positive")


def _min_norm_lstsq(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Minimum-norm least-squares coefficients via a thin SVD with a
    relative singular-value cutoff."""
    u, s, vt = np.linalg.svd(x, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        raise ValueError("design is identically zero")
    keep = s > PINV_CUTOFF * s[0]
    u = u[:, keep]
    s = s[keep]
    vt = vt[keep]
    return vt.T @ ((u.T @ y) / s[:, None])


def fit_rrr(d: MultiViewDesign, y: ResponseMatrix, cfg: RrrConfig) -> FitResult:
    """Least squares under a hard rank constraint on the full coefficient
    matrix.

    The fit is the minimum-norm least-squares solution projected onto the
    top right-singular directions of its own fitted values, which gives the
    best rank-constrained approximation of the unconstrained fit.
    """
    if cfg.rank is None:
        raise ValueError(
            "RrrConfig.rank is not set; fix a rank or select one with kfold_cv"
        )
    x = concat_design(d)
    if y.n_samples != d.n_samples:
        raise ValueError("responses and design disagree on the sample count")
    n, p = x.shape
    q = y.n_responses
    bound = min(n, p, q)
    if cfg.rank > bound:
        raise ValueError(f"rank {cfg.rank} exceeds min(n, p, q) = {bound}")
    if not np.isfinite(x).all():
        raise ValueError("design contains non-finite entries")

    b_mn = _min_norm_lstsq(x, y.values)
    fitted = x @ b_mn
    _, _, wt = np.linalg.svd(fitted, full_matrices=False)
    w_r = wt[: cfg.rank].T
    b_r = b_mn @ w_r @ w_r.T

    resid = y.values - x @ b_r
    loss = 0.5 * float(np.sum(resid * resid)) / n
    coeffs = BlockCoefficients.from_full(b_r, d.block_sizes)
    ranks = tuple(numeric_rank(blk, DEFAULT_RANK_TOL) for blk in coeffs.blocks)
    return FitResult(
        coefficients=coeffs,
        objective_trace=np.asarray([loss]),
        iterations=0,
        converged=True,
        block_ranks=ranks,
    )


def rrr_path(
    d: MultiViewDesign, y: ResponseMatrix, ranks: np.ndarray
) -> list[BlockCoefficients]:
    """Reduced-rank fits for several rank bounds sharing one least-squares
    solve; used by cross-validation."""
    x = concat_design(d)
    b_mn = _min_norm_lstsq(x, y.values)
    fitted = x @ b_mn
    _, _, wt = np.linalg.svd(fitted, full_matrices=False)
    out = []
    bound = min(x.shape[0], x.shape[1], y.n_responses)
    for r in ranks:
        if r > bound:
            raise ValueError(f"rank {r} exceeds min(n, p, q) = {bound}")
        w_r = wt[:r].T
        out.append(BlockCoefficients.from_full(b_mn @ w_r @ w_r.T, d.block_sizes))
    return out


@njit(cache=True, nogil=True)
def _enet_sweep(x, r, b, col_ms, lam1, lam2, n):  # pragma: no cover - compiled
    p = x.shape[1]
    q = r.shape[1]
    inv_n = 1.0 / n
    for j in range(p):
        d = col_ms[j]
        denom = d + lam2
        if denom <= 0.0:
            continue
        for l in range(q):
            b_old = b[j, l]
            s = 0.0
            for i in range(x.shape[0]):
                s += x[i, j] * r[i, l]
            z = s * inv_n + d * b_old
            if z > lam1:
                b_new = (z - lam1) / denom
            elif z < -lam1:
                b_new = (z + lam1) / denom
            else:
                b_new = 0.0
            diff = b_new - b_old
            if diff != 0.0:
                for i in range(x.shape[0]):
                    r[i, l] -= x[i, j] * diff
                b[j, l] = b_new


def _enet_kkt_residual(
    x: np.ndarray, resid: np.ndarray, b: np.ndarray, lam1: float, lam2: float
) -> float:
    """Largest stationarity violation over all coordinates."""
    g = x.T @ resid / x.shape[0]  # negative gradient of the smooth loss
    nonzero = b != 0.0
    viol_nz = np.abs(-g + lam2 * b + lam1 * np.sign(b))
    viol_z = np.maximum(np.abs(g) - lam1, 0.0)
    return float(np.max(np.where(nonzero, viol_nz, viol_z), initial=0.0))


def enet_lambda_max(d: MultiViewDesign, y: ResponseMatrix, alpha: float) -> float:
    """Smallest penalty level at which the elastic-net fit is all zero
    (requires alpha > 0)."""
    if alpha <= 0:
        raise ValueError("alpha must be positive for a finite zero threshold")
    x = concat_design(d)
    return float(np.max(np.abs(x.T @ y.values)) / d.n_samples / alpha)


def fit_enet(
    d: MultiViewDesign,
    y: ResponseMatrix,
    cfg: EnetConfig,
    init: BlockCoefficients | None = None,
) -> FitResult:
    """Elastic net by cyclic coordinate descent over all p x q coordinates.

    Exits when the largest stationarity violation drops below
    ``cfg.rel_tol``; the objective decreases with every sweep.
    """
    x = concat_design(d)
    if y.n_samples != d.n_samples:
        raise ValueError("responses and design disagree on the sample count")
    if not np.isfinite(x).all():
        raise ValueError("design contains non-finite entries")
    n = d.n_samples
    q = y.n_responses
    lam1 = cfg.lam * cfg.alpha
    lam2 = cfg.lam * (1.0 - cfg.alpha)

    if init is not None:
        if init.block_sizes != d.block_sizes or init.n_responses != q:
            raise ValueError("warm start has mismatched shape")
        b = np.ascontiguousarray(init.full)
    else:
        b = np.zeros((x.shape[1], q))

    xf = np.asfortranarray(x)
    resid = np.asfortranarray(y.values - x @ b)
    col_ms = np.sum(x * x, axis=0) / n

    def current_objective() -> float:
        loss = 0.5 * float(np.sum(resid * resid)) / n
        pen = cfg.lam * (
            cfg.alpha * float(np.abs(b).sum())
            + 0.5 * (1.0 - cfg.alpha) * float(np.sum(b * b))
        )
        return loss + pen

    trace = [current_objective()]
    converged = False
    sweeps = 0
    for _ in range(cfg.max_iter):
        sweeps += 1
        _enet_sweep(xf, resid, b, col_ms, lam1, lam2, n)
        trace.append(current_objective())
        if _enet_kkt_residual(xf, resid, b, lam1, lam2) < cfg.rel_tol:
            converged = True
            break

    coeffs = BlockCoefficients.from_full(b, d.block_sizes)
    ranks = tuple(numeric_rank(blk, DEFAULT_RANK_TOL) for blk in coeffs.blocks)
    return FitResult(
        coefficients=coeffs,
        objective_trace=np.asarray(trace),
        iterations=sweeps,
        converged=converged,
        block_ranks=ranks,
        lam=cfg.lam,
    )

"""Shared fitting pipeline: column centering, intercept recovery, and
per-method dispatch.

The model objectives have no intercept, so the pipeline centers predictor
and response columns before fitting and folds the means back into an
intercept row afterwards. Centering can be switched off, in which case the
intercept is zero. No variance scaling takes place: the blockwise penalty
weights already absorb scale differences between views.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .baselines import EnetConfig, RrrConfig, fit_enet, fit_rrr
from .core import BlockCoefficients, MultiViewDesign, ResponseMatrix
from .solver import FitConfig, FitResult, compute_weights, fit_clr

__all__ = ["METHODS", "FittedModel", "center_design", "fit_method", "predict", "training_mspe"]

METHODS = ("clr", "glr", "enet")


@dataclass(frozen=True)
class FittedModel:
    """A fitted estimator plus everything needed to predict raw data."""

    method: str
    coefficients: BlockCoefficients
    intercept: np.ndarray
    x_means: np.ndarray
    y_means: np.ndarray
    hyper: float | int
    fit: FitResult
    weights: np.ndarray | None = None


def center_design(
    d: MultiViewDesign, x_means: np.ndarray | None = None
) -> tuple[MultiViewDesign, np.ndarray]:
    """Subtract column means per block; returns the centered design and the
    stacked mean vector (reused for out-of-fold prediction)."""
    if x_means is None:
        x_means = np.concatenate([b.mean(axis=0) for b in d.blocks])
    edges = np.cumsum((0,) + d.block_sizes)
    blocks = tuple(
        b - x_means[edges[k]:edges[k + 1]] for k, b in enumerate(d.blocks)
    )
    return MultiViewDesign(blocks), x_means


def fit_method(
    method: str,
    d: MultiViewDesign,
    y: ResponseMatrix,
    hyper: float | int,
    *,
    alpha: float = 0.2,
    center: bool = True,
    rel_tol: float = 1e-6,
    max_iter: int = 5000,
) -> FittedModel:
    """Fit one estimator at a fixed hyperparameter (penalty level for clr
    and enet, rank for glr) with centering handled here."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if center:
        d_c, x_means = center_design(d)
        y_means = y.values.mean(axis=0)
        y_c = ResponseMatrix(y.values - y_means)
    else:
        d_c, x_means = d, np.zeros(d.n_features)
        y_means = np.zeros(y.n_responses)
        y_c = y

    weights = None
    if method == "clr":
        w = compute_weights(d_c, y_c.n_responses)
        cfg = FitConfig(lam=float(hyper), max_iter=max_iter, rel_tol=rel_tol)
        fit = fit_clr(d_c, y_c, cfg, w)
        weights = np.array(w.values)
    elif method == "glr":
        fit = fit_rrr(d_c, y_c, RrrConfig(rank=int(hyper), max_rank=max(int(hyper), 1)))
    else:
        cfg_e = EnetConfig(lam=float(hyper), alpha=alpha, max_iter=max_iter, rel_tol=rel_tol)
        fit = fit_enet(d_c, y_c, cfg_e)

    intercept = y_means - x_means @ fit.coefficients.full
    return FittedModel(
        method=method,
        coefficients=fit.coefficients,
        intercept=intercept,
        x_means=x_means,
        y_means=y_means,
        hyper=hyper,
        fit=fit,
        weights=weights,
    )


def predict(model: FittedModel, d: MultiViewDesign) -> np.ndarray:
    """Predicted responses for a raw (uncentered) design."""
    if d.block_sizes != model.coefficients.block_sizes:
        raise ValueError(
            f"design block sizes {d.block_sizes} do not match the model's "
            f"{model.coefficients.block_sizes}"
        )
    x = np.hstack(d.blocks) if d.n_blocks > 1 else d.blocks[0]
    return x @ model.coefficients.full + model.intercept


def training_mspe(model: FittedModel, d: MultiViewDesign, y: ResponseMatrix) -> float:
    resid = y.values - predict(model, d)
    return float(np.mean(resid * resid))

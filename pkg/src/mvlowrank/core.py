"""Block-partitioned data containers and dense linear-algebra helpers.

A dataset consists of K predictor blocks (views) measured on the same n
samples, a response matrix with q columns, and a coefficient matrix
partitioned into one block per view. Everything is stored as dense float64
arrays; containers are frozen after construction and safe to share between
threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "DEFAULT_RANK_TOL",
    "NumericalError",
    "MultiViewDesign",
    "ResponseMatrix",
    "BlockCoefficients",
    "SvdResult",
    "concat_design",
    "svd",
    "nuclear_norm",
    "operator_norm",
    "numeric_rank",
]

# Relative cutoff (w.r.t. the largest singular value) below which a singular
# value is treated as zero when counting rank.
DEFAULT_RANK_TOL = 1e-8


class NumericalError(RuntimeError):
    """An iterative computation produced non-finite or unusable values."""


def _as_matrix(a, name: str) -> np.ndarray:
    arr = np.array(a, dtype=float, copy=True)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a 2-d matrix, got ndim={arr.ndim}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class MultiViewDesign:
    """Ordered collection of K predictor blocks sharing the same rows.

    Block k has shape (n, p_k); the full design is the column-wise
    concatenation of the blocks in order.
    """

    blocks: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        blocks = tuple(_as_matrix(b, f"design block {k}") for k, b in enumerate(self.blocks))
        if len(blocks) < 1:
            raise ValueError("a design needs at least one block")
        n = blocks[0].shape[0]
        for k, b in enumerate(blocks):
            if b.shape[0] != n:
                raise ValueError(
                    f"design block {k} has {b.shape[0]} rows, expected {n}"
                )
            if b.shape[1] < 1:
                raise ValueError(f"design block {k} has no columns")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n_samples(self) -> int:
        return self.blocks[0].shape[0]

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(b.shape[1] for b in self.blocks)

    @property
    def n_features(self) -> int:
        return sum(self.block_sizes)


@dataclass(frozen=True)
class ResponseMatrix:
    """Dense n x q response matrix; all entries must be finite."""

    values: np.ndarray

    def __post_init__(self) -> None:
        values = _as_matrix(self.values, "responses")
        if not np.isfinite(values).all():
            raise ValueError("responses contain non-finite entries")
        object.__setattr__(self, "values", values)

    @property
    def n_samples(self) -> int:
        return self.values.shape[0]

    @property
    def n_responses(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class BlockCoefficients:
    """Coefficient matrix partitioned into K row blocks, one per view.

    Block k has shape (p_k, q); stacking the blocks vertically gives the
    full p x q coefficient matrix.
    """

    blocks: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        blocks = tuple(
            _as_matrix(b, f"coefficient block {k}") for k, b in enumerate(self.blocks)
        )
        if len(blocks) < 1:
            raise ValueError("coefficients need at least one block")
        q = blocks[0].shape[1]
        for k, b in enumerate(blocks):
            if b.shape[1] != q:
                raise ValueError(
                    f"coefficient block {k} has {b.shape[1]} columns, expected {q}"
                )
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_full(cls, full: np.ndarray, block_sizes: tuple[int, ...]) -> "BlockCoefficients":
        """Split a stacked p x q matrix into row blocks of the given sizes."""
        full = np.asarray(full, dtype=float)
        if full.ndim != 2:
            raise ValueError("full coefficient matrix must be 2-d")
        if sum(block_sizes) != full.shape[0]:
            raise ValueError(
                f"block sizes sum to {sum(block_sizes)}, matrix has {full.shape[0]} rows"
            )
        edges = np.cumsum((0,) + tuple(block_sizes))
        return cls(tuple(full[edges[k]:edges[k + 1]] for k in range(len(block_sizes))))

    @classmethod
    def zeros(cls, block_sizes: tuple[int, ...], q: int) -> "BlockCoefficients":
        return cls(tuple(np.zeros((p_k, q)) for p_k in block_sizes))

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(b.shape[0] for b in self.blocks)

    @property
    def n_responses(self) -> int:
        return self.blocks[0].shape[1]

    @property
    def full(self) -> np.ndarray:
        """Stacked p x q coefficient matrix (blocks in order)."""
        return np.vstack(self.blocks)


@dataclass(frozen=True)
class SvdResult:
    """Thin singular value decomposition A = U diag(s) V^T.

    ``singular_values`` is non-increasing and non-negative; ``left_vectors``
    and ``right_vectors`` hold orthonormal columns.
    """

    singular_values: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.left_vectors * self.singular_values) @ self.right_vectors.T


def concat_design(d: MultiViewDesign) -> np.ndarray:
    """Column-wise concatenation of the design blocks, block order preserved."""
    if d.n_blocks == 1:
        return np.array(d.blocks[0])
    return np.hstack(d.blocks)


def svd(a: np.ndarray) -> SvdResult:
    """Thin SVD of a dense matrix as an :class:`SvdResult`."""
    u, s, vt = np.linalg.svd(np.asarray(a, dtype=float), full_matrices=False)
    return SvdResult(singular_values=s, left_vectors=u, right_vectors=vt.T)


def nuclear_norm(a: np.ndarray) -> float:
    """Sum of the singular values of ``a``."""
    return float(np.linalg.svd(np.asarray(a, dtype=float), compute_uv=False).sum())


def operator_norm(a: np.ndarray) -> float:
    """Largest singular value of ``a``."""
    return float(np.linalg.svd(np.asarray(a, dtype=float), compute_uv=False)[0])


def numeric_rank(a: np.ndarray, tol: float = DEFAULT_RANK_TOL) -> int:
    """Number of singular values exceeding ``tol`` times the largest one.

    Returns 0 for the zero matrix. ``tol`` is relative and must be positive.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    s = np.linalg.svd(np.asarray(a, dtype=float), compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))

"""Independent reference implementations used only by the tests.

Each oracle reaches its answer by a different route than the library code it
checks: power iteration instead of LAPACK SVD, eigendecompositions of Gram
matrices, subgradient descent with a duality-gap certificate instead of
proximal gradient, coordinate descent instead of SVD thresholding, and
alternating least squares instead of closed-form projections.
"""

from __future__ import annotations

import numpy as np


def power_iteration_top_singular(a: np.ndarray, tol: float = 1e-12, max_iter: int = 20000) -> float:
    """Largest singular value via power iteration on A^T A."""
    a = np.asarray(a, dtype=float)
    rng = np.random.default_rng(12345)
    v = rng.standard_normal(a.shape[1])
    v /= np.linalg.norm(v)
    prev = 0.0
    for _ in range(max_iter):
        u = a @ v
        w = a.T @ u
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0
        v = w / norm
        est = np.sqrt(norm)  # ||A^T A v|| -> sigma^2 in the limit
        if abs(est - prev) <= tol * max(1.0, est):
            return float(est)
        prev = est
    return float(prev)


def eig_singular_values(a: np.ndarray) -> np.ndarray:
    """Singular values via an eigendecomposition of the Gram matrix."""
    a = np.asarray(a, dtype=float)
    gram = a.T @ a if a.shape[1] <= a.shape[0] else a @ a.T
    eigvals = np.linalg.eigvalsh(gram)
    return np.sqrt(np.clip(eigvals, 0.0, None))[::-1]


def svt_eig_oracle(a: np.ndarray, tau: float) -> np.ndarray:
    """Singular value shrinkage computed through the Gram eigendecomposition.

    Only directions with singular value above ``tau`` survive, so the
    inversion sigma -> u = A v / sigma is well conditioned whenever tau is
    bounded away from zero.
    """
    a = np.asarray(a, dtype=float)
    gram = a.T @ a
    eigvals, vecs = np.linalg.eigh(gram)
    order = np.argsort(eigvals)[::-1]
    eigvals, vecs = eigvals[order], vecs[:, order]
    sigma = np.sqrt(np.clip(eigvals, 0.0, None))
    out = np.zeros_like(a)
    for j in range(sigma.size):
        if sigma[j] <= tau:
            break
        v = vecs[:, j]
        u = a @ v / sigma[j]
        out += (sigma[j] - tau) * np.outer(u, v)
    return out


def naive_msee(b_hat: np.ndarray, b_true: np.ndarray) -> float:
    total = 0.0
    rows, cols = b_hat.shape
    for i in range(rows):
        for j in range(cols):
            total += (b_hat[i, j] - b_true[i, j]) ** 2
    return total / (rows * cols)


def naive_mspe(x: np.ndarray, y: np.ndarray, b: np.ndarray) -> float:
    n, q = y.shape
    total = 0.0
    for i in range(n):
        for l in range(q):
            pred = 0.0
            for j in range(x.shape[1]):
                pred += x[i, j] * b[j, l]
            total += (y[i, l] - pred) ** 2
    return total / (n * q)


def nuclear_norm_objective(x: np.ndarray, y: np.ndarray, b: np.ndarray, kappa: float) -> float:
    resid = y - x @ b
    s = np.linalg.svd(b, compute_uv=False)
    return 0.5 * float(np.sum(resid * resid)) / x.shape[0] + kappa * float(s.sum())


def nuclear_norm_subgradient_solver(
    x: np.ndarray,
    y: np.ndarray,
    kappa: float,
    gap_tol: float = 1e-7,
    max_iter: int = 300000,
) -> tuple[np.ndarray, float, float]:
    """Global nuclear-norm penalized least squares by subgradient descent.

    Uses Polyak-type steps whose target level is a certified dual lower
    bound (from the scaled residual map, feasible for the operator-norm dual
    ball), so the returned objective carries a duality-gap certificate.
    Returns (best iterate, best objective, certified gap).
    """
    n = x.shape[0]
    # Ridge start: cheap, independent of any proximal method.
    p = x.shape[1]
    b = np.linalg.solve(x.T @ x + 1e-3 * n * np.eye(p), x.T @ y)
    f_best = np.inf
    b_best = b.copy()
    d_best = -np.inf
    stall = 0
    for _ in range(max_iter):
        resid = y - x @ b
        f = 0.5 * float(np.sum(resid * resid)) / n
        u, s, vt = np.linalg.svd(b, full_matrices=False)
        f += kappa * float(s.sum())
        if f < f_best:
            f_best = f
            b_best = b.copy()
            stall = 0
        else:
            stall += 1

        lam_map = -resid / n
        nu_top = np.linalg.svd(x.T @ lam_map, compute_uv=False)[0]
        scale = 1.0 if nu_top <= kappa else kappa / nu_top
        lam_feas = scale * lam_map
        dual = -float(np.sum(lam_feas * y)) - 0.5 * n * float(np.sum(lam_feas * lam_feas))
        d_best = max(d_best, dual)

        if f_best - d_best <= gap_tol:
            break

        mask = s > 1e-12 * max(s[0], 1e-300)
        subgrad = -x.T @ resid / n + kappa * (u[:, mask] @ vt[mask])
        g_sq = float(np.sum(subgrad * subgrad))
        if g_sq == 0.0:
            break
        step = (f - d_best) / g_sq
        # Long stalls mean the dual bound is loose; shrink steps gradually.
        if stall > 2000:
            step *= 2000.0 / stall
        b = b - step * subgrad
    return b_best, f_best, f_best - d_best


def group_lasso_rowwise_cd(
    x: np.ndarray,
    y: np.ndarray,
    lam: float,
    row_weights: np.ndarray,
    tol: float = 1e-12,
    max_iter: int = 100000,
) -> np.ndarray:
    """Row-grouped l2-penalized least squares by blockwise coordinate
    descent: each coefficient row is a group."""
    n, p = x.shape
    q = y.shape[1]
    b = np.zeros((p, q))
    resid = y.copy()
    col_sq = np.sum(x * x, axis=0) / n
    for _ in range(max_iter):
        max_change = 0.0
        for j in range(p):
            old = b[j].copy()
            if old.any():
                resid += np.outer(x[:, j], old)
            c = x[:, j] @ resid / n
            c_norm = np.linalg.norm(c)
            thr = lam * row_weights[j]
            if c_norm <= thr or col_sq[j] == 0.0:
                new = np.zeros(q)
            else:
                new = (1.0 - thr / c_norm) * c / col_sq[j]
                resid -= np.outer(x[:, j], new)
            b[j] = new
            max_change = max(max_change, float(np.max(np.abs(new - old))))
        if max_change < tol:
            break
    return b


def als_reduced_rank_loss(
    x: np.ndarray,
    y: np.ndarray,
    rank: int,
    n_starts: int = 20,
    n_iter: int = 200,
    seed: int = 0,
) -> float:
    """Best training loss over rank-constrained fits found by alternating
    least squares from random starts; returns 0.5/n * ||Y - X L R^T||^2."""
    n, p = x.shape
    q = y.shape[1]
    rng = np.random.default_rng(seed)
    gram = x.T @ x
    gram_inv = np.linalg.pinv(gram)
    xty = x.T @ y
    best = np.inf
    for _ in range(n_starts):
        r_fac = rng.standard_normal((q, rank))
        for _ in range(n_iter):
            # Orthonormalize the response factor, then solve for the left one.
            q_fac, _ = np.linalg.qr(r_fac)
            left = gram_inv @ (xty @ q_fac)
            fitted_left = x @ left
            r_fac = y.T @ fitted_left @ np.linalg.pinv(fitted_left.T @ fitted_left)
        q_fac, _ = np.linalg.qr(r_fac)
        left = gram_inv @ (xty @ q_fac)
        resid = y - x @ (left @ q_fac.T)
        loss = 0.5 * float(np.sum(resid * resid)) / n
        best = min(best, loss)
    return best


def enet_prox_gradient(
    x: np.ndarray,
    y: np.ndarray,
    lam: float,
    alpha: float,
    max_iter: int = 200000,
    tol: float = 1e-14,
) -> np.ndarray:
    """Elastic net by plain proximal gradient (no acceleration, no
    coordinate descent); reference for small problems."""
    n, p = x.shape
    b = np.zeros((p, y.shape[1]))
    lip = np.linalg.svd(x, compute_uv=False)[0] ** 2 / n + lam * (1.0 - alpha)
    step = 1.0 / lip
    thr = step * lam * alpha
    for _ in range(max_iter):
        grad = x.T @ (x @ b - y) / n + lam * (1.0 - alpha) * b
        z = b - step * grad
        new = np.sign(z) * np.maximum(np.abs(z) - thr, 0.0)
        if np.max(np.abs(new - b)) < tol:
            b = new
            break
        b = new
    return b


def ridge_closed_form(x: np.ndarray, y: np.ndarray, lam2: float) -> np.ndarray:
    n, p = x.shape
    return np.linalg.solve(x.T @ x / n + lam2 * np.eye(p), x.T @ y / n)

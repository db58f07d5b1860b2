import logging
from typing import Optional, Tuple

import numpy as np
from scipy.sparse.linalg import ArpackNoConvergence, LinearOperator, eigsh

from core.error_handler import ConvergenceError

RESIDUAL_TOL = 1e-10
WARMUP_ITERATIONS = 50


def _normalize(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def _project(x: np.ndarray, e: np.ndarray) -> np.ndarray:
    return x - (x @ e) * e


def projected_residual(matrix: np.ndarray, e: np.ndarray, value: float, v: np.ndarray) -> float:
    """||P(Mv) - value * v|| with P the projector onto the complement of e."""
    return float(np.linalg.norm(_project(matrix @ v, e) - value * v))


def _warm_up(matrix: np.ndarray, e: np.ndarray, shift: float, start: np.ndarray, iterations: int) -> np.ndarray:
    v = _normalize(_project(start, e))
    for _ in range(iterations):
        v = _normalize(_project(matrix @ v + shift * v, e))
    return v


def projected_power_iteration(m, excluded: np.ndarray, rng: Optional[np.random.Generator] = None,
                              max_iterations: Optional[int] = None) -> Tuple[float, np.ndarray]:
    """
    Largest eigenvalue of m on the complement of `excluded`.

    A few shifted power steps seed an implicitly restarted Lanczos solve on the projected,
    shifted operator P(M + sI)P with s = ||m||_inf + 1, so the excluded direction sits at
    zero below every complement eigenvalue. The pair is accepted only when the projected
    residual is within RESIDUAL_TOL * s.
    """
    matrix = m.entries
    n = matrix.shape[0]
    e = _normalize(np.asarray(excluded, dtype=np.float64))
    shift = float(np.max(np.sum(np.abs(matrix), axis=1))) + 1.0
    max_iterations = 100 * n if max_iterations is None else max_iterations
    rng = np.random.default_rng(0) if rng is None else rng

    v = _warm_up(matrix, e, shift, rng.standard_normal(n), min(WARMUP_ITERATIONS, max_iterations))

    def matvec(x):
        y = _project(np.asarray(x, dtype=np.float64).reshape(-1), e)
        return _project(matrix @ y + shift * y, e)

    operator = LinearOperator((n, n), matvec=matvec, dtype=np.float64)
    try:
        _, vectors = eigsh(operator, k=1, which='LA', v0=v, maxiter=max_iterations, tol=0)
    except ArpackNoConvergence as error:
        residual = projected_residual(matrix, e, float(v @ matrix @ v), v)
        raise ConvergenceError("Projected eigenvalue solve did not converge", residual=residual,
                               iterations=max_iterations, context={"dimension": n}) from error

    v = _normalize(_project(vectors[:, 0], e))
    value = float(v @ matrix @ v)
    residual = projected_residual(matrix, e, value, v)
    if residual > RESIDUAL_TOL * shift:
        raise ConvergenceError("Projected eigenvalue residual above tolerance", residual=residual,
                               iterations=max_iterations, context={"dimension": n})
    logging.info(f"Projected eigenvalue solve converged, residual {residual:.3g} (dimension {n})")
    return value, v


def largest_eigenvalues(m, k: int) -> np.ndarray:
    """The k algebraically largest eigenvalues of m, ascending, without a full decomposition."""
    n = m.dimension
    try:
        values = eigsh(m.entries, k=k, which='LA', return_eigenvectors=False, tol=0, maxiter=100 * n)
    except ArpackNoConvergence as error:
        raise ConvergenceError(f"Top-{k} eigenvalue solve did not converge", iterations=100 * n,
                               context={"dimension": n}) from error
    return np.sort(np.asarray(values, dtype=np.float64))

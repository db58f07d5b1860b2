"""
Dense symmetric linear algebra: the eigensolver every bound is checked against,
Householder deflation and constrained Rayleigh-quotient maximization.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from core import settings
from core.error_handler import ValidationError, NumericalError, ConvergenceError
from .power_iteration import projected_power_iteration

# Sweeps stop once the off-diagonal Frobenius mass drops below this fraction of ||M||_F.
JACOBI_OFF_DIAGONAL_TOL = 1e-14


@dataclass(frozen=True, eq=False)
class SymmetricMatrix:
    """Square real matrix with exactly symmetric storage."""
    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ValidationError("Matrix must be square and non-empty", field="shape", value=a.shape)
        if not np.all(np.isfinite(a)):
            raise NumericalError("Matrix has non-finite entries", operation="symmetric_matrix")
        scale = max(1.0, float(np.max(np.abs(a))))
        if np.max(np.abs(a - a.T)) > 1e-12 * scale:
            raise ValidationError("Matrix is not symmetric", field="entries",
                                  value=float(np.max(np.abs(a - a.T))))
        # mirror the upper triangle so entry(i, j) == entry(j, i) bit for bit
        upper = np.triu(a)
        a = upper + np.triu(a, 1).T
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def dimension(self) -> int:
        return int(self.entries.shape[0])

    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self.entries, 'fro'))

    def __matmul__(self, x: np.ndarray) -> np.ndarray:
        return self.entries @ x


@dataclass(frozen=True, eq=False)
class SpectrumSummary:
    """Eigenpairs sorted by ascending value, plus the ascending |value| permutation."""
    eigenvalues_ascending: np.ndarray
    eigenvectors: np.ndarray
    abs_order_permutation: np.ndarray
    sweeps: int = 0
    method: str = "jacobi"

    @property
    def eigenvalues_abs_order(self) -> np.ndarray:
        return self.eigenvalues_ascending[self.abs_order_permutation]

    @property
    def largest(self) -> float:
        return float(self.eigenvalues_ascending[-1])

    @property
    def smallest(self) -> float:
        return float(self.eigenvalues_ascending[0])

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues_ascending) @ v.T


def abs_order(values: np.ndarray, tol: Optional[float] = None) -> np.ndarray:
    """
    Permutation sorting |value| ascending. Magnitudes within `tol` of the first member of
    their run count as ties, broken by ascending signed value. The default tolerance is
    TAU_EIG * max(1, max |value|).
    """
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        return np.arange(0)
    magnitudes = np.abs(values)
    if tol is None:
        tol = settings.TAU_EIG * max(1.0, float(magnitudes.max()))
    by_magnitude = np.argsort(magnitudes, kind='stable')
    clusters = np.empty(values.size, dtype=np.int64)
    label, anchor = 0, magnitudes[by_magnitude[0]]
    for index in by_magnitude:
        if magnitudes[index] - anchor > tol:
            label += 1
            anchor = magnitudes[index]
        clusters[index] = label
    return np.lexsort((values, clusters))


def _canonical_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude entry is positive."""
    if vectors.size == 0:
        return vectors
    pivots = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[pivots, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def _summary(values: np.ndarray, vectors: np.ndarray, sweeps: int, method: str) -> SpectrumSummary:
    order = np.argsort(values, kind='stable')
    values = values[order]
    vectors = _canonical_signs(vectors[:, order])
    values.setflags(write=False)
    vectors.setflags(write=False)
    return SpectrumSummary(values, vectors, abs_order(values), sweeps=sweeps, method=method)


def jacobi_eigh(m: SymmetricMatrix, max_sweeps: Optional[int] = None) -> SpectrumSummary:
    """
    Cyclic Jacobi rotations over all (p, q) pairs in row order.

    Raises:
        ConvergenceError: if the off-diagonal mass is still above tolerance after the
            sweep cap; the residual is reported.
    """
    max_sweeps = settings.JACOBI_MAX_SWEEPS if max_sweeps is None else max_sweeps
    a = np.array(m.entries, dtype=np.float64)
    n = a.shape[0]
    v = np.eye(n)
    norm = np.linalg.norm(a, 'fro')
    target = JACOBI_OFF_DIAGONAL_TOL * norm

    def off_diagonal() -> float:
        off = a - np.diag(np.diag(a))
        return float(np.sqrt(np.sum(off * off)))

    sweeps = 0
    off = off_diagonal()
    while off > target:
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"Jacobi eigensolver exceeded {max_sweeps} sweeps",
                residual=off / norm if norm else off, iterations=sweeps,
                context={"dimension": n}
            )
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c

                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0

                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
        off = off_diagonal()

    logging.debug(f"Jacobi converged in {sweeps} sweeps for dimension {n}")
    return _summary(np.diag(a).copy(), v, sweeps, "jacobi")


def lapack_eigh(m: SymmetricMatrix) -> SpectrumSummary:
    """numpy's LAPACK symmetric driver, normalized to the same output conventions."""
    try:
        values, vectors = np.linalg.eigh(m.entries)
    except np.linalg.LinAlgError as e:
        raise ConvergenceError(f"LAPACK eigensolver failed: {e}", original_error=e,
                               context={"dimension": m.dimension})
    return _summary(values, vectors, 0, "lapack")


def eigendecompose(m: SymmetricMatrix, method: str = "auto") -> SpectrumSummary:
    """
    Full spectrum with orthonormal eigenvectors.

    `auto` uses Jacobi up to settings.JACOBI_CUTOFF and LAPACK above it.
    """
    if method == "auto":
        method = "jacobi" if m.dimension <= settings.JACOBI_CUTOFF else "lapack"
    if method == "jacobi":
        return jacobi_eigh(m)
    if method == "lapack":
        return lapack_eigh(m)
    raise ValidationError(f"Unknown eigensolver '{method}'", field="method", value=method)


def householder_complement_basis(direction: np.ndarray) -> np.ndarray:
    """
    Orthonormal basis (as columns) of the complement of `direction`.

    Built from the Householder reflector mapping direction onto a multiple of e_1;
    the reflector's columns 2..n span the complement.
    """
    x = np.asarray(direction, dtype=np.float64).reshape(-1)
    norm = np.linalg.norm(x)
    if x.size < 2:
        raise ValidationError("Need dimension >= 2 for a nontrivial complement", field="dimension", value=x.size)
    if norm == 0.0:
        raise ValidationError("Excluded direction must be nonzero", field="excluded")
    x = x / norm
    u = x.copy()
    u[0] += 1.0 if x[0] >= 0 else -1.0
    h = np.eye(x.size) - 2.0 * np.outer(u, u) / float(u @ u)
    return h[:, 1:]


def deflate_all_ones_basis(n: int) -> np.ndarray:
    """Orthonormal n x (n-1) basis of {x : <x, 1> = 0}."""
    if n < 2:
        raise ValidationError("Deflation needs n >= 2", field="n", value=n)
    return householder_complement_basis(np.ones(n))


def restrict_to_complement(m: SymmetricMatrix, basis: np.ndarray) -> SymmetricMatrix:
    """basis^T m basis."""
    if basis.shape[0] != m.dimension:
        raise ValidationError("Basis and matrix dimensions differ", field="basis",
                              value=(basis.shape[0], m.dimension))
    restricted = basis.T @ m.entries @ basis
    return SymmetricMatrix(0.5 * (restricted + restricted.T))


def max_rayleigh_orthogonal_to(m: SymmetricMatrix, excluded: np.ndarray,
                               rng: Optional[np.random.Generator] = None) -> Tuple[float, np.ndarray]:
    """
    max over x orthogonal to `excluded` of <x, m x> / ||x||^2, with the maximizer.

    Dimensions above settings.POWER_ITERATION_THRESHOLD go through projected power
    iteration; smaller ones through an eigensolve of the restriction.
    """
    excluded = np.asarray(excluded, dtype=np.float64).reshape(-1)
    if excluded.size != m.dimension:
        raise ValidationError("Excluded vector length does not match matrix dimension",
                              field="excluded", value=(excluded.size, m.dimension))
    if m.dimension > settings.POWER_ITERATION_THRESHOLD:
        return projected_power_iteration(m, excluded, rng=rng)

    basis = householder_complement_basis(excluded)
    spectrum = eigendecompose(restrict_to_complement(m, basis))
    argmax = basis @ spectrum.eigenvectors[:, -1]
    return spectrum.largest, argmax


def rayleigh_residual(m: SymmetricMatrix, excluded: np.ndarray, value: float, x: np.ndarray) -> float:
    """||m x - value x - alpha e|| with alpha removing the component along e."""
    e = np.asarray(excluded, dtype=np.float64)
    r = m.entries @ x - value * x
    r = r - (r @ e) / (e @ e) * e
    return float(np.linalg.norm(r))


def eigenvalue_multiplicities(values: np.ndarray, tol: float = 1e-6) -> List[Tuple[float, int]]:
    """Cluster sorted eigenvalues whose consecutive gaps are below tol."""
    values = np.sort(np.asarray(values, dtype=np.float64))
    clusters: List[List[float]] = []
    for value in values:
        if clusters and value - clusters[-1][-1] <= tol:
            clusters[-1].append(float(value))
        else:
            clusters.append([float(value)])
    return [(float(np.mean(c)), len(c)) for c in clusters]

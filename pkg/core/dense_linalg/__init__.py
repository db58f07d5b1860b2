from .dense_linalg import (
    SymmetricMatrix, SpectrumSummary, abs_order, jacobi_eigh, lapack_eigh, eigendecompose,
    householder_complement_basis, deflate_all_ones_basis, restrict_to_complement,
    max_rayleigh_orthogonal_to, rayleigh_residual, eigenvalue_multiplicities
)
from .power_iteration import projected_power_iteration, largest_eigenvalues, projected_residual

__all__ = [
    'SymmetricMatrix', 'SpectrumSummary', 'abs_order', 'jacobi_eigh', 'lapack_eigh', 'eigendecompose',
    'householder_complement_basis', 'deflate_all_ones_basis', 'restrict_to_complement',
    'max_rayleigh_orthogonal_to', 'rayleigh_residual', 'eigenvalue_multiplicities',
    'projected_power_iteration', 'largest_eigenvalues', 'projected_residual'
]

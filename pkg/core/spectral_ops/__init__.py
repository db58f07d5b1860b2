"""
Matrices built from a graph and its edge weights.

Import from `core.spectral_ops.spectral_ops`; this package init stays empty so
`core.graph_core` can import `WeightVector` without a cycle.
"""

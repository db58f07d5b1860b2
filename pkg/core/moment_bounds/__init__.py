from .certificate_models import (
    EdgeMoments, MuEstimate, BoundsCertificate, Margins, IntervalBounds, CycleBounds, MaxDegreeBounds
)
from .moment_bounds import (
    moments, compute_mu, mu_abs_order_reading, graph_profile, GraphProfile, theorem_bounds, oracle_eigenvalues,
    equal_weight_extremes, deflated_spectrum, complete_graph_bounds, rough_bounds,
    rough_to_sharp_ratio, cycle_bounds, improvement_ratio, max_degree_bounds,
    regular_improvement_floor, sandwich_tolerance, fluctuation_radius, MU_METHODS
)

__all__ = [
    'EdgeMoments', 'MuEstimate', 'BoundsCertificate', 'Margins', 'IntervalBounds', 'CycleBounds',
    'MaxDegreeBounds', 'moments', 'compute_mu', 'mu_abs_order_reading', 'graph_profile', 'GraphProfile', 'theorem_bounds',
    'oracle_eigenvalues', 'equal_weight_extremes', 'deflated_spectrum', 'complete_graph_bounds',
    'rough_bounds', 'rough_to_sharp_ratio', 'cycle_bounds', 'improvement_ratio', 'max_degree_bounds',
    'regular_improvement_floor', 'sandwich_tolerance', 'fluctuation_radius', 'MU_METHODS'
]

"""
Moment-based eigenvalue bounds for signed graph Laplacians.

All eigenvalues of L(w) on the complement of the all-ones vector lie in

    [min(Q l2, Q lN) - R,  max(Q l2, Q lN) + R],   R = sqrt(E (P - Q^2) mu (N-2)/(N-1)),

where l2, lN are the extreme nonzero eigenvalues of the equally weighted
Laplacian and mu is the largest Rayleigh quotient of 4I + A_LG over mean-zero
edge vectors. For Q >= 0 the interval is [Q l2 - R, Q lN + R].
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from core import settings
from core.dense_linalg import (
    SymmetricMatrix, SpectrumSummary, eigendecompose, deflate_all_ones_basis,
    restrict_to_complement, max_rayleigh_orthogonal_to, abs_order, largest_eigenvalues
)
from core.error_handler import ValidationError, NumericalError
from core.graph_core import Graph, GraphClassification, classify
from core.spectral_ops.spectral_ops import (
    laplacian, equal_weight_laplacian, line_graph_adjacency, decompose
)
from core.spectral_ops.weights import WeightVector
from .certificate_models import (
    EdgeMoments, MuEstimate, BoundsCertificate, Margins, IntervalBounds,
    CycleBounds, MaxDegreeBounds
)

MU_METHODS = ('auto', 'projected', 'closed', 'dmax')
# the iterative solve accepts projected residuals up to 1e-10 * (||m||_inf + 1)
ITERATIVE_AGREEMENT_TOL = 1e-9


def moments(w: WeightVector) -> EdgeMoments:
    """
    Mean Q and second moment P of the edge weights.

    The reported variance is the two-pass mean squared deviation, which equals
    P - Q^2 without its cancellation error.

    Raises:
        ValidationError: for an empty weight vector.
        NumericalError: if P - Q^2 is negative beyond tolerance.
    """
    e = len(w)
    if e < 1:
        raise ValidationError("Moments need at least one edge weight", field="weights", value=0)
    q = float(np.sum(w.values) / e)
    p = float(np.dot(w.values, w.values) / e)
    naive_variance = p - q * q
    if naive_variance < -1e-12 * max(1.0, p):
        raise NumericalError("Second moment is below the squared mean", operation="moments",
                             context={"p": p, "q": q, "variance": naive_variance})
    fluctuation = decompose(w).fluctuation.values
    variance = float(np.dot(fluctuation, fluctuation) / e)
    return EdgeMoments(q=q, p=p, variance=max(variance, 0.0), edge_count=e)


def deflated_spectrum(m: SymmetricMatrix) -> SpectrumSummary:
    """Spectrum of m restricted to the complement of the all-ones vector."""
    basis = deflate_all_ones_basis(m.dimension)
    return eigendecompose(restrict_to_complement(m, basis))


def equal_weight_extremes(g: Graph) -> Tuple[float, float]:
    """(lambda_2^G, lambda_N^G) from the deflated equally weighted Laplacian."""
    if g.vertex_count < 2:
        raise ValidationError("Need at least two vertices", field="n", value=g.vertex_count)
    spectrum = deflated_spectrum(equal_weight_laplacian(g))
    return spectrum.smallest, spectrum.largest


def _shifted_line_graph(g: Graph) -> SymmetricMatrix:
    return SymmetricMatrix(4.0 * np.eye(g.edge_count) + line_graph_adjacency(g).entries)


def mu_abs_order_reading(g: Graph, spectrum: Optional[SpectrumSummary] = None) -> Tuple[float, float]:
    """
    The mu bracket read with the eigenvalues of A_LG ordered by absolute value:
    (4 + second, 4 + first) in that order. Reported only; it can fail on bipartite
    line graphs where the most negative eigenvalue dominates.
    """
    if spectrum is None:
        spectrum = eigendecompose(_shifted_line_graph(g))
    line_values = spectrum.eigenvalues_ascending - 4.0
    abs_sorted = line_values[abs_order(line_values)]
    return 4.0 + float(abs_sorted[-2]), 4.0 + float(abs_sorted[-1])


def compute_mu(g: Graph, method: str = 'auto', lambda2_g: Optional[float] = None,
               rng: Optional[np.random.Generator] = None) -> MuEstimate:
    """
    mu = max over mean-zero x of <x, (4I + A_LG) x> / |x|^2.

    `auto` uses 2d + 2 - lambda_2^G on d-regular graphs, cross-checked against the
    projected Rayleigh quotient, and the projected Rayleigh quotient otherwise.
    `dmax` returns the cheap bound 2 d_max + 2.

    Raises:
        ValidationError: for E < 2, an unknown method, or `closed` on an irregular graph.
        NumericalError: if the closed form and the projected value disagree.
    """
    if method not in MU_METHODS:
        raise ValidationError(f"Unknown mu method '{method}'", field="method", value=method)
    if g.edge_count < 2:
        raise ValidationError("mean-zero edge space is trivial", field="edge_count", value=g.edge_count)

    info = classify(g)
    if method == 'closed' and info.regular_degree is None:
        raise ValidationError("Closed-form mu requires a regular graph", field="method", value=method)

    m = _shifted_line_graph(g)
    if g.edge_count > settings.POWER_ITERATION_THRESHOLD:
        # top two only; the absolute-order reading needs the full spectrum
        bracket_low, bracket_high = (float(v) for v in largest_eigenvalues(m, 2))
        abs_low = abs_high = None
    else:
        spectrum = eigendecompose(m)
        values = spectrum.eigenvalues_ascending
        bracket_low, bracket_high = float(values[-2]), float(values[-1])
        abs_low, abs_high = mu_abs_order_reading(g, spectrum)
    dmax_bound = 2.0 * info.max_degree + 2.0

    estimate = dict(bracket_low=bracket_low, bracket_high=bracket_high, dmax_bound=dmax_bound,
                    abs_order_bracket_low=abs_low, abs_order_bracket_high=abs_high)

    if method == 'dmax':
        return MuEstimate(value=dmax_bound, method='dmax_upper_bound', **estimate)

    projected, _ = max_rayleigh_orthogonal_to(m, np.ones(g.edge_count), rng=rng)
    use_closed = method == 'closed' or (method == 'auto' and info.regular_degree is not None)

    if use_closed:
        if lambda2_g is None:
            lambda2_g, _ = equal_weight_extremes(g)
        closed = 2.0 * info.regular_degree + 2.0 - lambda2_g
        tolerance = settings.TAU_EIG * max(1.0, abs(closed))
        if g.edge_count > settings.POWER_ITERATION_THRESHOLD:
            tolerance = max(tolerance, ITERATIVE_AGREEMENT_TOL * abs(closed))
        if abs(closed - projected) > tolerance:
            raise NumericalError("Regular closed form disagrees with the projected Rayleigh quotient",
                                 operation="compute_mu",
                                 context={"closed_form": closed, "projected": projected})
        result = MuEstimate(value=closed, method='regular_closed_form', cross_check=projected, **estimate)
    else:
        result = MuEstimate(value=projected, method='projected_rayleigh', **estimate)

    slack = settings.TAU_EIG * max(1.0, result.value)
    if abs_low is not None and not (abs_low - slack <= result.value <= abs_high + slack):
        logging.warning(
            f"Absolute-order reading of the mu bracket fails: [{abs_low}, {abs_high}] vs mu={result.value}"
        )
    logging.info(f"mu={result.value:.12g} via {result.method} (E={g.edge_count})")
    return result


@dataclass(frozen=True, eq=False)
class GraphProfile:
    """Graph-level spectral data shared by every weight vector on one graph."""
    graph: Graph
    classification: GraphClassification
    lambda2_g: float
    lambdaN_g: float
    mu: MuEstimate

    @property
    def improvement_ratio(self) -> float:
        return self.lambda2_g ** 2 / self.mu.value


def graph_profile(g: Graph, mu_method: str = 'auto', rng: Optional[np.random.Generator] = None) -> GraphProfile:
    if g.vertex_count < 3:
        raise ValidationError("The eigenvalue bounds need N >= 3", field="n", value=g.vertex_count)
    info = classify(g)
    if not info.connected:
        logging.warning(f"Graph with N={g.vertex_count} is disconnected; bounds are non-authoritative")
    lambda2_g, lambdaN_g = equal_weight_extremes(g)
    if info.connected:
        # lambda_2 > 0 on connected graphs; drop negative rounding noise
        lambda2_g = max(lambda2_g, 0.0)
    mu = compute_mu(g, method=mu_method, lambda2_g=lambda2_g, rng=rng)
    return GraphProfile(graph=g, classification=info, lambda2_g=lambda2_g, lambdaN_g=lambdaN_g, mu=mu)


def fluctuation_radius(e: int, variance: float, mu: float, n: int) -> float:
    """sqrt(E (P - Q^2) mu (N-2)/(N-1))."""
    return math.sqrt(max(0.0, e * variance * mu * (n - 2) / (n - 1)))


def interval(q: float, lambda2_g: float, lambdaN_g: float, radius: float) -> IntervalBounds:
    low_mean, high_mean = sorted((q * lambda2_g, q * lambdaN_g))
    return IntervalBounds(lower=low_mean - radius, upper=high_mean + radius)


def positivity_margins(q: float, variance: float, e: int, ratio: float) -> Margins:
    """
    Slack in the moment condition ratio * Q^2 / E > P - Q^2 and the naive Q^2 / E > P - Q^2.

    Q * |Q| stands in for Q^2 so a nonpositive mean never certifies.
    """
    signed_square = q * abs(q) / e
    return Margins(paper=ratio * signed_square - variance, naive=signed_square - variance)


def sandwich_tolerance(lower: float, upper: float) -> float:
    return 1e-8 * (1.0 + abs(lower) + abs(upper))


def oracle_eigenvalues(g: Graph, w: WeightVector) -> np.ndarray:
    """Eigenvalues of L(w) on the complement of 1_N by full eigensolve."""
    return deflated_spectrum(laplacian(g, w)).eigenvalues_ascending


def theorem_bounds(g: Graph, w: WeightVector, with_oracle: bool = False,
                   profile: Optional[GraphProfile] = None, mu_method: str = 'auto') -> BoundsCertificate:
    """
    Eigenvalue interval and positivity verdicts for L(w) from the weight moments.

    Disconnected graphs are processed with connected=False.

    Raises:
        ValidationError: if N < 3 or the weights are not aligned to g.
    """
    if g.vertex_count < 3:
        raise ValidationError("The eigenvalue bounds need N >= 3", field="n", value=g.vertex_count)
    w.check_aligned(g.edge_count)
    if profile is None:
        profile = graph_profile(g, mu_method=mu_method)
    elif not profile.graph.same_as(g):
        raise ValidationError("Graph profile belongs to a different graph", field="profile")

    stats = moments(w)
    n, e = g.vertex_count, g.edge_count
    radius = fluctuation_radius(e, stats.variance, profile.mu.value, n)
    bounds = interval(stats.q, profile.lambda2_g, profile.lambdaN_g, radius)
    ratio = profile.improvement_ratio
    margins = positivity_margins(stats.q, stats.variance, e, ratio)

    positivity_naive = margins.naive > settings.POSITIVITY_TOL
    if positivity_naive and not np.all(w.values > 0):
        raise NumericalError("Naive certificate issued with a nonpositive weight", operation="theorem_bounds")

    oracle = None
    sandwich_holds = None
    if with_oracle:
        values = oracle_eigenvalues(g, w)
        tol = sandwich_tolerance(bounds.lower, bounds.upper)
        sandwich_holds = bool(np.all(values >= bounds.lower - tol) and np.all(values <= bounds.upper + tol))
        if not sandwich_holds:
            logging.error(f"Oracle eigenvalues escape [{bounds.lower}, {bounds.upper}]: {values}")
        oracle = [float(x) for x in values]

    return BoundsCertificate(
        n=n, e=e, lower=bounds.lower, upper=bounds.upper,
        lambda2_g=profile.lambda2_g, lambdaN_g=profile.lambdaN_g,
        mu=profile.mu, moments=stats,
        positivity_paper=margins.paper > settings.POSITIVITY_TOL,
        positivity_naive=positivity_naive,
        margins=margins, improvement_ratio=ratio,
        connected=profile.classification.connected,
        oracle=oracle, sandwich_holds=sandwich_holds,
    )


def _check_n(n: int):
    if not isinstance(n, int) or n < 3:
        raise ValidationError("Closed forms need n >= 3", field="n", value=n)


def complete_graph_bounds(n: int, stats: EdgeMoments) -> IntervalBounds:
    """N (Q -+ sqrt((N-2)/2) sqrt(P - Q^2)), the sharp interval on K_N."""
    _check_n(n)
    half = n * math.sqrt((n - 2) / 2.0) * math.sqrt(stats.variance)
    return IntervalBounds(lower=n * stats.q - half, upper=n * stats.q + half)


def rough_bounds(n: int, stats: EdgeMoments) -> IntervalBounds:
    """N (Q -+ sqrt(N-1) sqrt(P - Q^2)), the Hilbert-Schmidt estimate on K_N."""
    _check_n(n)
    half = n * math.sqrt(n - 1) * math.sqrt(stats.variance)
    return IntervalBounds(lower=n * stats.q - half, upper=n * stats.q + half)


def rough_to_sharp_ratio(n: int) -> float:
    """Half-width ratio sqrt(2(N-1)/(N-2)); tends to sqrt(2)."""
    _check_n(n)
    return math.sqrt(2.0 * (n - 1) / (n - 2))


def cycle_bounds(n: int, stats: EdgeMoments) -> CycleBounds:
    """
    Closed-form bounds on C_N from the circulant spectrum 2 - 2 cos(2 pi k / N).

    The computed largest eigenvalue is used; it exceeds the often-quoted value 2
    for every N >= 3, and the discrepancy is flagged.
    """
    _check_n(n)
    circulant = [2.0 - 2.0 * math.cos(2.0 * math.pi * k / n) for k in range(1, n)]
    lambda2_g, lambdaN_g = min(circulant), max(circulant)
    mu = 6.0 - lambda2_g
    radius = fluctuation_radius(n, stats.variance, mu, n)
    discrepancy = abs(lambdaN_g - 2.0) > 1e-12
    if discrepancy:
        logging.warning(f"Cycle C_{n}: computed lambda_N^G = {lambdaN_g:.12g}, not the stated value 2")
    return CycleBounds(
        n=n, lambda2_g=lambda2_g, lambdaN_g=lambdaN_g, lambdaN_discrepancy=discrepancy,
        mu=mu, bounds=interval(stats.q, lambda2_g, lambdaN_g, radius),
        improvement_ratio=lambda2_g ** 2 / mu,
    )


def improvement_ratio(g: Graph, profile: Optional[GraphProfile] = None) -> Tuple[float, bool]:
    """
    (lambda_2^G)^2 / mu and whether g is connected.

    Above 1 the moment condition tolerates more variance than the naive one.
    Disconnected graphs give ratio 0 with the flag False.
    """
    if profile is None:
        profile = graph_profile(g)
    if not profile.classification.connected:
        logging.warning("Improvement ratio requested for a disconnected graph")
        return 0.0, False
    return profile.improvement_ratio, True


def max_degree_bounds(g: Graph) -> MaxDegreeBounds:
    """Crude estimates lambda_N^G <= 2 d_max and mu <= 2 d_max + 2."""
    d_max = classify(g).max_degree
    return MaxDegreeBounds(max_degree=d_max, lambdaN_upper=2.0 * d_max, mu_upper=2.0 * d_max + 2.0)


def regular_improvement_floor(d: int) -> float:
    """
    Asymptotic floor of (lambda_2^G)^2 / mu for random d-regular graphs:
    (d^2 - 4d sqrt(d-1) + 4(d-1)) / (d + 2 sqrt(d-1) + 2).
    """
    if d < 3:
        raise ValidationError("Random regular floor needs d >= 3", field="d", value=d)
    root = math.sqrt(d - 1)
    return (d * d - 4.0 * d * root + 4.0 * (d - 1)) / (d + 2.0 * root + 2.0)
